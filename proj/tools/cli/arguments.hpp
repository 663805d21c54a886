#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qrm/model.hpp"

namespace qrm::cli {

// A real number, or pi / pi^p with p an integer, decimal or fraction such as
// "-1/3" or "(-1/3)". "pi^-1/3" expands to pi^(-1/3) at full precision.
double parse_real(std::string_view text);

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;  // zero for a single value
  std::vector<double> values() const;
};

// "v" (single value) or "lo:hi:step" with lo <= hi and step > 0.
Range parse_range(std::string_view text);
bool is_range(std::string_view text);

// "lo:hi" with lo < hi.
std::pair<double, double> parse_bracket(std::string_view text);

// "lo:hi" with lo <= hi (a degenerate span is a single point).
std::pair<double, double> parse_span(std::string_view text);

// "a,b,c", "lo:hi:step", or a single value; ascending.
std::vector<double> parse_value_list(std::string_view text);

// "epsilon,delta,g" or "epsilon,delta,g,omega".
ModelParams parse_triple(std::string_view text);

// "m,n".
std::pair<int, int> parse_pair(std::string_view text);

}  // namespace qrm::cli
