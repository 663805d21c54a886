#include "arguments.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qrm::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = s.find(sep, start);
    parts.push_back(trim(s.substr(start, at - start)));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return parts;
}

double parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return v;
}

double parse_exponent(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = trim(s.substr(1, s.size() - 2));
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const double den = parse_number(s.substr(slash + 1));
    if (den == 0.0) throw std::invalid_argument("zero denominator in exponent");
    return parse_number(s.substr(0, slash)) / den;
  }
  return parse_number(s);
}

}  // namespace

double parse_real(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.rfind("pi", 0) == 0) {
    std::string_view rest = trim(s.substr(2));
    if (rest.empty()) return std::numbers::pi;
    if (rest.front() != '^') throw std::invalid_argument("bad symbolic value '" + std::string(s) + "'");
    return std::pow(std::numbers::pi, parse_exponent(rest.substr(1)));
  }
  return parse_number(s);
}

bool is_range(std::string_view text) { return text.find(':') != std::string_view::npos; }

std::vector<double> Range::values() const {
  if (step == 0.0) return {lo};
  const auto count = std::llround((hi - lo) / step) + 1;
  std::vector<double> out(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = lo + i * step;
  return out;
}

Range parse_range(std::string_view text) {
  if (!is_range(text)) {
    const double v = parse_real(text);
    return {v, v, 0.0};
  }
  const auto parts = split(text, ':');
  if (parts.size() != 3) {
    throw std::invalid_argument("range must be lo:hi:step, got '" + std::string(text) + "'");
  }
  Range r{parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2])};
  if (r.hi < r.lo) throw std::invalid_argument("descending range '" + std::string(text) + "'");
  if (!(r.step > 0.0)) throw std::invalid_argument("range step must be positive");
  return r;
}

std::pair<double, double> parse_bracket(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw std::invalid_argument("bracket must be lo:hi");
  const double lo = parse_real(parts[0]);
  const double hi = parse_real(parts[1]);
  if (!(lo < hi)) throw std::invalid_argument("bracket must satisfy lo < hi");
  return {lo, hi};
}

std::pair<double, double> parse_span(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw std::invalid_argument("span must be lo:hi");
  const double lo = parse_real(parts[0]);
  const double hi = parse_real(parts[1]);
  if (hi < lo) throw std::invalid_argument("span must satisfy lo <= hi");
  return {lo, hi};
}

std::vector<double> parse_value_list(std::string_view text) {
  std::vector<double> out;
  if (is_range(text)) {
    out = parse_range(text).values();
  } else {
    for (auto part : split(text, ',')) out.push_back(parse_real(part));
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i] > out[i - 1])) throw std::invalid_argument("value list must be ascending");
  }
  return out;
}

ModelParams parse_triple(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3 && parts.size() != 4) {
    throw std::invalid_argument("expected epsilon,delta,g[,omega], got '" + std::string(text) +
                                "'");
  }
  ModelParams p;
  p.epsilon = parse_real(parts[0]);
  p.delta = parse_real(parts[1]);
  p.g = parse_real(parts[2]);
  if (parts.size() == 4) p.omega = parse_real(parts[3]);
  p.validate();
  return p;
}

std::pair<int, int> parse_pair(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw std::invalid_argument("expected m,n");
  auto to_int = [](std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    }
    return v;
  };
  return {to_int(parts[0]), to_int(parts[1])};
}

}  // namespace qrm::cli
