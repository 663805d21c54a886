#pragma once

#include <string>

namespace qrm {

// printf "%.{digits}g" rendering; digits = 17 round-trips a double exactly.
std::string format_real(double value, int digits);

}  // namespace qrm
