#include "qrm/format.hpp"

#include <cstdio>

namespace qrm {

std::string format_real(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

}  // namespace qrm
