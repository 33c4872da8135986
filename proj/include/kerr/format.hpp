#ifndef KERR_FORMAT_HPP
#define KERR_FORMAT_HPP

#include <cmath>
#include <cstdio>
#include <string>

namespace kerr {

/// Round-trip-safe text form with 17 significant digits.
inline std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

}  // namespace kerr

#endif  // KERR_FORMAT_HPP
