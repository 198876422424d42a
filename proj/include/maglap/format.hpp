#pragma once

#include <charconv>
#include <string>

namespace maglap {

// Shortest round-trip decimal with at most 17 significant digits, '.' separator
// regardless of locale.
inline std::string format_double(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

}  // namespace maglap
