#pragma once

#include <charconv>
#include <cstdio>
#include <string>

namespace attrikit {

// Shortest decimal text that parses back to exactly the same double.
inline std::string repr(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

// Fixed four decimals, for report tables.
inline std::string fixed4(double value) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  return buf;
}

}  // namespace attrikit
