#pragma once

#include <charconv>
#include <string>

namespace adastep::detail {

// Shortest decimal form that round-trips through binary64.
inline void append_double(std::string& out, double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  out.append(buffer, result.ptr);
}

inline std::string format_double(double value) {
  std::string out;
  append_double(out, value);
  return out;
}

}  // namespace adastep::detail
