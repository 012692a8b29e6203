#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <system_error>

namespace emln::detail {

// Shortest representation that parses back to the identical double.
inline std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

template <class T>
bool parse_number(std::string_view text, T& out) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, out);
  return res.ec == std::errc() && res.ptr == end && !text.empty();
}

}  // namespace emln::detail
