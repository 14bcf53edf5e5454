#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <system_error>

#include "hdw/core.hpp"

namespace hdw::io {

namespace detail {

/// Strips surrounding blanks and line endings and a leading '+'.
inline std::string_view trim_number(std::string_view s) {
  const auto blank = [](char ch) { return ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n'; };
  while (!s.empty() && blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && blank(s.back())) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return s;
}

}  // namespace detail

/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Whole-string parse; throws ParameterError on trailing characters.
inline double parse_double(std::string_view s) {
  s = detail::trim_number(s);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParameterError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

inline long long parse_int(std::string_view s) {
  s = detail::trim_number(s);
  long long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParameterError("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace hdw::io
