#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace padx::text {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits on `sep` outside single quotes and brackets.
inline std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  bool quoted = false;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size()) {
      char c = s[i];
      if (c == '\'') quoted = !quoted;
      if (quoted) continue;
      if (c == '[' || c == '{' || c == '(') ++depth;
      if (c == ']' || c == '}' || c == ')') --depth;
      if (c != sep || depth != 0) continue;
    }
    auto piece = trim(s.substr(start, i - start));
    if (!piece.empty()) out.push_back(piece);
    start = i + 1;
  }
  return out;
}

inline long parse_long(std::string_view s) {
  std::string str(trim(s));
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(str, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer '" + str + "'");
  }
  if (pos != str.size()) throw std::invalid_argument("bad integer '" + str + "'");
  return v;
}

}  // namespace padx::text
