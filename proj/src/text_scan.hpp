#pragma once

// Small helpers shared by the text readers.

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ratiocut::detail {

inline std::vector<std::string_view> split_fields(std::string_view line,
                                                  std::string_view seps) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const auto start = line.find_first_not_of(seps, pos);
    if (start == std::string_view::npos) break;
    auto end = line.find_first_of(seps, start);
    if (end == std::string_view::npos) end = line.size();
    out.push_back(line.substr(start, end - start));
    pos = end;
  }
  return out;
}

// Splits on commas and keeps empty fields, trimming blanks around each.
inline std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto end = line.find(',', pos);
    auto field = line.substr(pos, end == std::string_view::npos
                                      ? std::string_view::npos
                                      : end - pos);
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string_view::npos ? std::string_view{}
                                              : field.substr(b, e - b + 1));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

inline bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) return std::nullopt;
  return value;
}

// 17 significant digits, enough for an exact round trip of any double.
inline std::string format_real(double x) {
  char buf[32];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

}  // namespace ratiocut::detail
