#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fxwave/error.hpp"

namespace fxwave {

// Shortest decimal text that reads back to the same double.
std::string format_real(double v);

double parse_real(std::string_view text, std::string_view what = "value");

template <typename T>
T parse_integer(std::string_view text, std::string_view what = "value") {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw Error(ErrorKind::BadConfig, "bad integer for " + std::string(what) + ": '" + std::string(text) + "'");
  return v;
}

std::string_view trim_view(std::string_view s);

// "a=1<sep>b=2" -> {{"a","1"},{"b","2"}}; whitespace around tokens is ignored.
std::vector<std::pair<std::string_view, std::string_view>> split_key_values(std::string_view text, char separator);

}  // namespace fxwave
