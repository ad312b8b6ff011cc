#include "fxwave/textio.hpp"

#include <cmath>

namespace fxwave {

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double parse_real(std::string_view text, std::string_view what) {
  text = trim_view(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
    throw Error(ErrorKind::BadConfig, "bad number for " + std::string(what) + ": '" + std::string(text) + "'");
  return v;
}

std::string_view trim_view(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::pair<std::string_view, std::string_view>> split_key_values(std::string_view text, char separator) {
  std::vector<std::pair<std::string_view, std::string_view>> out;
  while (!text.empty()) {
    auto pos = text.find(separator);
    std::string_view item = trim_view(text.substr(0, pos));
    text.remove_prefix(pos == std::string_view::npos ? text.size() : pos + 1);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorKind::BadConfig, "expected key=value, got '" + std::string(item) + "'");
    out.emplace_back(trim_view(item.substr(0, eq)), trim_view(item.substr(eq + 1)));
  }
  return out;
}

}  // namespace fxwave
