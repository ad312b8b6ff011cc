#include "fxwave/timeseries.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "fxwave/error.hpp"

namespace fxwave {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' ||
                        s.front() == '\xEF' || s.front() == '\xBB' || s.front() == '\xBF'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

bool is_missing_marker(std::string_view v) { return v.empty() || v == "ND" || v == "."; }

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

std::string_view to_string(GapPolicy policy) {
  return policy == GapPolicy::Drop ? "drop" : "forward_fill";
}

GapPolicy parse_gap_policy(std::string_view text) {
  if (text == "drop") return GapPolicy::Drop;
  if (text == "forward_fill") return GapPolicy::ForwardFill;
  throw Error(ErrorKind::BadConfig, "unknown gap_policy '" + std::string(text) + "'");
}

std::string format_date(Date d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  return buf;
}

Date parse_date(std::string_view text) {
  text = trim(text);
  if (text.size() != 10 || text[4] != '-' || text[7] != '-')
    throw Error(ErrorKind::MalformedRow, "bad date '" + std::string(text) + "'");
  auto y = parse_number<int>(text.substr(0, 4));
  auto m = parse_number<unsigned>(text.substr(5, 2));
  auto d = parse_number<unsigned>(text.substr(8, 2));
  if (!y || !m || !d) throw Error(ErrorKind::MalformedRow, "bad date '" + std::string(text) + "'");
  Date date{std::chrono::year{*y}, std::chrono::month{*m}, std::chrono::day{*d}};
  if (!date.ok()) throw Error(ErrorKind::MalformedRow, "invalid date '" + std::string(text) + "'");
  return date;
}

PriceSeries parse_h10_csv(std::string_view raw, GapPolicy gap_policy, std::string label) {
  PriceSeries out;
  out.gap_policy = gap_policy;
  out.label = std::move(label);

  std::size_t line_no = 0;
  bool header_seen = false;
  std::optional<Date> last_date;

  while (!raw.empty()) {
    auto nl = raw.find('\n');
    std::string_view line = raw.substr(0, nl);
    raw.remove_prefix(nl == std::string_view::npos ? raw.size() : nl + 1);
    ++line_no;

    line = trim(line);
    if (line.empty()) continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }

    auto comma = line.find(',');
    if (comma == std::string_view::npos)
      throw Error(ErrorKind::MalformedRow, "expected '<date>,<value>' at line " + std::to_string(line_no),
                  static_cast<long long>(line_no));
    std::string_view date_text = trim(line.substr(0, comma));
    std::string_view value_text = trim(line.substr(comma + 1));

    Date date;
    try {
      date = parse_date(date_text);
    } catch (const Error&) {
      throw Error(ErrorKind::MalformedRow, "unparseable date at line " + std::to_string(line_no),
                  static_cast<long long>(line_no));
    }
    if (last_date && date <= *last_date)
      throw Error(ErrorKind::MalformedRow, "dates not strictly increasing at line " + std::to_string(line_no),
                  static_cast<long long>(line_no));
    last_date = date;

    if (is_missing_marker(value_text)) {
      if (gap_policy == GapPolicy::ForwardFill && !out.observations.empty())
        out.observations.push_back({date, out.observations.back().price});
      continue;
    }

    auto price = parse_number<double>(value_text);
    if (!price || !std::isfinite(*price) || *price <= 0.0)
      throw Error(ErrorKind::MalformedRow, "bad price at line " + std::to_string(line_no),
                  static_cast<long long>(line_no));
    out.observations.push_back({date, *price});
  }

  if (out.observations.empty()) throw Error(ErrorKind::NoData, "no valid observations");
  return out;
}

PriceSeries load_h10_file(const std::string& path, GapPolicy gap_policy, std::string label) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_h10_csv(ss.str(), gap_policy, std::move(label));
}

ReturnSeries log_returns(const PriceSeries& prices) {
  const auto& obs = prices.observations;
  if (obs.size() < 2) throw Error(ErrorKind::TooShort, "log_returns needs at least 2 prices");
  ReturnSeries out;
  out.label = prices.label;
  out.values.reserve(obs.size() - 1);
  out.origin_dates.reserve(obs.size() - 1);
  for (std::size_t i = 0; i + 1 < obs.size(); ++i) {
    out.values.push_back(std::log(obs[i + 1].price / obs[i].price));
    out.origin_dates.push_back(obs[i + 1].date);
  }
  return out;
}

std::vector<double> detrend(std::span<const double> x, int order) {
  if (order < 0 || order > 1) throw Error(ErrorKind::Unsupported, "detrend order must be 0 or 1");
  const std::size_t n = x.size();
  if (n <= static_cast<std::size_t>(order) + 1)
    throw Error(ErrorKind::TooShort, "detrend needs more than order+1 samples");

  std::vector<double> out(x.begin(), x.end());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);

  if (order == 0) {
    for (double& v : out) v -= mean;
    return out;
  }

  // Centered abscissa keeps the normal equations diagonal.
  const double t_mid = 0.5 * static_cast<double>(n - 1);
  double stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) - t_mid;
    stt += t * t;
    sty += t * (x[i] - mean);
  }
  const double slope = sty / stt;
  for (std::size_t i = 0; i < n; ++i) out[i] -= mean + slope * (static_cast<double>(i) - t_mid);

  // One refinement pass removes the rounding left in the residual mean.
  double resid = 0.0;
  for (double v : out) resid += v;
  resid /= static_cast<double>(n);
  for (double& v : out) v -= resid;
  return out;
}

}  // namespace fxwave
