#pragma once

#include <chrono>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fxwave {

using Date = std::chrono::year_month_day;

// How rows carrying a missing-data marker (`ND`, `.`, empty) are handled.
enum class GapPolicy { Drop, ForwardFill };

std::string_view to_string(GapPolicy policy);
GapPolicy parse_gap_policy(std::string_view text);

struct Observation {
  Date date;
  double price;
};

// Daily price observations, dates strictly increasing, prices positive.
struct PriceSeries {
  std::vector<Observation> observations;
  GapPolicy gap_policy = GapPolicy::Drop;
  std::string label;

  std::size_t size() const noexcept { return observations.size(); }
};

// Log-returns ln(p[i+1]/p[i]); origin_dates[i] is the date of p[i+1].
struct ReturnSeries {
  std::vector<double> values;
  std::vector<Date> origin_dates;
  std::string label;

  std::size_t size() const noexcept { return values.size(); }
};

std::string format_date(Date d);
Date parse_date(std::string_view text);  // YYYY-MM-DD; throws on failure

// Parse a Federal-Reserve H.10 style CSV: one header line, then
// `YYYY-MM-DD,<decimal | ND | . | empty>` rows. Rows before the first valid
// price are always dropped.
PriceSeries parse_h10_csv(std::string_view raw, GapPolicy gap_policy = GapPolicy::Drop,
                          std::string label = {});

PriceSeries load_h10_file(const std::string& path, GapPolicy gap_policy = GapPolicy::Drop,
                          std::string label = {});

ReturnSeries log_returns(const PriceSeries& prices);

// Subtract the least-squares polynomial of the given order (0 or 1).
std::vector<double> detrend(std::span<const double> x, int order);

}  // namespace fxwave
