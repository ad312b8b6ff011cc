#include <cmath>
#include <numeric>
#include <string>

#include "doctest.h"
#include "fxwave/error.hpp"
#include "fxwave/synth.hpp"
#include "fxwave/timeseries.hpp"

using namespace fxwave;
using namespace std::chrono;

namespace {

PriceSeries prices_of(std::vector<double> p) {
  PriceSeries s;
  sys_days d = sys_days{year{2001} / January / 1};
  for (double v : p) {
    s.observations.push_back({year_month_day{d}, v});
    d += days{1};
  }
  return s;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Usage;
}

// Plain normal-equations fit, no centring.
std::vector<double> ls_residual(const std::vector<double>& x, int order) {
  const double n = static_cast<double>(x.size());
  if (order == 0) {
    const double m = std::accumulate(x.begin(), x.end(), 0.0) / n;
    std::vector<double> r;
    for (double v : x) r.push_back(v - m);
    return r;
  }
  long double st = 0, stt = 0, sx = 0, stx = 0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    st += t;
    stt += (long double)t * t;
    sx += x[t];
    stx += (long double)t * x[t];
  }
  const long double det = n * stt - st * st;
  const long double b = (n * stx - st * sx) / det;
  const long double a = (sx - b * st) / n;
  std::vector<double> r;
  for (std::size_t t = 0; t < x.size(); ++t) r.push_back(static_cast<double>(x[t] - (a + b * t)));
  return r;
}

}  // namespace

TEST_CASE("parse_h10_csv handles missing markers per policy") {
  const std::string raw = "DATE,DEXUSEU\n2000-01-03,0.9423\n2000-01-04,ND\n2000-01-05,0.9472\n";
  const auto dropped = parse_h10_csv(raw, GapPolicy::Drop);
  REQUIRE(dropped.size() == 2);
  CHECK(dropped.observations[1].price == 0.9472);

  const auto filled = parse_h10_csv(raw, GapPolicy::ForwardFill);
  REQUIRE(filled.size() == 3);
  CHECK(filled.observations[1].price == 0.9423);
  CHECK(filled.observations[1].date == year_month_day{year{2000} / January / 4});
  CHECK(filled.gap_policy == GapPolicy::ForwardFill);
}

TEST_CASE("all missing rows is NoData") {
  CHECK(kind_of([] { parse_h10_csv("DATE,X\n2000-01-03,ND\n2000-01-04,.\n2000-01-05,\n"); }) == ErrorKind::NoData);
  CHECK(kind_of([] { parse_h10_csv("DATE,X\n"); }) == ErrorKind::NoData);
}

TEST_CASE("leading missing rows are dropped even with forward fill") {
  const auto s = parse_h10_csv("DATE,X\n2000-01-03,ND\n2000-01-04,1.5\n2000-01-05,ND\n", GapPolicy::ForwardFill);
  REQUIRE(s.size() == 2);
  CHECK(s.observations[0].date == year_month_day{year{2000} / January / 4});
  CHECK(s.observations[1].price == 1.5);
}

TEST_CASE("malformed rows report the line") {
  auto line_of = [](const std::string& raw) {
    try {
      parse_h10_csv(raw);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::MalformedRow);
      return e.detail().value_or(-1);
    }
    return -2LL;
  };
  CHECK(line_of("DATE,X\n2000-01-03,1.0\n2000-13-04,1.1\n") == 3);
  CHECK(line_of("DATE,X\n2000-01-03,1.0\n2000-01-04,-1.1\n") == 3);
  CHECK(line_of("DATE,X\n2000-01-03,0\n") == 2);
  CHECK(line_of("DATE,X\n2000-01-03,1.0\n2000-01-03,1.1\n") == 3);
  CHECK(line_of("DATE,X\n2000-01-03,abc\n") == 2);
}

TEST_CASE("CRLF input and trailing blank lines") {
  const auto s = parse_h10_csv("DATE,X\r\n2000-01-03,1.25\r\n2000-01-04,1.5\r\n\r\n");
  REQUIRE(s.size() == 2);
  CHECK(s.observations[1].price == 1.5);
}

TEST_CASE("bundled files load with the documented span") {
  for (const char* name : {"us_eur", "us_uk"}) {
    const auto s = load_h10_file(std::string(FXWAVE_DATA_DIR) + "/" + name + ".csv");
    CHECK(format_date(s.observations.front().date) == "2000-01-03");
    CHECK(format_date(s.observations.back().date) == "2009-03-09");
    CHECK(s.size() > 2300);
  }
  const auto inr = load_h10_file(std::string(FXWAVE_DATA_DIR) + "/us_inr.csv");
  CHECK(inr.size() > 2300);
  CHECK(kind_of([] { load_h10_file("/nonexistent/file.csv"); }) == ErrorKind::Io);
}

TEST_CASE("log_returns examples") {
  auto r = log_returns(prices_of({100, 100, 100}));
  CHECK(r.values == std::vector<double>{0.0, 0.0});
  r = log_returns(prices_of({1.0, std::exp(1.0)}));
  CHECK(r.values[0] == doctest::Approx(1.0).epsilon(1e-15));
  // 30-digit reference value of ln(0.9472 / 0.9423).
  r = log_returns(prices_of({0.9423, 0.9472}));
  CHECK(std::abs(r.values[0] - 0.0051865689170306823) < 1e-13 * 0.0051865689170306823);
  CHECK(r.origin_dates[0] == year_month_day{year{2001} / January / 2});
  CHECK(kind_of([] { log_returns(prices_of({1.0})); }) == ErrorKind::TooShort);
}

TEST_CASE("log_returns is scale invariant and telescopes") {
  SynthSpec spec;
  spec.seed = 11;
  spec.length = 500;
  const auto z = generate(spec);
  std::vector<double> p{1.3};
  for (double v : z) p.push_back(p.back() * std::exp(0.01 * v));
  std::vector<double> scaled;
  for (double v : p) scaled.push_back(v * 7.25);

  const auto a = log_returns(prices_of(p));
  const auto b = log_returns(prices_of(scaled));
  REQUIRE(a.size() == p.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.values[i] == doctest::Approx(b.values[i]).epsilon(1e-12));
  const double total = std::accumulate(a.values.begin(), a.values.end(), 0.0);
  const double expect = std::log(p.back() / p.front());
  CHECK(std::abs(total - expect) <= 1e-10 * std::abs(expect));
}

TEST_CASE("detrend examples") {
  const std::vector<double> flat{5, 5, 5, 5};
  for (double v : detrend(flat, 0)) CHECK(v == 0.0);
  const std::vector<double> line{1, 2, 3, 4};
  for (double v : detrend(line, 1)) CHECK(std::abs(v) < 1e-12);
  CHECK(kind_of([] { detrend(std::vector<double>{1, 2}, 1); }) == ErrorKind::TooShort);
  CHECK(kind_of([] { detrend(std::vector<double>{1, 2, 3}, 2); }) == ErrorKind::Unsupported);
}

TEST_CASE("detrend matches a direct least-squares fit and is idempotent") {
  SynthSpec spec;
  spec.seed = 3;
  spec.length = 4096;
  auto x = generate(spec);
  for (std::size_t t = 0; t < x.size(); ++t) x[t] += 2.0 + 1e-3 * static_cast<double>(t);
  for (int order : {0, 1}) {
    const auto r = detrend(x, order);
    const auto oracle = ls_residual(x, order);
    double mean = 0.0;
    for (std::size_t t = 0; t < r.size(); ++t) {
      CHECK(std::abs(r[t] - oracle[t]) < 1e-9);
      mean += r[t];
    }
    CHECK(std::abs(mean / static_cast<double>(r.size())) < 1e-10);
    const auto again = detrend(r, order);
    for (std::size_t t = 0; t < r.size(); ++t) CHECK(std::abs(again[t] - r[t]) < 1e-10);
  }
}

TEST_CASE("gap policy and date round trips") {
  CHECK(parse_gap_policy(to_string(GapPolicy::Drop)) == GapPolicy::Drop);
  CHECK(parse_gap_policy(to_string(GapPolicy::ForwardFill)) == GapPolicy::ForwardFill);
  CHECK(format_date(parse_date("2008-02-29")) == "2008-02-29");
  CHECK(kind_of([] { parse_date("2007-02-29"); }) == ErrorKind::MalformedRow);
}
