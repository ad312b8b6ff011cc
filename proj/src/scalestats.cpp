#include "fxwave/scalestats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "fxwave/error.hpp"

namespace fxwave {

ScaleSeries scale_series(const Scalogram& s, double scale) {
  const std::size_t i = s.grid.index_of(scale);
  ScaleSeries out;
  out.scale = scale;
  const auto row = s.coefficients.row(i);
  const auto mask = s.valid_mask.row(i);
  for (std::size_t t = 0; t < row.size(); ++t)
    if (mask[t]) out.values.push_back(row[t]);
  out.empty_row = out.values.empty();
  return out;
}

std::string BinRule::to_string() const {
  if (kind == Kind::FreedmanDiaconis) return "freedman_diaconis";
  return "fixed:" + std::to_string(bins);
}

BinRule BinRule::parse(std::string_view text) {
  if (text == "freedman_diaconis") return freedman_diaconis();
  if (text.starts_with("fixed:")) {
    std::size_t k = 0;
    auto body = text.substr(6);
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), k);
    if (ec == std::errc{} && ptr == body.data() + body.size() && k > 0) return fixed(k);
  }
  throw Error(ErrorKind::BadConfig, "bin_rule must be 'freedman_diaconis' or 'fixed:<k>'");
}

namespace {

// Linear-interpolation quantile of sorted data.
double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

constexpr std::size_t kMaxBins = 10000;

}  // namespace

ScalePdf scale_pdf(std::span<const double> x, const BinRule& rule, double scale) {
  if (x.size() < 32) throw Error(ErrorKind::TooShort, "scale_pdf needs at least 32 samples");
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front(), hi = sorted.back();
  const auto n = static_cast<double>(sorted.size());

  ScalePdf pdf;
  pdf.scale = scale;
  pdf.sample_count = sorted.size();

  if (hi == lo) {
    pdf.bin_edges = {lo - 0.5, lo + 0.5};
    pdf.density = {1.0};
    return pdf;
  }

  std::size_t bins;
  if (rule.kind == BinRule::Kind::Fixed) {
    if (rule.bins == 0) throw Error(ErrorKind::BadConfig, "fixed bin count must be positive");
    bins = rule.bins;
  } else {
    const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
    if (iqr > 0.0) {
      const double width = 2.0 * iqr / std::cbrt(n);
      bins = static_cast<std::size_t>(std::ceil((hi - lo) / width));
    } else {
      bins = static_cast<std::size_t>(std::ceil(std::sqrt(n)));
    }
    bins = std::clamp<std::size_t>(bins, 1, kMaxBins);
  }

  const double width = (hi - lo) / static_cast<double>(bins);
  pdf.bin_edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) pdf.bin_edges[b] = lo + width * static_cast<double>(b);
  pdf.bin_edges.back() = hi;

  std::vector<std::size_t> counts(bins, 0);
  for (double v : sorted) {
    auto b = static_cast<std::size_t>((v - lo) / width);
    if (b >= bins) b = bins - 1;
    ++counts[b];
  }
  pdf.density.resize(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    const double w = pdf.bin_edges[b + 1] - pdf.bin_edges[b];
    pdf.density[b] = static_cast<double>(counts[b]) / (n * w);
  }
  return pdf;
}

double kurtosis(std::span<const double> x) {
  if (x.size() < 4) throw Error(ErrorKind::TooShort, "kurtosis needs at least 4 samples");
  const auto n = static_cast<double>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double m2 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m4 += d2 * d2;
  }
  m2 /= n;
  m4 /= n;
  if (!(m2 > 0.0)) throw Error(ErrorKind::DegenerateDistribution, "zero variance");
  return m4 / (m2 * m2);
}

KurtosisCurve kurtosis_by_scale(const Scalogram& s) {
  KurtosisCurve curve;
  for (std::size_t i = 0; i < s.scales(); ++i) {
    const double a = s.grid.scales[i];
    const auto series = scale_series(s, a);
    if (series.values.size() < 4) {
      curve.omitted_scales.push_back(a);
      continue;
    }
    try {
      curve.kurtosis.push_back(kurtosis(series.values));
      curve.scales.push_back(a);
      curve.sample_counts.push_back(series.values.size());
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateDistribution) throw;
      curve.omitted_scales.push_back(a);
    }
  }
  if (curve.scales.empty()) throw Error(ErrorKind::NoUsableScales, "no scale row has a usable distribution");
  return curve;
}

std::optional<double> gaussian_crossover(const KurtosisCurve& curve, double threshold, int persistence) {
  if (persistence < 1) throw Error(ErrorKind::BadConfig, "persistence must be >= 1");
  const std::size_t run = static_cast<std::size_t>(persistence);
  std::size_t below = 0;
  for (std::size_t i = 0; i < curve.kurtosis.size(); ++i) {
    below = curve.kurtosis[i] < threshold ? below + 1 : 0;
    if (below == run) return curve.scales[i + 1 - run];
  }
  return std::nullopt;
}

std::vector<double> running_median(std::span<const double> x, std::size_t width) {
  if (width == 0 || width % 2 == 0) throw Error(ErrorKind::BadConfig, "median width must be odd");
  const std::size_t half = width / 2;
  std::vector<double> out(x.size());
  std::vector<double> window;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(x.size(), i + half + 1);
    window.assign(x.begin() + lo, x.begin() + hi);
    std::sort(window.begin(), window.end());
    const std::size_t m = window.size();
    out[i] = m % 2 ? window[m / 2] : 0.5 * (window[m / 2 - 1] + window[m / 2]);
  }
  return out;
}

}  // namespace fxwave
