#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fxwave/wavelet.hpp"

namespace fxwave {

// Coefficients of one scale row inside the valid region, in time order.
struct ScaleSeries {
  double scale = 0.0;
  std::vector<double> values;
  bool empty_row = false;  // the whole row lies inside the cone of influence
};

ScaleSeries scale_series(const Scalogram& s, double scale);

struct BinRule {
  enum class Kind { FreedmanDiaconis, Fixed } kind = Kind::FreedmanDiaconis;
  std::size_t bins = 0;  // used by Fixed

  static BinRule freedman_diaconis() { return {}; }
  static BinRule fixed(std::size_t k) { return {Kind::Fixed, k}; }

  std::string to_string() const;          // "freedman_diaconis" | "fixed:<k>"
  static BinRule parse(std::string_view);  // inverse of to_string
};

struct ScalePdf {
  double scale = 0.0;
  std::vector<double> bin_edges;
  std::vector<double> density;
  std::size_t sample_count = 0;
};

// Normalized histogram (sum density * width = 1). Needs at least 32 samples.
ScalePdf scale_pdf(std::span<const double> x, const BinRule& rule, double scale = 0.0);

// Plain moment estimator m4 / m2^2 (Gaussian = 3, no bias correction).
double kurtosis(std::span<const double> x);

struct KurtosisCurve {
  std::vector<double> scales;
  std::vector<double> kurtosis;
  std::vector<std::size_t> sample_counts;
  std::vector<double> omitted_scales;  // fewer than 4 valid samples or zero variance
};

KurtosisCurve kurtosis_by_scale(const Scalogram& s);

// Smallest grid scale where kurtosis stays below `threshold` for `persistence`
// consecutive entries of the curve.
std::optional<double> gaussian_crossover(const KurtosisCurve& curve, double threshold = 3.0,
                                         int persistence = 5);

// Centered running median of odd width; the window is truncated at the ends.
std::vector<double> running_median(std::span<const double> x, std::size_t width);

}  // namespace fxwave
