#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "fxwave/wavelet.hpp"

namespace fxwave {

struct Maximum {
  std::size_t time = 0;
  double power = 0.0;  // |W|^2 at the maximum
};

// maxima[i] holds the maxima of scale row i in increasing time order.
using MaximaSet = std::vector<std::vector<Maximum>>;

// Strict local maxima of |W|^2 along each row, inside the valid region, and
// above `min_prominence` times the row's largest valid |W|^2.
MaximaSet modulus_maxima(const Scalogram& s, double min_prominence);

struct RidgePoint {
  std::size_t scale_index = 0;
  std::size_t time = 0;
  double power = 0.0;
};

struct RidgeChain {
  std::vector<RidgePoint> points;  // scale_index increases by 1 along the chain
  std::size_t span() const noexcept { return points.size(); }
};

// Greedy linking from the smallest scale upward. The tail of a chain at row i
// takes the nearest unclaimed maximum of row i+1 within
// link_radius * (a[i+1] / a[i]); tails are served in increasing time order and
// ties go to the smaller time index. Maxima left unclaimed start new chains.
std::vector<RidgeChain> chain_maxima(const MaximaSet& maxima, const ScaleGrid& grid, double link_radius);

// (number of chains) / (number of rows holding at least one maximum).
double fragmentation_index(std::span<const RidgeChain> chains, const MaximaSet& maxima);

struct TimeRange {
  std::size_t start = 0;
  std::size_t end = 0;  // inclusive
  friend bool operator==(const TimeRange&, const TimeRange&) = default;
};

// Dominant scale d(tau) = argmax_a |W|^2(a, tau). At each tau the median of d
// over [tau, tau+window) is compared with the median over [tau-window, tau),
// both taken over the rows valid across the whole span [tau-window,
// tau+window). tau is a shift point when they differ by more than
// jump_fraction * (last scale - first scale). Runs of shift points closer than
// `window` samples are merged, then each range is widened by window/2 on both
// sides (the two window centres) and overlapping ranges are joined.
std::vector<TimeRange> scale_shift_regions(const Scalogram& s, std::size_t window, double jump_fraction);

enum class Grade { Quiescent, Regular, WeakChaos, ModerateChaos, StrongChaos };

std::string_view to_string(Grade g);

struct GradeThresholds {
  double activity_floor = 1e-9;  // variance-normalized energy per sample
  double weak = 3.5;             // F >= weak      -> weak_chaos
  double moderate = 5.25;        // F >= moderate  -> moderate_chaos
  double strong = 7.0;           // F >= strong    -> strong_chaos

  void validate() const;
};

// Sum of valid-region |W|^2 divided by (signal length * input variance);
// zero for a zero-variance input. Invariant under x -> c x.
double normalized_energy(const Scalogram& s, double input_variance);

Grade classify_dynamics(double fragmentation, double energy, const GradeThresholds& thresholds);

struct DetectorConfig {
  double prominence = 0.05;
  double link_radius = 8.0;
  std::size_t shift_window = 64;
  double jump_fraction = 0.1;
  GradeThresholds thresholds;
};

struct DynamicsReport {
  double fragmentation_index = 0.0;
  double mean_chain_span = 0.0;
  std::size_t chain_count = 0;
  std::vector<TimeRange> shift_regions;
  Grade grade = Grade::Quiescent;
  GradeThresholds grade_thresholds;
  double energy = 0.0;
  std::vector<RidgeChain> chains;
};

// modulus_maxima -> chain_maxima -> fragmentation_index, scale-shift
// regions and the grade, for a scalogram of an input with the given variance.
DynamicsReport detect_dynamics(const Scalogram& s, double input_variance, const DetectorConfig& config);

}  // namespace fxwave
