#include "fxwave/chaosdetect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fxwave/error.hpp"

namespace fxwave {

MaximaSet modulus_maxima(const Scalogram& s, double min_prominence) {
  if (!(min_prominence >= 0.0)) throw Error(ErrorKind::BadConfig, "prominence must be >= 0");
  MaximaSet out(s.scales());
  for (std::size_t i = 0; i < s.scales(); ++i) {
    const auto power = s.squared.row(i);
    const auto valid = s.valid_mask.row(i);
    double row_max = 0.0;
    for (std::size_t t = 0; t < power.size(); ++t)
      if (valid[t]) row_max = std::max(row_max, power[t]);
    const double floor = min_prominence * row_max;
    for (std::size_t t = 1; t + 1 < power.size(); ++t) {
      if (!valid[t - 1] || !valid[t] || !valid[t + 1]) continue;
      const double v = power[t];
      if (v > power[t - 1] && v > power[t + 1] && v > floor) out[i].push_back({t, v});
    }
  }
  return out;
}

std::vector<RidgeChain> chain_maxima(const MaximaSet& maxima, const ScaleGrid& grid, double link_radius) {
  if (!(link_radius >= 1.0)) throw Error(ErrorKind::BadConfig, "link_radius must be >= 1");
  if (maxima.size() != grid.size()) throw Error(ErrorKind::BadConfig, "maxima rows do not match the scale grid");

  std::vector<RidgeChain> chains;
  std::vector<std::size_t> open;  // chains whose tail sits on the previous row

  for (std::size_t i = 0; i < maxima.size(); ++i) {
    const auto& row = maxima[i];
    std::vector<bool> claimed(row.size(), false);
    std::vector<std::size_t> next_open;

    if (i > 0 && !row.empty()) {
      const double radius = link_radius * grid.scales[i] / grid.scales[i - 1];
      // `open` is already in increasing tail-time order.
      for (std::size_t c : open) {
        const auto t0 = static_cast<double>(chains[c].points.back().time);
        std::size_t best = row.size();
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < row.size(); ++m) {
          if (claimed[m]) continue;
          const double d = std::abs(static_cast<double>(row[m].time) - t0);
          if (d <= radius && d < best_dist) {  // strict: earlier (smaller time) wins ties
            best = m;
            best_dist = d;
          }
        }
        if (best < row.size()) {
          claimed[best] = true;
          chains[c].points.push_back({i, row[best].time, row[best].power});
        }
      }
    }

    for (std::size_t m = 0; m < row.size(); ++m) {
      if (!claimed[m]) {
        chains.push_back({{{i, row[m].time, row[m].power}}});
      }
    }
    for (std::size_t c = 0; c < chains.size(); ++c)
      if (chains[c].points.back().scale_index == i) next_open.push_back(c);
    std::sort(next_open.begin(), next_open.end(), [&](std::size_t a, std::size_t b) {
      return chains[a].points.back().time < chains[b].points.back().time;
    });
    open = std::move(next_open);
  }
  return chains;
}

double fragmentation_index(std::span<const RidgeChain> chains, const MaximaSet& maxima) {
  if (chains.empty()) throw Error(ErrorKind::Undefined, "fragmentation index needs at least one chain");
  std::size_t occupied = 0;
  for (const auto& row : maxima)
    if (!row.empty()) ++occupied;
  return static_cast<double>(chains.size()) / static_cast<double>(occupied);
}

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size();
  return m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

}  // namespace

std::vector<TimeRange> scale_shift_regions(const Scalogram& s, std::size_t window, double jump_fraction) {
  if (window < 8) throw Error(ErrorKind::BadConfig, "shift window must be >= 8");
  if (!(jump_fraction > 0.0 && jump_fraction < 1.0))
    throw Error(ErrorKind::BadConfig, "jump_fraction must be in (0, 1)");
  if (s.length() < 2 * window) throw Error(ErrorKind::TooShort, "signal shorter than two shift windows");

  // Each comparison uses only the rows valid across both of its windows, so the
  // cone of influence widening toward the interior does not read as a shift.
  // Valid columns of a row are contiguous, so checking the two ends suffices.
  const std::size_t length = s.length();
  const double jump = jump_fraction * (s.grid.scales.back() - s.grid.scales.front());
  std::vector<std::size_t> rows;
  std::vector<double> before(window), after(window);
  auto dominant = [&](std::size_t t) {
    double best = -1.0;
    std::size_t best_row = rows.front();
    for (std::size_t i : rows) {
      if (s.squared(i, t) > best) {
        best = s.squared(i, t);
        best_row = i;
      }
    }
    return s.grid.scales[best_row];
  };

  std::vector<TimeRange> regions;
  bool in_run = false;
  TimeRange current;
  for (std::size_t t = window; t + window <= length; ++t) {
    rows.clear();
    for (std::size_t i = 0; i < s.scales(); ++i)
      if (s.valid_mask(i, t - window) && s.valid_mask(i, t + window - 1)) rows.push_back(i);
    bool shift = false;
    if (rows.size() > 1) {
      for (std::size_t k = 0; k < window; ++k) {
        before[k] = dominant(t - window + k);
        after[k] = dominant(t + k);
      }
      shift = std::abs(median_of(after) - median_of(before)) > jump;
    }
    if (shift && !in_run) {
      in_run = true;
      current = {t, t};
    } else if (shift) {
      current.end = t;
    } else if (in_run) {
      regions.push_back(current);
      in_run = false;
    }
  }
  if (in_run) regions.push_back(current);

  std::vector<TimeRange> merged;
  for (const auto& r : regions) {
    if (!merged.empty() && r.start < merged.back().end + window)
      merged.back().end = r.end;
    else
      merged.push_back(r);
  }
  // The compared medians sit at the window centres, half a window either side
  // of the shift point; widen to that span and join any overlaps.
  const std::size_t half = window / 2;
  std::vector<TimeRange> widened;
  for (const auto& r : merged) {
    const TimeRange w{r.start - half, std::min(length - 1, r.end + half - 1)};
    if (!widened.empty() && w.start <= widened.back().end)
      widened.back().end = w.end;
    else
      widened.push_back(w);
  }
  return widened;
}

std::string_view to_string(Grade g) {
  switch (g) {
    case Grade::Quiescent: return "quiescent";
    case Grade::Regular: return "regular";
    case Grade::WeakChaos: return "weak_chaos";
    case Grade::ModerateChaos: return "moderate_chaos";
    case Grade::StrongChaos: return "strong_chaos";
  }
  return "unknown";
}

void GradeThresholds::validate() const {
  if (!(activity_floor >= 0.0) || !(weak > 0.0) || !(weak < moderate) || !(moderate < strong))
    throw Error(ErrorKind::BadConfig, "grade thresholds must satisfy 0 < weak < moderate < strong, floor >= 0");
}

double normalized_energy(const Scalogram& s, double input_variance) {
  if (!(input_variance > 0.0) || s.length() == 0) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < s.scales(); ++i) {
    const auto power = s.squared.row(i);
    const auto valid = s.valid_mask.row(i);
    for (std::size_t t = 0; t < power.size(); ++t)
      if (valid[t]) total += power[t];
  }
  return total / (static_cast<double>(s.length()) * input_variance);
}

Grade classify_dynamics(double fragmentation, double energy, const GradeThresholds& thresholds) {
  thresholds.validate();
  if (!(energy > thresholds.activity_floor)) return Grade::Quiescent;
  if (fragmentation >= thresholds.strong) return Grade::StrongChaos;
  if (fragmentation >= thresholds.moderate) return Grade::ModerateChaos;
  if (fragmentation >= thresholds.weak) return Grade::WeakChaos;
  return Grade::Regular;
}

DynamicsReport detect_dynamics(const Scalogram& s, double input_variance, const DetectorConfig& config) {
  config.thresholds.validate();
  DynamicsReport report;
  report.grade_thresholds = config.thresholds;
  report.energy = normalized_energy(s, input_variance);

  const auto maxima = modulus_maxima(s, config.prominence);
  report.chains = chain_maxima(maxima, s.grid, config.link_radius);
  report.chain_count = report.chains.size();
  if (!report.chains.empty()) {
    report.fragmentation_index = fragmentation_index(report.chains, maxima);
    double spans = 0.0;
    for (const auto& c : report.chains) spans += static_cast<double>(c.span());
    report.mean_chain_span = spans / static_cast<double>(report.chains.size());
  }
  report.shift_regions = scale_shift_regions(s, config.shift_window, config.jump_fraction);
  report.grade = classify_dynamics(report.fragmentation_index, report.energy, config.thresholds);
  return report;
}

}  // namespace fxwave
