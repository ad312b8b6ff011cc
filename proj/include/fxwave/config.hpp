#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "fxwave/chaosdetect.hpp"
#include "fxwave/scalestats.hpp"
#include "fxwave/spectral.hpp"
#include "fxwave/timeseries.hpp"
#include "fxwave/wavelet.hpp"

namespace fxwave {

// Every tunable of the analysis. Serializes to a flat `key = value` file whose
// keys are listed in README.md; parse(serialize(c)) == c.
struct AnalysisConfig {
  int wavelet_order = 7;
  int cascade_depth = 10;
  double normalization_p = 0.5;
  double scale_min = 1.0;
  double scale_max = 128.0;
  double scale_step = 1.0;
  std::optional<int> detrend_order;  // none by default
  GapPolicy gap_policy = GapPolicy::Drop;
  Window spectrum_window = Window::None;
  double flatness_threshold = 0.5;
  BinRule bin_rule = BinRule::freedman_diaconis();
  double pdf_scale = 10.0;
  double crossover_threshold = 3.0;
  int persistence = 5;
  DetectorConfig detector;

  ScaleGrid grid() const;
  void validate() const;

  std::string serialize() const;
  static AnalysisConfig parse(std::string_view text);
  static AnalysisConfig load(const std::string& path);

  friend bool operator==(const AnalysisConfig& a, const AnalysisConfig& b) { return a.serialize() == b.serialize(); }
};

}  // namespace fxwave
