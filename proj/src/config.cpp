#include "fxwave/config.hpp"

#include <fstream>
#include <sstream>

#include "fxwave/error.hpp"
#include "fxwave/textio.hpp"

namespace fxwave {

ScaleGrid AnalysisConfig::grid() const {
  return ScaleGrid::linear(scale_min, scale_max, scale_step, normalization_p);
}

void AnalysisConfig::validate() const {
  if (wavelet_order < 1 || wavelet_order > 10) throw Error(ErrorKind::BadConfig, "wavelet_order must be in 1..10");
  if (cascade_depth < 4 || cascade_depth > 14) throw Error(ErrorKind::BadConfig, "cascade_depth must be in 4..14");
  if (detrend_order && (*detrend_order < 0 || *detrend_order > 1))
    throw Error(ErrorKind::BadConfig, "detrend_order must be none, 0 or 1");
  if (!(flatness_threshold >= 0.0 && flatness_threshold <= 1.0))
    throw Error(ErrorKind::BadConfig, "flatness_threshold must be in [0, 1]");
  if (persistence < 1) throw Error(ErrorKind::BadConfig, "persistence must be >= 1");
  if (!(detector.prominence >= 0.0)) throw Error(ErrorKind::BadConfig, "prominence must be >= 0");
  if (!(detector.link_radius >= 1.0)) throw Error(ErrorKind::BadConfig, "link_radius must be >= 1");
  if (detector.shift_window < 8) throw Error(ErrorKind::BadConfig, "shift_window must be >= 8");
  if (!(detector.jump_fraction > 0.0 && detector.jump_fraction < 1.0))
    throw Error(ErrorKind::BadConfig, "jump_fraction must be in (0, 1)");
  detector.thresholds.validate();
  const auto g = grid();
  try {
    g.index_of(pdf_scale);
  } catch (const Error&) {
    throw Error(ErrorKind::BadConfig, "pdf_scale " + format_real(pdf_scale) + " is not on the scale grid");
  }
}

std::string AnalysisConfig::serialize() const {
  std::ostringstream out;
  auto kv = [&out](std::string_view k, const std::string& v) { out << k << " = " << v << '\n'; };
  kv("wavelet_order", std::to_string(wavelet_order));
  kv("cascade_depth", std::to_string(cascade_depth));
  kv("normalization_p", format_real(normalization_p));
  kv("scale_min", format_real(scale_min));
  kv("scale_max", format_real(scale_max));
  kv("scale_step", format_real(scale_step));
  kv("detrend_order", detrend_order ? std::to_string(*detrend_order) : "none");
  kv("gap_policy", std::string(to_string(gap_policy)));
  kv("spectrum_window", std::string(to_string(spectrum_window)));
  kv("flatness_threshold", format_real(flatness_threshold));
  kv("bin_rule", bin_rule.to_string());
  kv("pdf_scale", format_real(pdf_scale));
  kv("crossover_threshold", format_real(crossover_threshold));
  kv("persistence", std::to_string(persistence));
  kv("prominence", format_real(detector.prominence));
  kv("link_radius", format_real(detector.link_radius));
  kv("shift_window", std::to_string(detector.shift_window));
  kv("jump_fraction", format_real(detector.jump_fraction));
  kv("activity_floor", format_real(detector.thresholds.activity_floor));
  kv("grade_weak", format_real(detector.thresholds.weak));
  kv("grade_moderate", format_real(detector.thresholds.moderate));
  kv("grade_strong", format_real(detector.thresholds.strong));
  return out.str();
}

AnalysisConfig AnalysisConfig::parse(std::string_view text) {
  AnalysisConfig c;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim_view(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorKind::BadConfig, "expected key = value at config line " + std::to_string(line_no));
    const auto key = trim_view(line.substr(0, eq));
    const auto value = trim_view(line.substr(eq + 1));

    if (key == "wavelet_order") c.wavelet_order = parse_integer<int>(value, key);
    else if (key == "cascade_depth") c.cascade_depth = parse_integer<int>(value, key);
    else if (key == "normalization_p") c.normalization_p = parse_real(value, key);
    else if (key == "scale_min") c.scale_min = parse_real(value, key);
    else if (key == "scale_max") c.scale_max = parse_real(value, key);
    else if (key == "scale_step") c.scale_step = parse_real(value, key);
    else if (key == "detrend_order") {
      if (value == "none") c.detrend_order.reset();
      else c.detrend_order = parse_integer<int>(value, key);
    }
    else if (key == "gap_policy") c.gap_policy = parse_gap_policy(value);
    else if (key == "spectrum_window") c.spectrum_window = parse_window(value);
    else if (key == "flatness_threshold") c.flatness_threshold = parse_real(value, key);
    else if (key == "bin_rule") c.bin_rule = BinRule::parse(value);
    else if (key == "pdf_scale") c.pdf_scale = parse_real(value, key);
    else if (key == "crossover_threshold") c.crossover_threshold = parse_real(value, key);
    else if (key == "persistence") c.persistence = parse_integer<int>(value, key);
    else if (key == "prominence") c.detector.prominence = parse_real(value, key);
    else if (key == "link_radius") c.detector.link_radius = parse_real(value, key);
    else if (key == "shift_window") c.detector.shift_window = parse_integer<std::size_t>(value, key);
    else if (key == "jump_fraction") c.detector.jump_fraction = parse_real(value, key);
    else if (key == "activity_floor") c.detector.thresholds.activity_floor = parse_real(value, key);
    else if (key == "grade_weak") c.detector.thresholds.weak = parse_real(value, key);
    else if (key == "grade_moderate") c.detector.thresholds.moderate = parse_real(value, key);
    else if (key == "grade_strong") c.detector.thresholds.strong = parse_real(value, key);
    else throw Error(ErrorKind::BadConfig, "unknown config key '" + std::string(key) + "'");
  }
  c.validate();
  return c;
}

AnalysisConfig AnalysisConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace fxwave
