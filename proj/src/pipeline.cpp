#include "fxwave/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "fxwave/error.hpp"
#include "fxwave/export.hpp"
#include "fxwave/textio.hpp"

namespace fxwave {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

InputSource InputSource::file(std::string path, std::string label) {
  InputSource in;
  in.path = std::move(path);
  in.label = std::move(label);
  return in;
}

InputSource InputSource::synthetic(SynthSpec spec, std::string label) {
  InputSource in;
  in.synth = std::move(spec);
  in.label = std::move(label);
  return in;
}

std::string InputSource::resolved_label() const {
  if (!label.empty()) return label;
  if (path) return fs::path(*path).stem().string();
  if (synth) return synth->label();
  return "input";
}

std::string InputSource::describe() const {
  if (path) return "file:" + *path;
  if (synth) return "synth:" + synth->to_string();
  return "none";
}

PreparedSeries prepare_series(const InputSource& input, const AnalysisConfig& config) {
  PreparedSeries out;
  out.label = input.resolved_label();
  if (input.path) {
    const auto prices = load_h10_file(*input.path, config.gap_policy, out.label);
    auto returns = log_returns(prices);
    out.values = std::move(returns.values);
    out.dates = std::move(returns.origin_dates);
    out.span_start = format_date(out.dates.front());
    out.span_end = format_date(out.dates.back());
  } else if (input.synth) {
    input.synth->validate();
    out.values = generate(*input.synth);
    out.span_start = "0";
    out.span_end = std::to_string(out.values.size() - 1);
  } else {
    throw Error(ErrorKind::Usage, "no input given");
  }
  if (config.detrend_order) out.values = detrend(out.values, *config.detrend_order);
  return out;
}

namespace {

double population_variance(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return ss / n;
}

}  // namespace

AnalysisReport run_analysis(const InputSource& input, const AnalysisConfig& config, unsigned threads) {
  config.validate();
  AnalysisReport r;
  r.config = config;
  r.source = input.describe();

  auto series = prepare_series(input, config);
  r.label = series.label;
  r.sample_count = series.values.size();
  r.span_start = series.span_start;
  r.span_end = series.span_end;
  r.dates = std::move(series.dates);
  r.return_variance = population_variance(series.values);

  r.periodogram = periodogram(series.values, config.spectrum_window);
  r.spectral_flatness = spectral_flatness(r.periodogram);
  r.broadband = r.spectral_flatness > config.flatness_threshold;

  const auto spec = make_daubechies(config.wavelet_order, config.cascade_depth);
  r.scalogram = cwt(series.values, spec, config.grid(), CwtOptions{threads});
  r.scalogram.source_label = r.label;

  r.kurtosis = kurtosis_by_scale(r.scalogram);
  r.crossover = gaussian_crossover(r.kurtosis, config.crossover_threshold, config.persistence);
  const auto row = scale_series(r.scalogram, config.pdf_scale);
  r.pdf = scale_pdf(row.values, config.bin_rule, config.pdf_scale);

  r.dynamics = detect_dynamics(r.scalogram, r.return_variance, config.detector);
  return r;
}

namespace {

ordered_json config_json(const AnalysisConfig& c) {
  ordered_json j;
  std::istringstream lines(c.serialize());
  std::string line;
  while (std::getline(lines, line)) {
    const auto eq = line.find(" = ");
    j[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return j;
}

ordered_json optional_real(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

}  // namespace

std::string report_json(const AnalysisReport& r) {
  ordered_json j;
  j["tool"] = "fxwave";
  j["version"] = kVersion;
  j["label"] = r.label;
  j["source"] = r.source;
  j["samples"] = r.sample_count;
  j["span"] = {{"start", r.span_start}, {"end", r.span_end}};
  j["return_variance"] = r.return_variance;

  j["spectrum"] = {{"window", to_string(r.periodogram.window)},
                   {"bins", r.periodogram.power.size()},
                   {"spectral_flatness", r.spectral_flatness},
                   {"broadband", r.broadband},
                   {"file", "periodogram.csv"}};

  ordered_json omitted = ordered_json::array();
  for (double a : r.kurtosis.omitted_scales) omitted.push_back(a);
  j["kurtosis"] = {{"file", "kurtosis.csv"},
                   {"threshold", r.config.crossover_threshold},
                   {"persistence", r.config.persistence},
                   {"crossover_scale", optional_real(r.crossover)},
                   {"omitted_scales", omitted}};
  j["pdf"] = {{"file", "pdf.csv"},
              {"scale", r.pdf.scale},
              {"bin_rule", r.config.bin_rule.to_string()},
              {"bins", r.pdf.density.size()},
              {"samples", r.pdf.sample_count}};

  const auto& d = r.dynamics;
  ordered_json regions = ordered_json::array();
  for (const auto& reg : d.shift_regions) {
    ordered_json e = {{"start", reg.start}, {"end", reg.end}};
    if (!r.dates.empty()) {
      e["start_date"] = format_date(r.dates[reg.start]);
      e["end_date"] = format_date(r.dates[reg.end]);
    }
    regions.push_back(std::move(e));
  }
  j["dynamics"] = {{"fragmentation_index", d.fragmentation_index},
                   {"mean_chain_span", d.mean_chain_span},
                   {"chain_count", d.chain_count},
                   {"normalized_energy", d.energy},
                   {"grade", to_string(d.grade)},
                   {"grade_thresholds",
                    {{"activity_floor", d.grade_thresholds.activity_floor},
                     {"weak", d.grade_thresholds.weak},
                     {"moderate", d.grade_thresholds.moderate},
                     {"strong", d.grade_thresholds.strong}}},
                   {"shift_regions", regions},
                   {"file", "chains.csv"}};

  j["scalogram"] = {{"wavelet", "db" + std::to_string(r.config.wavelet_order)},
                    {"normalization_p", r.config.normalization_p},
                    {"scales", r.scalogram.scales()},
                    {"length", r.scalogram.length()},
                    {"files", {"scalogram.csv", "scalogram_mask.csv", "scalogram.svg"}}};
  j["config"] = config_json(r.config);
  j["config_file"] = "config.used";
  return j.dump(2) + "\n";
}

namespace {

template <typename Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  writer(out);
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

// Runs `fill` against a fresh staging directory next to `out_dir`, then moves
// every staged file into `out_dir`. Staged files are removed on failure.
template <typename Fill>
void staged_write(const fs::path& out_dir, Fill&& fill) {
  const auto target = fs::absolute(out_dir);
  const auto staging = target.parent_path() / ("." + target.filename().string() + ".partial");
  std::error_code ec;
  fs::remove_all(staging, ec);
  try {
    fs::create_directories(staging);
    fill(staging);
    fs::create_directories(target);
    std::vector<fs::path> entries;
    for (const auto& e : fs::directory_iterator(staging)) entries.push_back(e.path());
    std::sort(entries.begin(), entries.end());
    for (const auto& src : entries) {
      const auto dst = target / src.filename();
      if (fs::is_directory(src)) fs::remove_all(dst);
      fs::rename(src, dst);
    }
    fs::remove_all(staging);
  } catch (const fs::filesystem_error& e) {
    fs::remove_all(staging, ec);
    throw Error(ErrorKind::Io, e.what());
  } catch (...) {
    fs::remove_all(staging, ec);
    throw;
  }
}

void write_report_files(const AnalysisReport& r, const fs::path& dir) {
  write_file(dir / "report.json", [&](std::ostream& o) { o << report_json(r); });
  write_file(dir / "kurtosis.csv", [&](std::ostream& o) { write_kurtosis_csv(o, r.kurtosis); });
  write_file(dir / "pdf.csv", [&](std::ostream& o) { write_pdf_csv(o, r.pdf); });
  write_file(dir / "scalogram.csv", [&](std::ostream& o) { write_scalogram_csv(o, r.scalogram); });
  write_file(dir / "scalogram_mask.csv", [&](std::ostream& o) { write_mask_csv(o, r.scalogram); });
  write_file(dir / "scalogram.svg", [&](std::ostream& o) { write_scalogram_svg(o, r.scalogram); });
  write_file(dir / "periodogram.csv", [&](std::ostream& o) { write_periodogram_csv(o, r.periodogram); });
  write_file(dir / "chains.csv",
             [&](std::ostream& o) { write_chains_csv(o, r.dynamics.chains, r.scalogram.grid); });
  write_file(dir / "config.used", [&](std::ostream& o) { o << r.config.serialize(); });
}

std::string safe_name(std::string_view label) {
  std::string s;
  for (char c : label) s += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.') ? c : '_';
  if (s.empty() || s == "." || s == "..") s = "input";
  return s;
}

}  // namespace

void write_artifacts(const AnalysisReport& report, const fs::path& out_dir) {
  staged_write(out_dir, [&](const fs::path& dir) { write_report_files(report, dir); });
}

std::vector<AnalysisReport> run_compare(const std::vector<InputSource>& inputs, const AnalysisConfig& config,
                                        unsigned threads) {
  if (inputs.size() < 2) throw Error(ErrorKind::Usage, "compare needs at least two inputs");
  config.validate();
  std::vector<AnalysisReport> reports;
  reports.reserve(inputs.size());
  for (const auto& in : inputs) {
    try {
      reports.push_back(run_analysis(in, config, threads));
    } catch (const Error& e) {
      throw Error(e.kind(), "input '" + in.resolved_label() + "': " + e.what(), e.detail());
    }
  }
  // Labels double as directory names.
  std::map<std::string, int> seen;
  for (auto& r : reports) {
    const int n = seen[r.label]++;
    if (n > 0) r.label += "-" + std::to_string(n + 1);
  }
  return reports;
}

std::vector<ComparisonRow> comparison_table(const std::vector<AnalysisReport>& reports) {
  std::vector<ComparisonRow> rows;
  for (const auto& r : reports)
    rows.push_back({r.label, r.spectral_flatness, r.crossover, r.dynamics.fragmentation_index, r.dynamics.grade});
  std::stable_sort(rows.begin(), rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
    if (a.fragmentation_index != b.fragmentation_index) return a.fragmentation_index > b.fragmentation_index;
    return a.label < b.label;
  });
  return rows;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
  std::ostringstream out;
  out << "label,spectral_flatness,crossover,fragmentation_index,grade\n";
  for (const auto& r : rows)
    out << r.label << ',' << format_real(r.spectral_flatness) << ','
        << (r.crossover ? format_real(*r.crossover) : "none") << ',' << format_real(r.fragmentation_index) << ','
        << to_string(r.grade) << '\n';
  return out.str();
}

void write_comparison(const std::vector<AnalysisReport>& reports, const fs::path& out_dir) {
  staged_write(out_dir, [&](const fs::path& dir) {
    for (const auto& r : reports) {
      const auto sub = dir / safe_name(r.label);
      fs::create_directories(sub);
      write_report_files(r, sub);
    }
    write_file(dir / "comparison.csv", [&](std::ostream& o) { o << comparison_csv(comparison_table(reports)); });
  });
}

std::string synth_price_csv(const SynthSpec& spec) {
  const auto x = generate(spec);
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / n);

  using namespace std::chrono;
  sys_days day = sys_days{year{2000} / January / 3};
  auto next_weekday = [&day] {
    do day += days{1};
    while (weekday{day} == Saturday || weekday{day} == Sunday);
  };

  std::ostringstream out;
  out << "DATE,VALUE\n";
  double log_price = 0.0;
  out << format_date(year_month_day{day}) << ',' << format_real(1.0) << '\n';
  for (double v : x) {
    log_price += 0.01 * (sd > 0.0 ? (v - mean) / sd : 0.0);
    next_weekday();
    out << format_date(year_month_day{day}) << ',' << format_real(std::exp(log_price)) << '\n';
  }
  return out.str();
}

}  // namespace fxwave
