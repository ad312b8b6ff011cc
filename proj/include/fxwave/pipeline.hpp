#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fxwave/chaosdetect.hpp"
#include "fxwave/config.hpp"
#include "fxwave/scalestats.hpp"
#include "fxwave/spectral.hpp"
#include "fxwave/synth.hpp"
#include "fxwave/timeseries.hpp"
#include "fxwave/wavelet.hpp"

namespace fxwave {

inline constexpr std::string_view kVersion = "0.1.0";

// Either an H.10 style price file or a synthetic generator. Synthetic values
// are analyzed directly as the return series.
struct InputSource {
  std::optional<std::string> path;
  std::optional<SynthSpec> synth;
  std::string label;  // empty: file stem or SynthSpec::label()

  static InputSource file(std::string path, std::string label = {});
  static InputSource synthetic(SynthSpec spec, std::string label = {});
  std::string resolved_label() const;
  std::string describe() const;
};

struct AnalysisReport {
  std::string label;
  std::string source;
  std::size_t sample_count = 0;
  std::string span_start;  // date, or sample index for synthetic input
  std::string span_end;
  std::vector<Date> dates;
  double return_variance = 0.0;
  Periodogram periodogram;
  double spectral_flatness = 0.0;
  bool broadband = false;
  Scalogram scalogram;
  KurtosisCurve kurtosis;
  std::optional<double> crossover;
  ScalePdf pdf;
  DynamicsReport dynamics;
  AnalysisConfig config;
};

// The return series that analysis runs on: ingest, gap policy, log returns,
// optional detrending.
struct PreparedSeries {
  std::vector<double> values;
  std::vector<Date> dates;  // empty for synthetic input
  std::string label;
  std::string span_start;
  std::string span_end;
};
PreparedSeries prepare_series(const InputSource& input, const AnalysisConfig& config);

AnalysisReport run_analysis(const InputSource& input, const AnalysisConfig& config, unsigned threads = 1);

std::string report_json(const AnalysisReport& report);

// Writes report.json, kurtosis.csv, pdf.csv, scalogram.csv,
// scalogram_mask.csv, scalogram.svg, periodogram.csv, chains.csv and
// config.used. Files are staged next to out_dir and moved in only when all of
// them were written.
void write_artifacts(const AnalysisReport& report, const std::filesystem::path& out_dir);

struct ComparisonRow {
  std::string label;
  double spectral_flatness = 0.0;
  std::optional<double> crossover;
  double fragmentation_index = 0.0;
  Grade grade = Grade::Quiescent;
};

// One report per input, then the table sorted by F descending (ties by
// label). Any failing input fails the run and is named in the error.
std::vector<AnalysisReport> run_compare(const std::vector<InputSource>& inputs, const AnalysisConfig& config,
                                        unsigned threads = 1);
std::vector<ComparisonRow> comparison_table(const std::vector<AnalysisReport>& reports);
std::string comparison_csv(const std::vector<ComparisonRow>& rows);

// Writes comparison.csv plus one artifact subdirectory per input.
void write_comparison(const std::vector<AnalysisReport>& reports, const std::filesystem::path& out_dir);

// Synthetic values rendered as an H.10 price file: weekday dates from
// 2000-01-03, prices exp(cumsum(0.01 * z)) with z the standardized values.
std::string synth_price_csv(const SynthSpec& spec);

}  // namespace fxwave
