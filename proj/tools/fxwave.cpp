#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fxwave/error.hpp"
#include "fxwave/export.hpp"
#include "fxwave/pipeline.hpp"
#include "fxwave/textio.hpp"

namespace {

using namespace fxwave;

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

int exit_code(const Error& e) {
  switch (error_class(e.kind())) {
    case ErrorClass::Usage: return kExitUsage;
    case ErrorClass::Data: return kExitData;
    case ErrorClass::Numeric: return kExitNumeric;
  }
  return kExitNumeric;
}

struct Common {
  std::string input;
  std::string synth;
  std::string config_path;
  std::string label;
  std::string out;
  unsigned threads = 0;
};

AnalysisConfig load_config(const Common& c) {
  return c.config_path.empty() ? AnalysisConfig{} : AnalysisConfig::load(c.config_path);
}

InputSource single_input(const Common& c) {
  if (c.input.empty() == c.synth.empty()) throw Error(ErrorKind::Usage, "give exactly one of --input or --synth");
  if (!c.input.empty()) return InputSource::file(c.input, c.label);
  return InputSource::synthetic(SynthSpec::parse(c.synth), c.label);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wavelet analysis of daily exchange-rate series"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "fxwave " + std::string(kVersion));

  Common analyze_opts;
  auto* analyze = app.add_subcommand("analyze", "Full analysis of one series, artifacts written to --out");
  analyze->add_option("--input", analyze_opts.input, "H.10 style CSV price file");
  analyze->add_option("--synth", analyze_opts.synth, "Synthetic spec, e.g. kind=sine,length=4096,period=128");
  analyze->add_option("--config", analyze_opts.config_path, "key = value configuration file");
  analyze->add_option("--label", analyze_opts.label, "Series label");
  analyze->add_option("--out", analyze_opts.out, "Output directory")->required();
  analyze->add_option("--threads", analyze_opts.threads, "Worker threads for the CWT (0 = all cores)");

  Common compare_opts;
  std::vector<std::string> compare_inputs, compare_synths;
  auto* compare = app.add_subcommand("compare", "Analyze several series and rank them by fragmentation");
  compare->add_option("--input", compare_inputs, "CSV price file (repeatable)");
  compare->add_option("--synth", compare_synths, "Synthetic spec (repeatable)");
  compare->add_option("--config", compare_opts.config_path, "key = value configuration file");
  compare->add_option("--out", compare_opts.out, "Output directory")->required();
  compare->add_option("--threads", compare_opts.threads, "Worker threads for the CWT (0 = all cores)");

  std::string synth_spec, synth_out;
  auto* synth = app.add_subcommand("synth", "Write a synthetic series as a price CSV");
  synth->add_option("--synth", synth_spec, "Synthetic spec")->required();
  synth->add_option("--out", synth_out, "Output file (default stdout)");

  Common spectrum_opts;
  std::string window = "none";
  auto* spectrum = app.add_subcommand("spectrum", "Periodogram and spectral flatness of the returns");
  spectrum->add_option("--input", spectrum_opts.input, "H.10 style CSV price file");
  spectrum->add_option("--synth", spectrum_opts.synth, "Synthetic spec");
  spectrum->add_option("--config", spectrum_opts.config_path, "key = value configuration file");
  spectrum->add_option("--window", window, "none or hann");
  spectrum->add_option("--out", spectrum_opts.out, "Periodogram CSV path (default stdout)");

  auto* version = app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*version) {
      std::cout << "fxwave " << kVersion << '\n';
    } else if (*analyze) {
      const auto config = load_config(analyze_opts);
      const auto report = run_analysis(single_input(analyze_opts), config, analyze_opts.threads);
      write_artifacts(report, analyze_opts.out);
      std::cout << report.label << ": grade " << to_string(report.dynamics.grade) << ", F "
                << report.dynamics.fragmentation_index << ", crossover "
                << (report.crossover ? format_real(*report.crossover) : std::string("none")) << '\n';
    } else if (*compare) {
      const auto config = load_config(compare_opts);
      std::vector<InputSource> inputs;
      for (const auto& p : compare_inputs) inputs.push_back(InputSource::file(p));
      for (const auto& s : compare_synths) inputs.push_back(InputSource::synthetic(SynthSpec::parse(s)));
      const auto reports = run_compare(inputs, config, compare_opts.threads);
      write_comparison(reports, compare_opts.out);
      std::cout << comparison_csv(comparison_table(reports));
    } else if (*synth) {
      const auto spec = SynthSpec::parse(synth_spec);
      spec.validate();
      const auto csv = synth_price_csv(spec);
      if (synth_out.empty()) {
        std::cout << csv;
      } else {
        std::ofstream out(synth_out, std::ios::binary);
        if (!out) throw Error(ErrorKind::Io, "cannot write '" + synth_out + "'");
        out << csv;
      }
    } else if (*spectrum) {
      auto config = load_config(spectrum_opts);
      config.spectrum_window = parse_window(window);
      const auto series = prepare_series(single_input(spectrum_opts), config);
      const auto p = periodogram(series.values, config.spectrum_window);
      const double flatness = spectral_flatness(p);
      if (spectrum_opts.out.empty()) {
        write_periodogram_csv(std::cout, p);
      } else {
        std::ofstream out(spectrum_opts.out, std::ios::binary);
        if (!out) throw Error(ErrorKind::Io, "cannot write '" + spectrum_opts.out + "'");
        write_periodogram_csv(out, p);
      }
      std::cerr << "spectral_flatness " << flatness << (flatness > config.flatness_threshold ? " broadband" : "")
                << '\n';
    }
  } catch (const Error& e) {
    std::cerr << "fxwave: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "fxwave: " << e.what() << '\n';
    return kExitNumeric;
  }
  return 0;
}
