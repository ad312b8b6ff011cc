#include "fxwave/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "fxwave/error.hpp"
#include "fxwave/fft.hpp"

namespace fxwave {

std::string_view to_string(Window w) { return w == Window::None ? "none" : "hann"; }

Window parse_window(std::string_view text) {
  if (text == "none") return Window::None;
  if (text == "hann") return Window::Hann;
  throw Error(ErrorKind::BadConfig, "unknown window '" + std::string(text) + "'");
}

Periodogram periodogram(std::span<const double> x, Window window) {
  const std::size_t n = x.size();
  if (n < 8) throw Error(ErrorKind::TooShort, "periodogram needs at least 8 samples");

  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);

  std::vector<double> buf(n);
  for (std::size_t t = 0; t < n; ++t) {
    double w = 1.0;
    if (window == Window::Hann)
      w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(n - 1)));
    buf[t] = w * (x[t] - mean);
  }

  RealFft fft(n);
  std::vector<std::complex<double>> spec(fft.spectrum_size());
  fft.forward(buf, spec);

  Periodogram out;
  out.window = window;
  out.signal_length = n;
  const std::size_t bins = n / 2 + 1;
  out.frequencies.resize(bins);
  out.power.resize(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    out.frequencies[k] = static_cast<double>(k) / static_cast<double>(n);
    out.power[k] = std::norm(spec[k]) / static_cast<double>(n);
  }
  return out;
}

double folded_power(const Periodogram& p) {
  const std::size_t n = p.signal_length;
  double total = 0.0;
  for (std::size_t k = 0; k < p.power.size(); ++k) {
    const bool self_conjugate = k == 0 || (n % 2 == 0 && k == n / 2);
    total += (self_conjugate ? 1.0 : 2.0) * p.power[k];
  }
  return total;
}

double spectral_flatness(const Periodogram& p) {
  if (p.power.size() < 2) throw Error(ErrorKind::Undefined, "no positive-frequency bins");
  double sum = 0.0, log_sum = 0.0;
  bool has_zero = false;
  const std::size_t m = p.power.size() - 1;
  for (std::size_t k = 1; k < p.power.size(); ++k) {
    const double v = p.power[k];
    sum += v;
    if (v > 0.0)
      log_sum += std::log(v);
    else
      has_zero = true;
  }
  if (sum <= 0.0) throw Error(ErrorKind::Undefined, "all positive-frequency bins are zero");
  if (has_zero) return 0.0;
  const double arith = sum / static_cast<double>(m);
  const double geo = std::exp(log_sum / static_cast<double>(m));
  return std::min(1.0, geo / arith);
}

}  // namespace fxwave
