#include "fxwave/wavelet.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <thread>

#include "fxwave/error.hpp"
#include "fxwave/fft.hpp"

namespace fxwave {

namespace {

using cld = std::complex<long double>;

// Roots of sum_k c[k] y^k (ascending coefficients) from the companion matrix,
// each polished by Newton iterations in extended precision.
std::vector<cld> polynomial_roots(const std::vector<long double>& c) {
  const int deg = static_cast<int>(c.size()) - 1;
  std::vector<cld> roots;
  if (deg < 1) return roots;

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = static_cast<double>(-c[i] / c[deg]);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  const auto ev = solver.eigenvalues();

  for (int r = 0; r < deg; ++r) {
    cld z(ev[r].real(), ev[r].imag());
    for (int it = 0; it < 50; ++it) {
      cld p = c[deg], dp = 0;
      for (int k = deg - 1; k >= 0; --k) {
        dp = dp * z + p;
        p = p * z + c[k];
      }
      if (std::abs(dp) == 0.0L) break;
      const cld delta = p / dp;
      z -= delta;
      if (std::abs(delta) <= 1e-19L * std::max(1.0L, std::abs(z))) break;
    }
    roots.push_back(z);
  }
  return roots;
}

long double binomial(int n, int k) {
  long double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void check_filter(std::span<const double> h) {
  if (h.size() < 2 || h.size() % 2 != 0)
    throw Error(ErrorKind::BadFilter, "filter length must be even and >= 2");
  double sum = 0.0;
  for (double v : h) sum += v;
  if (std::abs(sum - std::numbers::sqrt2) > 1e-10)
    throw Error(ErrorKind::BadFilter, "filter does not sum to sqrt(2)");
  for (std::size_t m = 0; 2 * m < h.size(); ++m) {
    double acc = 0.0;
    for (std::size_t k = 0; k + 2 * m < h.size(); ++k) acc += h[k] * h[k + 2 * m];
    if (std::abs(acc - (m == 0 ? 1.0 : 0.0)) > 1e-10)
      throw Error(ErrorKind::BadFilter, "filter is not orthonormal under even shifts");
  }
}

}  // namespace

double WaveletSpec::step() const { return std::ldexp(1.0, -cascade_depth); }

std::vector<double> daubechies_filter(int order) {
  if (order < 1 || order > 10)
    throw Error(ErrorKind::Unsupported, "Daubechies order must be in 1..10, got " + std::to_string(order));
  const int n = order;

  // |m0(w)|^2 = cos^2(w/2)^N P(sin^2(w/2)), P(y) = sum_k C(N-1+k, k) y^k.
  // Each root y of P yields a reciprocal pair z, 1/z of
  // z^2 - (2 - 4y) z + 1 = 0; keeping |z| < 1 gives the extremal-phase filter.
  std::vector<long double> p(n);
  for (int k = 0; k < n; ++k) p[k] = binomial(n - 1 + k, k);

  std::vector<cld> poly{1.0L};
  auto multiply = [&poly](cld a0, cld a1) {
    std::vector<cld> next(poly.size() + 1, cld{});
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i] * a0;
      next[i + 1] += poly[i] * a1;
    }
    poly = std::move(next);
  };
  for (int k = 0; k < n; ++k) multiply(0.5L, 0.5L);
  for (const cld& y : polynomial_roots(p)) {
    const cld b = 2.0L - 4.0L * y;
    const cld disc = std::sqrt(b * b - 4.0L);
    cld z1 = (b + disc) / 2.0L, z2 = (b - disc) / 2.0L;
    const cld z = std::abs(z1) < std::abs(z2) ? z1 : z2;
    multiply(1.0L, -z);
  }

  long double sum = 0;
  for (const cld& c : poly) sum += c.real();
  std::vector<double> h(poly.size());
  for (std::size_t k = 0; k < poly.size(); ++k)
    h[k] = static_cast<double>(poly[k].real() * std::numbers::sqrt2_v<long double> / sum);
  return h;
}

std::vector<double> cascade_wavelet(std::span<const double> lowpass, int depth) {
  check_filter(lowpass);
  if (depth < 4 || depth > 14)
    throw Error(ErrorKind::Unsupported, "cascade depth must be in 4..14, got " + std::to_string(depth));

  const int taps = static_cast<int>(lowpass.size());
  const int last = taps - 1;  // phi and psi are supported on [0, last]
  const double s2 = std::numbers::sqrt2;

  // phi at the integers: eigenvector of M[i][j] = sqrt2 h[2i - j] for
  // eigenvalue 1, normalized by partition of unity (sum = 1).
  const int m = std::max(1, last);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m + 1, m);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const int k = 2 * i - j;
      if (k >= 0 && k < taps) a(i, j) = s2 * lowpass[k];
    }
    a(i, i) -= 1.0;
  }
  a.row(m).setOnes();
  rhs(m) = 1.0;
  const Eigen::VectorXd integer_values = a.colPivHouseholderQr().solve(rhs);

  std::vector<double> phi(last + 1, 0.0);
  for (int i = 0; i < m; ++i) phi[i] = integer_values(i);

  // Two-scale refinement: phi(t) = sqrt2 sum_k h_k phi(2t - k). Even points
  // of each level are inherited from the previous one.
  for (int level = 1; level < depth; ++level) {
    const std::size_t half = std::size_t{1} << (level - 1);
    const std::size_t count = static_cast<std::size_t>(last) * (half * 2) + 1;
    std::vector<double> next(count, 0.0);
    for (std::size_t i = 0; i < count; i += 2) next[i] = phi[i / 2];
    for (std::size_t i = 1; i < count; i += 2) {
      double acc = 0.0;
      for (int k = 0; k < taps; ++k) {
        const long long idx = static_cast<long long>(i) - static_cast<long long>(k * half);
        if (idx >= 0 && idx < static_cast<long long>(phi.size())) acc += lowpass[k] * phi[idx];
      }
      next[i] = s2 * acc;
    }
    phi = std::move(next);
  }

  // psi(t) = sqrt2 sum_k g_k phi(2t - k), g_k = (-1)^k h_{last-k}; at step
  // 2^-depth this needs phi at step 2^-(depth-1), which is what `phi` holds.
  const std::size_t half = std::size_t{1} << (depth - 1);
  const std::size_t count = static_cast<std::size_t>(last) * (half * 2) + 1;
  std::vector<double> psi(count, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    double acc = 0.0;
    for (int k = 0; k < taps; ++k) {
      const long long idx = static_cast<long long>(i) - static_cast<long long>(k * half);
      if (idx < 0 || idx >= static_cast<long long>(phi.size())) continue;
      const double g = (k % 2 == 0 ? 1.0 : -1.0) * lowpass[last - k];
      acc += g * phi[idx];
    }
    psi[i] = s2 * acc;
  }

  const double step = std::ldexp(1.0, -depth);
  double energy = 0.0;
  for (double v : psi) energy += v * v;
  const double norm = std::sqrt(energy * step);
  for (double& v : psi) v /= norm;
  return psi;
}

WaveletSpec make_daubechies(int order, int depth) {
  WaveletSpec spec;
  spec.order = order;
  spec.lowpass = daubechies_filter(order);
  spec.cascade_depth = depth;
  spec.mother = cascade_wavelet(spec.lowpass, depth);
  return spec;
}

AdmissibilityReport check_admissibility(const WaveletSpec& spec) {
  AdmissibilityReport report;
  const double step = spec.step();
  double mean = 0.0, energy = 0.0;
  for (double v : spec.mother) {
    mean += v;
    energy += v * v;
  }
  mean *= step;
  energy *= step;
  report.zero_mean_residual = std::abs(mean);

  // psi_hat by zero-padded DFT; the padding sets the low-frequency resolution.
  const std::size_t n = fast_fft_size(8 * spec.mother.size());
  std::vector<double> buf(n, 0.0);
  std::copy(spec.mother.begin(), spec.mother.end(), buf.begin());
  RealFft fft(n);
  std::vector<std::complex<double>> hat(fft.spectrum_size());
  fft.forward(buf, hat);

  const double dw = 2.0 * std::numbers::pi / (static_cast<double>(n) * step);
  double integral = 0.0;
  for (std::size_t k = 1; k < hat.size(); ++k) {
    const double w = dw * static_cast<double>(k);
    integral += std::norm(hat[k] * step) / w * dw;
  }
  report.admissibility_integral = integral;

  // The integrand behaves like |psi_hat(0)|^2 / w near the origin, so the
  // integral converges only when psi_hat(0) vanishes.
  const double dc = std::norm(hat[0] * step);
  report.integral_finite = std::isfinite(integral) && energy > 0.0 && dc <= 1e-10 * energy;
  report.passed = report.zero_mean_residual < 1e-5 && report.integral_finite;
  return report;
}

ScaleGrid ScaleGrid::linear(double first, double last, double step, double p) {
  if (!(step > 0.0) || last < first)
    throw Error(ErrorKind::BadConfig, "scale grid needs step > 0 and last >= first");
  ScaleGrid grid;
  grid.normalization_exponent = p;
  const auto count = static_cast<std::size_t>(std::floor((last - first) / step + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) grid.scales.push_back(first + static_cast<double>(i) * step);
  grid.validate();
  return grid;
}

void ScaleGrid::validate() const {
  if (scales.empty()) throw Error(ErrorKind::BadConfig, "empty scale grid");
  if (normalization_exponent != 0.5 && normalization_exponent != 1.0)
    throw Error(ErrorKind::BadConfig, "normalization exponent must be 0.5 or 1");
  if (scales.front() < 1.0) throw Error(ErrorKind::ScaleTooSmall, "scales must be >= 1");
  for (std::size_t i = 1; i < scales.size(); ++i)
    if (!(scales[i] > scales[i - 1])) throw Error(ErrorKind::BadConfig, "scales must be strictly increasing");
}

std::size_t ScaleGrid::index_of(double scale) const {
  auto it = std::find(scales.begin(), scales.end(), scale);
  if (it == scales.end())
    throw Error(ErrorKind::UnknownScale, "scale " + std::to_string(scale) + " is not on the grid");
  return static_cast<std::size_t>(it - scales.begin());
}

std::vector<double> scale_wavelet(const WaveletSpec& spec, double a, double p) {
  if (!(a >= 1.0)) throw Error(ErrorKind::ScaleTooSmall, "scale must be >= 1");
  if (p != 0.5 && p != 1.0) throw Error(ErrorKind::BadConfig, "normalization exponent must be 0.5 or 1");
  const auto count = static_cast<std::size_t>(std::floor(a * spec.support() + 1e-9)) + 1;
  const double inv_step = std::ldexp(1.0, spec.cascade_depth);
  const double gain = std::pow(a, -p);
  const std::size_t last = spec.mother.size() - 1;

  std::vector<double> out(count);
  for (std::size_t t = 0; t < count; ++t) {
    const double pos = static_cast<double>(t) / a * inv_step;
    const auto i = static_cast<std::size_t>(std::floor(pos));
    double v;
    if (i >= last) {
      v = spec.mother[last];
    } else {
      const double frac = pos - static_cast<double>(i);
      v = spec.mother[i] + frac * (spec.mother[i + 1] - spec.mother[i]);
    }
    out[t] = gain * v;
  }
  return out;
}

std::size_t centering_offset(const WaveletSpec& spec, double a) {
  return static_cast<std::size_t>(std::floor(a * spec.support() / 2.0 + 1e-9));
}

double max_admissible_scale(const WaveletSpec& spec, std::size_t signal_length) {
  if (signal_length == 0) return 0.0;
  return std::floor(static_cast<double>(signal_length - 1) / spec.support());
}

Mask cone_of_influence(const ScaleGrid& grid, std::size_t signal_length, const WaveletSpec& spec) {
  Mask mask(grid.size(), signal_length, 0);
  const double last = static_cast<double>(signal_length) - 1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double half = grid.scales[i] * spec.support() / 2.0;
    for (std::size_t t = 0; t < signal_length; ++t) {
      const double tau = static_cast<double>(t);
      mask(i, t) = (tau >= half && tau <= last - half) ? 1 : 0;
    }
  }
  return mask;
}

namespace {

void check_cwt_inputs(std::span<const double> x, const WaveletSpec& spec, const ScaleGrid& grid) {
  grid.validate();
  if (spec.mother.empty()) throw Error(ErrorKind::BadFilter, "wavelet has no samples");
  const double largest = grid.scales.back();
  if (x.size() < 2 || static_cast<double>(x.size() - 1) < largest * spec.support()) {
    const double admissible = max_admissible_scale(spec, x.size());
    throw Error(ErrorKind::SignalTooShort,
                "signal of length " + std::to_string(x.size()) + " too short for scale " +
                    std::to_string(largest) + "; largest admissible scale is " +
                    std::to_string(static_cast<long long>(admissible)),
                static_cast<long long>(admissible));
  }
}

Scalogram finish(Matrix<double> coefficients, std::span<const double> x, const WaveletSpec& spec,
                 const ScaleGrid& grid) {
  Scalogram s;
  s.squared = Matrix<double>(coefficients.rows(), coefficients.cols());
  for (std::size_t i = 0; i < coefficients.rows(); ++i)
    for (std::size_t t = 0; t < coefficients.cols(); ++t)
      s.squared(i, t) = coefficients(i, t) * coefficients(i, t);
  s.coefficients = std::move(coefficients);
  s.valid_mask = cone_of_influence(grid, x.size(), spec);
  s.grid = grid;
  return s;
}

}  // namespace

Scalogram cwt(std::span<const double> x, const WaveletSpec& spec, const ScaleGrid& grid,
              const CwtOptions& options) {
  check_cwt_inputs(x, spec, grid);
  const std::size_t length = x.size();
  const double p = grid.normalization_exponent;

  std::vector<std::vector<double>> kernels(grid.size());
  std::size_t longest = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    kernels[i] = scale_wavelet(spec, grid.scales[i], p);
    longest = std::max(longest, kernels[i].size());
  }

  const std::size_t n = fast_fft_size(length + longest - 1);
  const RealFft fft(n);
  std::vector<double> padded(n, 0.0);
  std::copy(x.begin(), x.end(), padded.begin());
  std::vector<std::complex<double>> signal_hat(fft.spectrum_size());
  fft.forward(padded, signal_hat);

  Matrix<double> coefficients(grid.size(), length);

  // Row i: W(tau) = (x * reverse(psi_a))[tau - c + len - 1].
  auto compute_row = [&](std::size_t i, std::vector<double>& buf, std::vector<std::complex<double>>& hat) {
    const auto& k = kernels[i];
    std::fill(buf.begin(), buf.end(), 0.0);
    for (std::size_t j = 0; j < k.size(); ++j) buf[j] = k[k.size() - 1 - j];
    fft.forward(buf, hat);
    for (std::size_t f = 0; f < hat.size(); ++f) hat[f] *= signal_hat[f];
    fft.inverse(hat, buf);
    const std::size_t shift = k.size() - 1 - centering_offset(spec, grid.scales[i]);
    const double scale = 1.0 / static_cast<double>(n);
    auto row = coefficients.row(i);
    for (std::size_t tau = 0; tau < length; ++tau) row[tau] = buf[tau + shift] * scale;
  };

  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, grid.size()));
  auto worker = [&](unsigned w) {
    std::vector<double> buf(n);
    std::vector<std::complex<double>> hat(fft.spectrum_size());
    for (std::size_t i = w; i < grid.size(); i += threads) compute_row(i, buf, hat);
  };
  if (threads <= 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
  }

  return finish(std::move(coefficients), x, spec, grid);
}

Scalogram cwt_direct(std::span<const double> x, const WaveletSpec& spec, const ScaleGrid& grid) {
  if (x.size() > 4096) throw Error(ErrorKind::RefusedSize, "cwt_direct is limited to 4096 samples");
  check_cwt_inputs(x, spec, grid);
  const std::size_t length = x.size();
  Matrix<double> coefficients(grid.size(), length);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double a = grid.scales[i];
    const auto kernel = scale_wavelet(spec, a, grid.normalization_exponent);
    const auto c = static_cast<long long>(centering_offset(spec, a));
    for (std::size_t tau = 0; tau < length; ++tau) {
      double acc = 0.0;
      for (std::size_t j = 0; j < kernel.size(); ++j) {
        const long long t = static_cast<long long>(tau) - c + static_cast<long long>(j);
        if (t >= 0 && t < static_cast<long long>(length)) acc += x[t] * kernel[j];
      }
      coefficients(i, tau) = acc;
    }
  }
  return finish(std::move(coefficients), x, spec, grid);
}

}  // namespace fxwave
