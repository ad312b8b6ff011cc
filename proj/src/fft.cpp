#include "fxwave/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace fxwave {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

RealFft::RealFft(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("RealFft: zero length");
  std::vector<double> real(n);
  std::vector<std::complex<double>> spec(n / 2 + 1);
  auto* r = real.data();
  auto* c = reinterpret_cast<fftw_complex*>(spec.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard lock(planner_mutex());
  forward_plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), r, c, flags);
  inverse_plan_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), c, r, flags | FFTW_DESTROY_INPUT);
  if (!forward_plan_ || !inverse_plan_) throw std::runtime_error("RealFft: FFTW planning failed");
}

RealFft::~RealFft() {
  std::lock_guard lock(planner_mutex());
  if (forward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  if (inverse_plan_) fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

RealFft::RealFft(RealFft&& other) noexcept
    : n_(other.n_), forward_plan_(other.forward_plan_), inverse_plan_(other.inverse_plan_) {
  other.forward_plan_ = other.inverse_plan_ = nullptr;
}

RealFft& RealFft::operator=(RealFft&& other) noexcept {
  std::swap(n_, other.n_);
  std::swap(forward_plan_, other.forward_plan_);
  std::swap(inverse_plan_, other.inverse_plan_);
  return *this;
}

void RealFft::forward(std::span<const double> in, std::span<std::complex<double>> out) const {
  if (in.size() != n_ || out.size() != spectrum_size())
    throw std::invalid_argument("RealFft::forward: size mismatch");
  // r2c does not modify its input.
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void RealFft::inverse(std::span<const std::complex<double>> in, std::span<double> out) const {
  if (in.size() != spectrum_size() || out.size() != n_)
    throw std::invalid_argument("RealFft::inverse: size mismatch");
  // c2r destroys its input, so work on a copy.
  std::vector<std::complex<double>> scratch(in.begin(), in.end());
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_),
                       reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
}

std::size_t fast_fft_size(std::size_t n) {
  if (n <= 1) return 1;
  for (std::size_t m = n;; ++m) {
    std::size_t r = m;
    for (std::size_t p : {2u, 3u, 5u, 7u})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

}  // namespace fxwave
