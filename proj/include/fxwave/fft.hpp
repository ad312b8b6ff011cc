#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fxwave {

// Real-to-complex / complex-to-real transform pair of a fixed length, backed
// by FFTW. Plans are created once (planner access is serialized) and executed
// through the new-array interface, so one RealFft may be shared by threads as
// long as each thread supplies its own buffers.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;
  RealFft(RealFft&&) noexcept;
  RealFft& operator=(RealFft&&) noexcept;

  std::size_t size() const noexcept { return n_; }
  std::size_t spectrum_size() const noexcept { return n_ / 2 + 1; }

  // Unnormalized forward DFT: out[k] = sum_t in[t] e^{-2 pi i k t / n}.
  void forward(std::span<const double> in, std::span<std::complex<double>> out) const;
  // Unnormalized inverse; the caller divides by n.
  void inverse(std::span<const std::complex<double>> in, std::span<double> out) const;

 private:
  std::size_t n_ = 0;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

// Smallest length >= n whose only prime factors are 2, 3, 5 and 7.
std::size_t fast_fft_size(std::size_t n);

}  // namespace fxwave
