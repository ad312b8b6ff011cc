#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fxwave {

// Row-major dense matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  const std::vector<T>& data() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using Mask = Matrix<std::uint8_t>;

// A Daubechies wavelet: N vanishing moments, 2N scaling-filter taps, and the
// mother wavelet psi sampled on [0, 2N-1] with step 2^-depth.
struct WaveletSpec {
  int order = 0;
  std::vector<double> lowpass;
  std::vector<double> mother;
  int cascade_depth = 0;

  double step() const;
  double support() const { return 2.0 * order - 1.0; }
};

// Extremal-phase Daubechies scaling coefficients, sum = sqrt(2). 1 <= order <= 10.
std::vector<double> daubechies_filter(int order);

// psi sampled at step 2^-depth on [0, len(lowpass)-1], unit discrete L2 norm
// (sum psi^2 * step = 1). 4 <= depth <= 14.
std::vector<double> cascade_wavelet(std::span<const double> lowpass, int depth);

WaveletSpec make_daubechies(int order, int depth = 10);

struct AdmissibilityReport {
  double zero_mean_residual = 0.0;    // |sum psi * step|
  double admissibility_integral = 0;  // int_0^inf |psi_hat(w)|^2 / w dw, numerical estimate
  bool integral_finite = false;
  bool passed = false;
};

AdmissibilityReport check_admissibility(const WaveletSpec& spec);

// Scales a (all >= 1, strictly increasing) and the normalization exponent p
// of the family a^-p psi(t/a); p is 1/2 or 1.
struct ScaleGrid {
  std::vector<double> scales;
  double normalization_exponent = 0.5;

  static ScaleGrid linear(double first, double last, double step, double p = 0.5);
  void validate() const;
  std::size_t size() const noexcept { return scales.size(); }
  // Index of an exact grid scale; throws UnknownScale.
  std::size_t index_of(double scale) const;
};

// a^-p psi(t/a) at integer t = 0 .. floor(a(2N-1)), linear interpolation of
// the cascade grid.
std::vector<double> scale_wavelet(const WaveletSpec& spec, double a, double p);

// Shift that centres psi_a on tau: floor(a(2N-1)/2).
std::size_t centering_offset(const WaveletSpec& spec, double a);

// Largest integer scale leaving at least one column outside the cone of
// influence for a signal of the given length.
double max_admissible_scale(const WaveletSpec& spec, std::size_t signal_length);

struct Scalogram {
  Matrix<double> coefficients;  // W(a, tau), one row per scale
  Matrix<double> squared;       // W^2
  Mask valid_mask;              // 1 outside the boundary-affected cone
  ScaleGrid grid;
  std::string source_label;

  std::size_t scales() const noexcept { return coefficients.rows(); }
  std::size_t length() const noexcept { return coefficients.cols(); }
};

// valid(a, tau) iff a(2N-1)/2 <= tau <= T-1-a(2N-1)/2.
Mask cone_of_influence(const ScaleGrid& grid, std::size_t signal_length, const WaveletSpec& spec);

struct CwtOptions {
  // Worker threads for independent scale rows; 0 picks hardware concurrency.
  // Output is bit-identical for any value.
  unsigned threads = 1;
};

// W(a, tau) = sum_t x(t) psi_a(t - tau + centering_offset(a)), computed by
// FFT convolution with zero padding.
Scalogram cwt(std::span<const double> x, const WaveletSpec& spec, const ScaleGrid& grid,
              const CwtOptions& options = {});

// Same contract by explicit double summation. Refuses signals above 4096 samples.
Scalogram cwt_direct(std::span<const double> x, const WaveletSpec& spec, const ScaleGrid& grid);

}  // namespace fxwave
