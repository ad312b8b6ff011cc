#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "doctest.h"
#include "fxwave/error.hpp"
#include "fxwave/synth.hpp"
#include "fxwave/wavelet.hpp"

using namespace fxwave;

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  SynthSpec s;
  s.length = std::max<std::size_t>(n, 64);
  s.seed = seed;
  auto v = generate(s);
  v.resize(n);
  return v;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Usage;
}

double row_max(const Scalogram& s, std::size_t i) {
  double m = 0.0;
  for (double v : s.coefficients.row(i)) m = std::max(m, std::abs(v));
  return m;
}

// sum_k (-1)^k k^p h_k in long double, with the magnitude of its terms.
std::pair<long double, long double> alternating_moment(const std::vector<double>& h, int p) {
  long double sum = 0, mag = 0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    const long double term = (k % 2 ? -1.0L : 1.0L) * std::pow((long double)k, p) * h[k];
    sum += term;
    mag += std::abs(term);
  }
  return {sum, mag};
}

const WaveletSpec& db7() {
  static const WaveletSpec spec = make_daubechies(7);
  return spec;
}

}  // namespace

TEST_CASE("Haar filter") {
  const auto h = daubechies_filter(1);
  REQUIRE(h.size() == 2);
  CHECK(h[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(h[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("Db-2 satisfies its defining equations") {
  const auto h = daubechies_filter(2);
  REQUIRE(h.size() == 4);
  CHECK(std::abs(std::accumulate(h.begin(), h.end(), 0.0) - std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(alternating_moment(h, 0).first) < 1e-12);
  CHECK(std::abs(alternating_moment(h, 1).first) < 1e-12);
  CHECK(std::abs(h[0] * h[2] + h[1] * h[3]) < 1e-12);
}

TEST_CASE("Db-7 vanishing moments of the filter") {
  const auto h = daubechies_filter(7);
  REQUIRE(h.size() == 14);
  for (int p = 0; p <= 6; ++p) CHECK(std::abs(alternating_moment(h, p).first) < 1e-9);
}

TEST_CASE("filter invariants for every order") {
  for (int n = 1; n <= 10; ++n) {
    CAPTURE(n);
    const auto h = daubechies_filter(n);
    REQUIRE(h.size() == static_cast<std::size_t>(2 * n));
    CHECK(std::abs(std::accumulate(h.begin(), h.end(), 0.0) - std::sqrt(2.0)) < 1e-10);
    for (std::size_t m = 0; 2 * m < h.size(); ++m) {
      double dot = 0.0;
      for (std::size_t k = 0; k + 2 * m < h.size(); ++k) dot += h[k] * h[k + 2 * m];
      CHECK(std::abs(dot - (m == 0 ? 1.0 : 0.0)) < 1e-10);
    }
    for (int p = 0; p < n; ++p) {
      const auto [sum, mag] = alternating_moment(h, p);
      CHECK(static_cast<double>(std::abs(sum)) < 1e-9 * std::max(1.0, static_cast<double>(mag)));
    }
    // Extremal phase: the energy sits at the front of the filter.
    if (n >= 2) CHECK(std::abs(h.front()) > std::abs(h.back()));
  }
  CHECK(kind_of([] { daubechies_filter(0); }) == ErrorKind::Unsupported);
  CHECK(kind_of([] { daubechies_filter(11); }) == ErrorKind::Unsupported);
}

TEST_CASE("Haar cascade is a step function") {
  for (int depth : {4, 9}) {
    const auto psi = cascade_wavelet(daubechies_filter(1), depth);
    const std::size_t half = std::size_t{1} << (depth - 1);
    REQUIRE(psi.size() == 2 * half + 1);
    for (std::size_t i = 0; i < half; ++i) CHECK(psi[i] == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = half + 1; i < 2 * half; ++i) CHECK(psi[i] == doctest::Approx(-1.0).epsilon(1e-12));
  }
}

TEST_CASE("Db-7 cascade: zero mean and unit norm") {
  const auto& spec = db7();
  REQUIRE(spec.mother.size() == 13 * 1024 + 1);
  double mean = 0.0, energy = 0.0;
  for (double v : spec.mother) {
    mean += v;
    energy += v * v;
  }
  CHECK(std::abs(mean * spec.step()) < 1e-6);
  CHECK(std::abs(energy * spec.step() - 1.0) < 1e-6);
}

TEST_CASE("cascade converges with depth") {
  const auto h = daubechies_filter(4);
  for (int j : {6, 8, 10}) {
    const auto coarse = cascade_wavelet(h, j);
    const auto fine = cascade_wavelet(h, j + 2);
    double diff = 0.0;
    for (std::size_t i = 0; i < coarse.size(); ++i) diff = std::max(diff, std::abs(coarse[i] - fine[4 * i]));
    CAPTURE(j);
    CHECK(diff < 1e-3 * (j >= 8 ? 1.0 : 50.0));
  }
}

TEST_CASE("cascade rejects bad input") {
  CHECK(kind_of([] { cascade_wavelet(std::vector<double>{1.0, 1.0, 1.0}, 8); }) == ErrorKind::BadFilter);
  CHECK(kind_of([] { cascade_wavelet(std::vector<double>{1.0, 1.0}, 8); }) == ErrorKind::BadFilter);
  CHECK(kind_of([] { cascade_wavelet(std::vector<double>{0.5, 0.5, 0.2, 0.2}, 8); }) == ErrorKind::BadFilter);
  CHECK(kind_of([] { cascade_wavelet(daubechies_filter(2), 3); }) == ErrorKind::Unsupported);
  CHECK(kind_of([] { cascade_wavelet(daubechies_filter(2), 15); }) == ErrorKind::Unsupported);
}

TEST_CASE("admissibility") {
  for (int n = 1; n <= 10; ++n) {
    CAPTURE(n);
    const auto r = check_admissibility(make_daubechies(n));
    CHECK(r.passed);
    CHECK(r.zero_mean_residual < 1e-5);
    CHECK(r.admissibility_integral > 0.0);
  }
  CHECK(check_admissibility(make_daubechies(1)).zero_mean_residual < 1e-10);

  WaveletSpec constant = make_daubechies(2);
  std::fill(constant.mother.begin(), constant.mother.end(), 1.0);
  const auto bad = check_admissibility(constant);
  CHECK_FALSE(bad.passed);
  CHECK(bad.zero_mean_residual > 1.0);
}

TEST_CASE("scale_wavelet at a = 1 samples the cascade at integers") {
  const auto& spec = db7();
  const auto w = scale_wavelet(spec, 1.0, 0.5);
  REQUIRE(w.size() == 14);
  for (std::size_t t = 0; t < w.size(); ++t) CHECK(w[t] == spec.mother[t * 1024]);
}

TEST_CASE("scale_wavelet a = 2, p = 1") {
  const auto& spec = db7();
  const auto w = scale_wavelet(spec, 2.0, 1.0);
  CHECK(w.size() == 27);
  CHECK(std::abs(std::accumulate(w.begin(), w.end(), 0.0)) < 2e-3);
  CHECK(kind_of([&] { scale_wavelet(spec, 0.5, 0.5); }) == ErrorKind::ScaleTooSmall);
  CHECK(kind_of([&] { scale_wavelet(spec, 2.0, 0.7); }) == ErrorKind::BadConfig);
}

TEST_CASE("scale_wavelet norms are flat across scales from a = 3") {
  // a = 1 and 2 sample psi too coarsely (L2 1.13 and 1.24 at p = 1/2).
  const auto& spec = db7();
  auto l2 = [&](double a) {
    double s = 0.0;
    for (double v : scale_wavelet(spec, a, 0.5)) s += v * v;
    return std::sqrt(s);
  };
  auto l1 = [&](double a) {
    double s = 0.0;
    for (double v : scale_wavelet(spec, a, 1.0)) s += std::abs(v);
    return s;
  };
  const double ref2 = l2(8.0), ref1 = l1(8.0);
  for (int a = 3; a <= 128; ++a) {
    CAPTURE(a);
    CHECK(std::abs(l2(a) / ref2 - 1.0) < 0.05);
    CHECK(std::abs(l1(a) / ref1 - 1.0) < 0.05);
  }
}

TEST_CASE("cone of influence") {
  const auto& spec = db7();
  auto masked_left = [](const Mask& m, std::size_t row) {
    std::size_t n = 0;
    while (n < m.cols() && !m(row, n)) ++n;
    return n;
  };
  auto masked_right = [](const Mask& m, std::size_t row) {
    std::size_t n = 0;
    while (n < m.cols() && !m(row, m.cols() - 1 - n)) ++n;
    return n;
  };
  auto m = cone_of_influence(ScaleGrid::linear(1, 1, 1), 1000, spec);
  CHECK(masked_left(m, 0) == 7);
  CHECK(masked_right(m, 0) == 7);

  m = cone_of_influence(ScaleGrid{{85.0}, 0.5}, 2400, spec);
  // 85 * 13 / 2 = 552.5, so tau = 0..552 is inside the cone.
  CHECK(masked_left(m, 0) == 553);
  CHECK(masked_right(m, 0) == 553);

  m = cone_of_influence(ScaleGrid{{300.0}, 0.5}, 300, spec);
  CHECK(masked_left(m, 0) == 300);
}

TEST_CASE("zero signal gives a zero scalogram") {
  const std::vector<double> x(400, 0.0);
  const auto g = ScaleGrid::linear(1, 16, 1);
  for (const auto& s : {cwt(x, db7(), g), cwt_direct(x, db7(), g)}) {
    CHECK(s.scales() == 16);
    CHECK(s.length() == 400);
    for (double v : s.coefficients.data()) CHECK(v == 0.0);
  }
}

TEST_CASE("impulse response is the reversed, centred wavelet") {
  const auto& spec = db7();
  std::vector<double> x(600, 0.0);
  const std::size_t t0 = 300;
  x[t0] = 1.0;
  const auto g = ScaleGrid::linear(1, 20, 1);
  const auto s = cwt_direct(x, spec, g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto k = scale_wavelet(spec, g.scales[i], 0.5);
    const std::size_t c = centering_offset(spec, g.scales[i]);
    for (std::size_t tau = 0; tau < x.size(); ++tau) {
      const long long j = static_cast<long long>(t0 + c) - static_cast<long long>(tau);
      const double expect = (j >= 0 && j < static_cast<long long>(k.size())) ? k[j] : 0.0;
      CHECK(s.coefficients(i, tau) == expect);
    }
  }
}

TEST_CASE("cwt matches cwt_direct") {
  for (int order : {2, 4, 7}) {
    const auto spec = make_daubechies(order);
    const auto x = noise(512, 100 + order);
    const auto g = ScaleGrid::linear(1, std::min(32.0, std::floor(511.0 / spec.support())), 1);
    const auto fast = cwt(x, spec, g);
    const auto slow = cwt_direct(x, spec, g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double tol = 1e-9 * row_max(slow, i);
      for (std::size_t t = 0; t < x.size(); ++t) CHECK(std::abs(fast.coefficients(i, t) - slow.coefficients(i, t)) <= tol);
    }
    CHECK(fast.valid_mask == slow.valid_mask);
  }
}

TEST_CASE("squared view is exact") {
  const auto x = noise(700, 9);
  const auto s = cwt(x, db7(), ScaleGrid::linear(1, 40, 1));
  for (std::size_t i = 0; i < s.scales(); ++i)
    for (std::size_t t = 0; t < s.length(); ++t)
      CHECK(s.squared(i, t) == s.coefficients(i, t) * s.coefficients(i, t));
}

TEST_CASE("thread count does not change a single bit") {
  const auto x = noise(2000, 77);
  const auto g = ScaleGrid::linear(1, 100, 1);
  const auto one = cwt(x, db7(), g, {1});
  for (unsigned t : {2u, 3u, 8u, 0u}) {
    const auto many = cwt(x, db7(), g, {t});
    CHECK(many.coefficients == one.coefficients);
  }
}

TEST_CASE("linearity") {
  const auto x = noise(800, 1), y = noise(800, 2);
  std::vector<double> z(800);
  for (std::size_t t = 0; t < 800; ++t) z[t] = 2.5 * x[t] - 0.75 * y[t];
  const auto g = ScaleGrid::linear(1, 50, 1);
  const auto sx = cwt(x, db7(), g), sy = cwt(y, db7(), g), sz = cwt(z, db7(), g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double tol = 1e-9 * std::max(row_max(sz, i), 1.0);
    for (std::size_t t = 0; t < 800; ++t)
      CHECK(std::abs(sz.coefficients(i, t) - (2.5 * sx.coefficients(i, t) - 0.75 * sy.coefficients(i, t))) <= tol);
  }
}

TEST_CASE("shift covariance") {
  const auto base = noise(1200, 4);
  const std::size_t shift = 37;
  std::vector<double> moved(base.size(), 0.0);
  for (std::size_t t = shift; t < base.size(); ++t) moved[t] = base[t - shift];
  const auto g = ScaleGrid::linear(1, 40, 1);
  const auto a = cwt(base, db7(), g), b = cwt(moved, db7(), g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double tol = 1e-9 * row_max(a, i);
    for (std::size_t t = shift; t < base.size(); ++t) {
      // Both columns valid and untouched by the zeroed prefix of `moved`.
      if (!a.valid_mask(i, t - shift) || !b.valid_mask(i, t)) continue;
      if (t - centering_offset(db7(), g.scales[i]) < shift) continue;
      CHECK(std::abs(b.coefficients(i, t) - a.coefficients(i, t - shift)) <= tol);
    }
  }
}

TEST_CASE("ramp response equals the discrete moments of psi_a") {
  // x(t) = t gives W(tau) = tau * M0 + M1 with Mk = sum_j (j - c)^k psi_a[j].
  const auto& spec = db7();
  const std::size_t n = 1024;
  std::vector<double> x(n);
  std::iota(x.begin(), x.end(), 0.0);
  const auto g = ScaleGrid::linear(1, 78, 1);
  const auto s = cwt(x, spec, g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double a = g.scales[i];
    const auto k = scale_wavelet(spec, a, 0.5);
    const long double c = centering_offset(spec, a);
    long double m0 = 0, m1 = 0;
    for (std::size_t j = 0; j < k.size(); ++j) {
      m0 += k[j];
      m1 += (j - c) * k[j];
    }
    for (std::size_t t = 0; t < n; ++t) {
      if (!s.valid_mask(i, t)) continue;
      const double expect = static_cast<double>(t * m0 + m1);
      CHECK(std::abs(s.coefficients(i, t) - expect) < 1e-9 * n);
    }
    // Even scales put the integer grid on the cascade grid symmetrically
    // enough that the ramp vanishes to rounding.
    if (static_cast<int>(a) % 2 == 0)
      for (std::size_t t = 0; t < n; ++t)
        if (s.valid_mask(i, t)) CHECK(std::abs(s.coefficients(i, t)) < 1e-6 * n);
  }
}

TEST_CASE("polynomials below the order vanish at even scales") {
  const std::size_t n = 1024;
  for (int order : {2, 4, 7}) {
    const auto spec = make_daubechies(order);
    const double top = std::floor(static_cast<double>(n - 1) / spec.support());
    ScaleGrid g;
    for (double a = 2; a <= std::min(top, 64.0); a += 2) g.scales.push_back(a);
    for (int d = 0; d < order; ++d) {
      std::vector<double> x(n);
      for (std::size_t t = 0; t < n; ++t) x[t] = std::pow((static_cast<double>(t) - 512.0) / 512.0, d);
      const auto s = cwt(x, spec, g);
      double worst = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t t = 0; t < n; ++t)
          if (s.valid_mask(i, t)) worst = std::max(worst, std::abs(s.coefficients(i, t)));
      CAPTURE(order);
      CAPTURE(d);
      CHECK(worst < 1e-6);
    }
  }
}

TEST_CASE("size guards") {
  const auto& spec = db7();
  try {
    cwt(std::vector<double>(500, 1.0), spec, ScaleGrid::linear(1, 64, 1));
    FAIL("expected SignalTooShort");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SignalTooShort);
    CHECK(e.detail() == 38);  // floor(499 / 13)
  }
  CHECK(kind_of([&] { cwt_direct(std::vector<double>(4097, 1.0), spec, ScaleGrid::linear(1, 2, 1)); }) ==
        ErrorKind::RefusedSize);
}

TEST_CASE("scale grid") {
  const auto g = ScaleGrid::linear(1, 128, 1);
  CHECK(g.size() == 128);
  CHECK(g.index_of(85.0) == 84);
  CHECK(kind_of([&] { g.index_of(85.5); }) == ErrorKind::UnknownScale);
  CHECK(kind_of([] { ScaleGrid::linear(0.5, 4, 1); }) == ErrorKind::ScaleTooSmall);
  CHECK(kind_of([] { ScaleGrid::linear(1, 4, 1, 2.0); }) == ErrorKind::BadConfig);
  CHECK(kind_of([] { ScaleGrid{{1.0, 3.0, 2.0}, 0.5}.validate(); }) == ErrorKind::BadConfig);
}
