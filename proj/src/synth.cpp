#include "fxwave/synth.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "fxwave/error.hpp"
#include "fxwave/textio.hpp"

namespace fxwave {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {
constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

Xoshiro256::Xoshiro256(std::uint64_t seed) {
  SplitMix64 sm(seed);
  for (auto& w : s_) w = sm.next();
}

std::uint64_t Xoshiro256::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Xoshiro256::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

std::string_view to_string(SynthKind k) {
  switch (k) {
    case SynthKind::GaussianNoise: return "gaussian_noise";
    case SynthKind::Sine: return "sine";
    case SynthKind::LogisticMap: return "logistic_map";
    case SynthKind::VolCluster: return "vol_cluster";
  }
  return "unknown";
}

SynthKind parse_synth_kind(std::string_view text) {
  for (auto k : {SynthKind::GaussianNoise, SynthKind::Sine, SynthKind::LogisticMap, SynthKind::VolCluster})
    if (to_string(k) == text) return k;
  throw Error(ErrorKind::BadConfig, "unknown synthetic kind '" + std::string(text) + "'");
}

void SynthSpec::validate() const {
  if (length < 64) throw Error(ErrorKind::BadConfig, "synthetic length must be >= 64");
  switch (kind) {
    case SynthKind::Sine:
      if (!(period > 0.0) || !std::isfinite(phase)) throw Error(ErrorKind::BadConfig, "sine needs period > 0");
      break;
    case SynthKind::LogisticMap:
      if (!(x0 > 0.0 && x0 < 1.0)) throw Error(ErrorKind::BadConfig, "logistic x0 must be in (0, 1)");
      if (!(r > 0.0 && r <= 4.0)) throw Error(ErrorKind::BadConfig, "logistic r must be in (0, 4]");
      break;
    case SynthKind::VolCluster:
      if (!(switch_probability > 0.0 && switch_probability < 1.0))
        throw Error(ErrorKind::BadConfig, "switch probability must be in (0, 1)");
      if (!(volatility_ratio >= 1.0)) throw Error(ErrorKind::BadConfig, "volatility ratio must be >= 1");
      break;
    case SynthKind::GaussianNoise:
      break;
  }
}

SynthSpec SynthSpec::parse(std::string_view text) {
  SynthSpec spec;
  for (auto [key, value] : split_key_values(text, ',')) {
    if (key == "kind") spec.kind = parse_synth_kind(value);
    else if (key == "length") spec.length = parse_integer<std::size_t>(value, key);
    else if (key == "seed") spec.seed = parse_integer<std::uint64_t>(value, key);
    else if (key == "period") spec.period = parse_real(value, key);
    else if (key == "phase") spec.phase = parse_real(value, key);
    else if (key == "r") spec.r = parse_real(value, key);
    else if (key == "x0") spec.x0 = parse_real(value, key);
    else if (key == "switch_probability") spec.switch_probability = parse_real(value, key);
    else if (key == "volatility_ratio") spec.volatility_ratio = parse_real(value, key);
    else throw Error(ErrorKind::BadConfig, "unknown synthetic parameter '" + std::string(key) + "'");
  }
  spec.validate();
  return spec;
}

std::string SynthSpec::to_string() const {
  std::string out = "kind=" + std::string(fxwave::to_string(kind)) + ",length=" + std::to_string(length) +
                    ",seed=" + std::to_string(seed);
  switch (kind) {
    case SynthKind::Sine:
      out += ",period=" + format_real(period) + ",phase=" + format_real(phase);
      break;
    case SynthKind::LogisticMap:
      out += ",r=" + format_real(r) + ",x0=" + format_real(x0);
      break;
    case SynthKind::VolCluster:
      out += ",switch_probability=" + format_real(switch_probability) +
             ",volatility_ratio=" + format_real(volatility_ratio);
      break;
    case SynthKind::GaussianNoise:
      break;
  }
  return out;
}

std::string SynthSpec::label() const {
  return std::string(fxwave::to_string(kind)) + "-" + std::to_string(seed);
}

std::vector<double> generate(const SynthSpec& spec) {
  spec.validate();
  std::vector<double> out(spec.length);
  switch (spec.kind) {
    case SynthKind::GaussianNoise: {
      Xoshiro256 rng(spec.seed);
      for (double& v : out) v = rng.normal();
      break;
    }
    case SynthKind::Sine: {
      const double w = 2.0 * std::numbers::pi / spec.period;
      // fmod is exact, so integer periods repeat bit-for-bit.
      for (std::size_t t = 0; t < out.size(); ++t)
        out[t] = std::sin(w * std::fmod(static_cast<double>(t), spec.period) + spec.phase);
      break;
    }
    case SynthKind::LogisticMap: {
      double x = spec.x0;
      for (double& v : out) {
        v = x;
        x = spec.r * x * (1.0 - x);
      }
      break;
    }
    case SynthKind::VolCluster: {
      // Two-state Markov regime (low = 1, high = ratio) scaling Gaussian
      // innovations; regimes switch with the given probability per step.
      Xoshiro256 rng(spec.seed);
      bool high = rng.uniform() < 0.5;
      for (double& v : out) {
        if (rng.uniform() < spec.switch_probability) high = !high;
        v = (high ? spec.volatility_ratio : 1.0) * rng.normal();
      }
      break;
    }
  }
  return out;
}

}  // namespace fxwave
