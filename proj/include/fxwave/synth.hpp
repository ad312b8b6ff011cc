#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fxwave {

// SplitMix64 (Steele, Lea, Flood 2014). Used to expand a 64-bit seed into
// generator state and as a standalone stream.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

// xoshiro256** 1.0 (Blackman, Vigna), seeded through SplitMix64.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);
  std::uint64_t next();
  // Uniform on [0, 1) from the top 53 bits.
  double uniform();
  // Standard normal by the Marsaglia polar method; the spare variate is kept.
  double normal();

 private:
  std::uint64_t s_[4];
  bool has_spare_ = false;
  double spare_ = 0.0;
};

enum class SynthKind { GaussianNoise, Sine, LogisticMap, VolCluster };

std::string_view to_string(SynthKind k);
SynthKind parse_synth_kind(std::string_view text);

struct SynthSpec {
  SynthKind kind = SynthKind::GaussianNoise;
  std::size_t length = 2048;
  std::uint64_t seed = 1;
  // sine
  double period = 128.0;
  double phase = 0.0;  // radians
  // logistic map
  double r = 4.0;
  double x0 = 0.123;
  // vol_cluster
  double switch_probability = 0.002;
  double volatility_ratio = 5.0;

  void validate() const;
  // Comma-separated `key=value` list, e.g. "kind=sine,length=4096,period=64".
  static SynthSpec parse(std::string_view text);
  std::string to_string() const;
  std::string label() const;
};

std::vector<double> generate(const SynthSpec& spec);

}  // namespace fxwave
