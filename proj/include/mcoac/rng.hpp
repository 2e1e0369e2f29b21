#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>

namespace mcoac {

// Reproducibility contract
// ------------------------
// Every random quantity in the simulator is drawn from a stream identified by
// the tuple (master seed, round, entity, purpose). The tuple is folded into a
// 64-bit stream key with the SplitMix64 finalizer:
//
//   key = mix(mix(mix(mix(master ^ C0) ^ round) ^ entity) ^ purpose)
//
// and the n-th 64-bit word of the stream is mix(key ^ mix(n * GOLDEN + GOLDEN)).
// Because word n is a pure function of (key, n), a stream can be read at any
// offset, which is what lets the parallel kernels produce bit-identical output
// for any worker count.

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// What a stream is used for. Values are part of the reproducibility contract;
/// append only.
enum class Purpose : std::uint64_t {
  kPlacement = 1,
  kChannelUl = 2,
  kChannelDl = 3,
  kNoiseUl = 4,
  kNoiseDl = 5,
  kQpskUl = 6,
  kQpskDl = 7,
  kTieUl = 8,
  kTieDl = 9,
  kBatch = 10,
  kGradientTie = 11,
  kOracleTie = 12,
  kInit = 13,
  kPartition = 14,
  kSynthetic = 15,
  kResourcePermutation = 16,
  kMonteCarlo = 17,
  kNoise = 18,
  kChannel = 19,
  kQpsk = 20,
  kTie = 21,
};

struct StreamId {
  std::uint64_t master = 0;
  std::uint64_t round = 0;
  std::uint64_t entity = 0;
  Purpose purpose = Purpose::kMonteCarlo;
};

constexpr std::uint64_t stream_key(const StreamId& id) noexcept {
  std::uint64_t h = mix64(id.master ^ 0x6a09e667f3bcc909ULL);
  h = mix64(h ^ id.round);
  h = mix64(h ^ id.entity);
  return mix64(h ^ static_cast<std::uint64_t>(id.purpose));
}

constexpr std::uint64_t stream_word(std::uint64_t key, std::uint64_t n) noexcept {
  return mix64(key ^ mix64(n * kGolden + kGolden));
}

/// Counter-based generator. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  constexpr CounterRng() = default;
  constexpr explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0) noexcept
      : key_(key), counter_(counter) {}
  constexpr explicit CounterRng(const StreamId& id) noexcept : key_(stream_key(id)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept { return stream_word(key_, counter_++); }

  constexpr std::uint64_t key() const noexcept { return key_; }
  constexpr std::uint64_t counter() const noexcept { return counter_; }
  constexpr void seek(std::uint64_t counter) noexcept { counter_ = counter; }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

// Variate transforms. These are spelled out rather than taken from <random>
// so that the streams are identical across standard library implementations.

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(CounterRng& rng) noexcept {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform on (0, 1].
inline double uniform01_open_low(CounterRng& rng) noexcept {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

/// Exponential with the given mean. mean == 0 yields exactly 0.
inline double exponential(CounterRng& rng, double mean) noexcept {
  return -mean * std::log(uniform01_open_low(rng));
}

/// Circularly-symmetric complex Gaussian with E|z|^2 = variance (polar form, so
/// |z|^2 is exactly an exponential draw). Consumes two words.
inline std::complex<double> complex_normal(CounterRng& rng, double variance) noexcept {
  const double power = exponential(rng, variance);
  const double phase = 2.0 * std::numbers::pi * uniform01(rng);
  const double amp = std::sqrt(power);
  return {amp * std::cos(phase), amp * std::sin(phase)};
}

/// Real standard normal (Box-Muller, cosine branch). Consumes two words.
inline double standard_normal(CounterRng& rng) noexcept {
  const double r = std::sqrt(-2.0 * std::log(uniform01_open_low(rng)));
  return r * std::cos(2.0 * std::numbers::pi * uniform01(rng));
}

inline bool bernoulli(CounterRng& rng, double p) noexcept { return uniform01(rng) < p; }

/// Fair coin as +1 / -1.
inline int fair_sign(CounterRng& rng) noexcept { return (rng() >> 63) != 0 ? 1 : -1; }

/// Uniform integer in [0, n) by Lemire's multiply-shift (bias < n / 2^64).
inline std::uint64_t uniform_index(CounterRng& rng, std::uint64_t n) noexcept {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(rng()) * n) >> 64);
}

/// Binomial(n, p) by summing Bernoulli trials; n is small everywhere it is used.
inline int binomial(CounterRng& rng, int n, double p) noexcept {
  int count = 0;
  for (int i = 0; i < n; ++i) count += bernoulli(rng, p) ? 1 : 0;
  return count;
}

}  // namespace mcoac
