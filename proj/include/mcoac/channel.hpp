#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mcoac/rng.hpp"

namespace mcoac {

using cplx = std::complex<double>;

struct Tap {
  double delay_s = 0.0;
  double mean_power = 0.0;
};

enum class FadingVariant {
  kFlatIid,           // independent CN(0,1) per (link, resource element)
  kTappedDelayLine,   // H(m) = sum_l h_l exp(-j 2 pi m df tau_l)
  kUnit,              // h = 1 everywhere; test oracle hook
};

enum class FadingGranularity {
  kPerSymbol,  // taps redrawn for every OFDM symbol
  kPerRound,   // taps held for the whole grid of a round
};

struct FadingModel {
  FadingVariant variant = FadingVariant::kFlatIid;
  std::vector<Tap> taps;
  double subcarrier_spacing_hz = 15e3;
  FadingGranularity granularity = FadingGranularity::kPerSymbol;

  static FadingModel flat_iid();
  static FadingModel unit();
  /// Extended Pedestrian A, 7 taps, renormalised to unit total power.
  static FadingModel epa(FadingGranularity granularity = FadingGranularity::kPerSymbol);

  /// Throws InvalidArgument when the tap table is not a normalised,
  /// non-decreasing power-delay profile.
  void validate() const;
};

/// EPA power-delay profile in dB as tabulated (delay ns, relative power dB).
struct EpaTapDb {
  double delay_ns;
  double power_db;
};
inline constexpr EpaTapDb kEpaProfile[] = {
    {0.0, 0.0}, {30.0, -1.0}, {70.0, -2.0}, {90.0, -3.0}, {110.0, -8.0}, {190.0, -17.2}, {410.0, -20.8}};

struct NoiseParams {
  double sigma2_es = 0.0;
  double sigma2_ed = 0.0;
};

/// Fading coefficients of a set of links. Coefficients are evaluated on
/// demand from the link's counter-based stream, so any (link, m, n) can be
/// read in any order from any thread with identical results.
class ChannelRealization {
 public:
  ChannelRealization() = default;
  /// `base` carries master seed, round and purpose; the link id becomes the
  /// stream entity.
  ChannelRealization(FadingModel model, StreamId base);

  cplx at(std::uint64_t link, std::size_t m, std::size_t n) const;

  const FadingModel& model() const noexcept { return model_; }

 private:
  FadingModel model_;
  StreamId base_;
  std::vector<double> tap_amplitudes_;
};

struct ResourceElement {
  std::size_t m = 0;
  std::size_t n = 0;

  friend bool operator==(const ResourceElement&, const ResourceElement&) = default;
};

/// Dense view of a realization: coefficients[link_index * resources.size() + r].
struct ChannelSamples {
  std::vector<std::uint64_t> links;
  std::vector<ResourceElement> resources;
  std::vector<cplx> coefficients;

  cplx operator()(std::size_t link_index, std::size_t resource_index) const {
    return coefficients[link_index * resources.size() + resource_index];
  }
};

ChannelRealization make_channel(const FadingModel& model, std::uint64_t seed, std::uint64_t round,
                                Purpose purpose);

/// Materialises the realization for the given links and resource elements.
ChannelSamples draw_channel(const FadingModel& model, std::span<const std::uint64_t> links,
                            std::span<const ResourceElement> resources, std::uint64_t seed,
                            std::uint64_t round = 0, Purpose purpose = Purpose::kChannelUl);

/// Sample `index` of a CN(0, sigma2) noise stream.
cplx noise_sample(std::uint64_t stream, std::uint64_t index, double sigma2) noexcept;

std::vector<cplx> draw_noise(double sigma2, std::size_t count, std::uint64_t seed);

}  // namespace mcoac
