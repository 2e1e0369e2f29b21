#include "mcoac/channel.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "mcoac/errors.hpp"

namespace mcoac {

namespace {

// Stream offset of resource element (m, n); two words per complex draw.
constexpr std::uint64_t element_counter(std::size_t m, std::size_t n) noexcept {
  return ((static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint64_t>(m)) * 2;
}

}  // namespace

FadingModel FadingModel::flat_iid() { return FadingModel{}; }

FadingModel FadingModel::unit() {
  FadingModel model;
  model.variant = FadingVariant::kUnit;
  return model;
}

FadingModel FadingModel::epa(FadingGranularity granularity) {
  FadingModel model;
  model.variant = FadingVariant::kTappedDelayLine;
  model.granularity = granularity;
  double total = 0.0;
  for (const auto& tap : kEpaProfile) total += std::pow(10.0, tap.power_db / 10.0);
  for (const auto& tap : kEpaProfile) {
    model.taps.push_back({tap.delay_ns * 1e-9, std::pow(10.0, tap.power_db / 10.0) / total});
  }
  return model;
}

void FadingModel::validate() const {
  if (variant != FadingVariant::kTappedDelayLine) return;
  if (taps.empty()) throw InvalidArgument("fading model: tapped delay line needs at least one tap");
  double total = 0.0;
  for (std::size_t l = 0; l < taps.size(); ++l) {
    if (taps[l].delay_s < 0.0 || taps[l].mean_power < 0.0) {
      throw InvalidArgument("fading model: negative tap delay or power");
    }
    if (l > 0 && taps[l].delay_s < taps[l - 1].delay_s) {
      throw InvalidArgument("fading model: tap delays must be non-decreasing");
    }
    total += taps[l].mean_power;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("fading model: tap powers must sum to 1");
  if (!(subcarrier_spacing_hz > 0.0)) throw InvalidArgument("fading model: subcarrier spacing must be > 0");
}

ChannelRealization::ChannelRealization(FadingModel model, StreamId base)
    : model_(std::move(model)), base_(base) {
  model_.validate();
  for (const auto& tap : model_.taps) tap_amplitudes_.push_back(std::sqrt(tap.mean_power));
}

cplx ChannelRealization::at(std::uint64_t link, std::size_t m, std::size_t n) const {
  switch (model_.variant) {
    case FadingVariant::kUnit:
      return {1.0, 0.0};
    case FadingVariant::kFlatIid: {
      StreamId id = base_;
      id.entity = link;
      CounterRng rng(stream_key(id), element_counter(m, n));
      return complex_normal(rng, 1.0);
    }
    case FadingVariant::kTappedDelayLine: {
      StreamId id = base_;
      id.entity = link;
      const std::size_t block = model_.granularity == FadingGranularity::kPerSymbol ? n : 0;
      CounterRng rng(stream_key(id), static_cast<std::uint64_t>(block) * 2 * model_.taps.size());
      cplx h{0.0, 0.0};
      const double omega = -2.0 * std::numbers::pi * static_cast<double>(m) * model_.subcarrier_spacing_hz;
      for (std::size_t l = 0; l < model_.taps.size(); ++l) {
        const cplx tap = tap_amplitudes_[l] * complex_normal(rng, 1.0);
        const double phase = omega * model_.taps[l].delay_s;
        h += tap * cplx{std::cos(phase), std::sin(phase)};
      }
      return h;
    }
  }
  return {0.0, 0.0};
}

ChannelRealization make_channel(const FadingModel& model, std::uint64_t seed, std::uint64_t round,
                                Purpose purpose) {
  return ChannelRealization(model, StreamId{seed, round, 0, purpose});
}

ChannelSamples draw_channel(const FadingModel& model, std::span<const std::uint64_t> links,
                            std::span<const ResourceElement> resources, std::uint64_t seed,
                            std::uint64_t round, Purpose purpose) {
  const ChannelRealization realization = make_channel(model, seed, round, purpose);
  ChannelSamples samples;
  samples.links.assign(links.begin(), links.end());
  samples.resources.assign(resources.begin(), resources.end());
  samples.coefficients.reserve(links.size() * resources.size());
  for (const auto link : links) {
    for (const auto& re : resources) samples.coefficients.push_back(realization.at(link, re.m, re.n));
  }
  return samples;
}

cplx noise_sample(std::uint64_t stream, std::uint64_t index, double sigma2) noexcept {
  if (sigma2 == 0.0) return {0.0, 0.0};
  CounterRng rng(stream, index * 2);
  return complex_normal(rng, sigma2);
}

std::vector<cplx> draw_noise(double sigma2, std::size_t count, std::uint64_t seed) {
  if (sigma2 < 0.0) throw InvalidArgument("draw_noise: sigma2 must be >= 0");
  const std::uint64_t stream = stream_key(StreamId{seed, 0, 0, Purpose::kNoiseUl});
  std::vector<cplx> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = noise_sample(stream, i, sigma2);
  return out;
}

}  // namespace mcoac
