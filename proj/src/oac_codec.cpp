#include "mcoac/oac_codec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include <fmt/format.h>

#include "mcoac/errors.hpp"

namespace mcoac {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

cplx qpsk_point(CounterRng& rng) {
  const auto bits = rng() >> 62;
  return {(bits & 1U) != 0 ? kInvSqrt2 : -kInvSqrt2, (bits & 2U) != 0 ? kInvSqrt2 : -kInvSqrt2};
}

void check_shapes(std::span<const Transmission> transmissions, const ResourceMap& map) {
  for (std::size_t t = 0; t < transmissions.size(); ++t) {
    const GridSymbols* grid = transmissions[t].grid;
    if (grid == nullptr || grid->q != map.q() || grid->subcarriers != map.subcarriers() ||
        grid->symbols != map.symbols() || grid->slots.size() != map.slot_count()) {
      throw ShapeMismatchError(fmt::format("transmission {} does not match the {}x{} grid of q={}", t,
                                           map.subcarriers(), map.symbols(), map.q()));
    }
  }
}

ReceivedGrid empty_received(const ResourceMap& map) {
  ReceivedGrid out;
  out.slots.assign(map.slot_count(), cplx{0.0, 0.0});
  out.q = map.q();
  out.subcarriers = map.subcarriers();
  out.symbols = map.symbols();
  return out;
}

cplx receive_slot(std::size_t s, std::span<const Transmission> transmissions, const ResourceMap& map,
                  const ReceiverSide& rx) {
  const ResourceElement& re = map.slot(s);
  cplx y{0.0, 0.0};
  for (const auto& tx : transmissions) {
    const cplx x = tx.grid->slots[s];
    if (tx.gain == 0.0 || x == cplx{0.0, 0.0}) continue;
    y += std::sqrt(tx.gain) * rx.channel->at(tx.link, re.m, re.n) * x;
  }
  return y + noise_sample(rx.noise_stream, map.linear_index(s), rx.sigma2);
}

}  // namespace

SignVector::SignVector(std::size_t size, int fill) {
  if (fill != 1 && fill != -1) throw InvalidArgument("SignVector: entries must be +1 or -1");
  values_.assign(size, static_cast<std::int8_t>(fill));
}

SignVector::SignVector(std::vector<int> values) {
  values_.reserve(values.size());
  for (int v : values) {
    if (v != 1 && v != -1) throw InvalidArgument("SignVector: entries must be +1 or -1");
    values_.push_back(static_cast<std::int8_t>(v));
  }
}

void SignVector::set(std::size_t i, int value) {
  if (value != 1 && value != -1) throw InvalidArgument("SignVector: entries must be +1 or -1");
  values_.at(i) = static_cast<std::int8_t>(value);
}

ResourceMap make_resource_map(std::size_t q, std::size_t m, MappingMode mode, std::uint64_t seed) {
  if (q < 1) throw InvalidArgument("make_resource_map: q must be >= 1");
  if (m < 2) throw InvalidArgument("make_resource_map: M must be >= 2");
  ResourceMap map;
  map.q_ = q;
  map.m_ = m;
  map.n_ = (2 * q + m - 1) / m;
  map.elements_.reserve(2 * q);

  std::vector<std::size_t> order(2 * q);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (mode == MappingMode::kPermuted) {
    std::vector<std::size_t> all(m * map.n_);
    std::iota(all.begin(), all.end(), std::size_t{0});
    CounterRng rng(StreamId{seed, 0, 0, Purpose::kResourcePermutation});
    for (std::size_t i = all.size(); i > 1; --i) std::swap(all[i - 1], all[uniform_index(rng, i)]);
    std::copy_n(all.begin(), 2 * q, order.begin());
  }
  for (std::size_t r : order) map.elements_.push_back({r % m, r / m});
  return map;
}

int sign_with_tie(double value, CounterRng& coin) {
  if (value > 0.0) return 1;
  if (value < 0.0) return -1;
  return fair_sign(coin);
}

GridSymbols encode_votes(const SignVector& votes, const ResourceMap& map, double symbol_energy,
                         const StreamId& qpsk, bool unit_phase) {
  if (votes.size() != map.q()) {
    throw InvalidArgument(fmt::format("encode_votes: {} votes for q={}", votes.size(), map.q()));
  }
  if (!(symbol_energy > 0.0)) throw InvalidArgument("encode_votes: symbol energy must be > 0");
  GridSymbols grid;
  grid.symbol_energy = symbol_energy;
  grid.q = map.q();
  grid.subcarriers = map.subcarriers();
  grid.symbols = map.symbols();
  grid.slots.assign(map.slot_count(), cplx{0.0, 0.0});

  const double amplitude = std::sqrt(symbol_energy);
  const std::uint64_t key = stream_key(qpsk);
  for (std::size_t i = 0; i < votes.size(); ++i) {
    cplx p{1.0, 0.0};
    if (!unit_phase) {
      CounterRng rng(key, i);
      p = qpsk_point(rng);
    }
    grid.slots[votes[i] > 0 ? 2 * i : 2 * i + 1] = amplitude * p;
  }
  return grid;
}

ReceivedGrid superpose(std::span<const Transmission> transmissions, const ResourceMap& map,
                       const ReceiverSide& rx, int workers) {
  check_shapes(transmissions, map);
  ReceivedGrid out = empty_received(map);
  const auto slots = static_cast<std::int64_t>(map.slot_count());
#pragma omp parallel for num_threads(std::max(workers, 1)) schedule(static)
  for (std::int64_t s = 0; s < slots; ++s) {
    out.slots[static_cast<std::size_t>(s)] = receive_slot(static_cast<std::size_t>(s), transmissions, map, rx);
  }
  return out;
}

std::pair<SignVector, VoteStatistics> detect_mv(const ReceivedGrid& received, const ResourceMap& map,
                                                const StreamId& tie) {
  if (received.slots.size() != map.slot_count()) {
    throw ShapeMismatchError("detect_mv: received grid does not cover the resource map");
  }
  SignVector votes(map.q());
  VoteStatistics stats;
  stats.delta.resize(map.q());
  const std::uint64_t key = stream_key(tie);
  for (std::size_t i = 0; i < map.q(); ++i) {
    const double delta = std::norm(received.slots[2 * i]) - std::norm(received.slots[2 * i + 1]);
    stats.delta[i] = delta;
    CounterRng coin(key, i);
    votes.set(i, sign_with_tie(delta, coin));
  }
  return {std::move(votes), std::move(stats)};
}

void write_grid(std::ostream& out, std::span<const cplx> slots, const ResourceMap& map) {
  out << "m\tn\tre\tim\n";
  for (std::size_t s = 0; s < slots.size() && s < map.slot_count(); ++s) {
    if (slots[s] == cplx{0.0, 0.0}) continue;
    const auto& re = map.slot(s);
    out << fmt::format("{}\t{}\t{}\t{}\n", re.m, re.n, slots[s].real(), slots[s].imag());
  }
}

namespace reference {

ReceivedGrid superpose(std::span<const Transmission> transmissions, const ResourceMap& map,
                       const ReceiverSide& rx) {
  check_shapes(transmissions, map);
  ReceivedGrid out = empty_received(map);
  for (const auto& tx : transmissions) {
    if (tx.gain == 0.0) continue;
    const double amplitude = std::sqrt(tx.gain);
    for (std::size_t s = 0; s < map.slot_count(); ++s) {
      const cplx x = tx.grid->slots[s];
      if (x == cplx{0.0, 0.0}) continue;
      const auto& re = map.slot(s);
      out.slots[s] += amplitude * rx.channel->at(tx.link, re.m, re.n) * x;
    }
  }
  for (std::size_t s = 0; s < map.slot_count(); ++s) {
    out.slots[s] += noise_sample(rx.noise_stream, map.linear_index(s), rx.sigma2);
  }
  return out;
}

}  // namespace reference

}  // namespace mcoac
