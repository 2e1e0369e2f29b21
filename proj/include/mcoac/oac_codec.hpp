#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "mcoac/channel.hpp"
#include "mcoac/rng.hpp"

namespace mcoac {

/// Vector of +1/-1 votes.
class SignVector {
 public:
  SignVector() = default;
  explicit SignVector(std::size_t size, int fill = 1);
  /// Throws InvalidArgument if any entry is not +1 or -1.
  explicit SignVector(std::vector<int> values);

  std::size_t size() const noexcept { return values_.size(); }
  int operator[](std::size_t i) const { return values_[i]; }
  void set(std::size_t i, int value);

  std::span<const std::int8_t> values() const noexcept { return values_; }

  friend bool operator==(const SignVector&, const SignVector&) = default;

 private:
  std::vector<std::int8_t> values_;
};

enum class MappingMode { kLinear, kPermuted };

/// Assignment of each gradient index i to a plus and a minus resource element
/// of an M x N grid. Slot 2i is the plus element, slot 2i+1 the minus element.
class ResourceMap {
 public:
  ResourceMap() = default;

  std::size_t q() const noexcept { return q_; }
  std::size_t subcarriers() const noexcept { return m_; }
  std::size_t symbols() const noexcept { return n_; }
  std::size_t slot_count() const noexcept { return elements_.size(); }

  const ResourceElement& plus(std::size_t i) const { return elements_[2 * i]; }
  const ResourceElement& minus(std::size_t i) const { return elements_[2 * i + 1]; }
  const ResourceElement& slot(std::size_t s) const { return elements_[s]; }

  /// Row-major index n * M + m of the element in a slot.
  std::uint64_t linear_index(std::size_t s) const {
    return static_cast<std::uint64_t>(elements_[s].n) * m_ + elements_[s].m;
  }

  bool same_shape(const ResourceMap& other) const noexcept {
    return q_ == other.q_ && m_ == other.m_ && n_ == other.n_;
  }

  friend ResourceMap make_resource_map(std::size_t q, std::size_t m, MappingMode mode, std::uint64_t seed);

 private:
  std::size_t q_ = 0;
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::vector<ResourceElement> elements_;
};

/// N = ceil(2q / M). Linear mode puts element r = 2i at (r mod M, r / M) and
/// the minus slot at r + 1; permuted mode draws the 2q elements from a seeded
/// permutation of the grid.
ResourceMap make_resource_map(std::size_t q, std::size_t m, MappingMode mode = MappingMode::kLinear,
                              std::uint64_t seed = 0);

/// Transmit symbols indexed by slot; inactive slots hold 0.
struct GridSymbols {
  std::vector<cplx> slots;
  double symbol_energy = 0.0;
  std::size_t q = 0;
  std::size_t subcarriers = 0;
  std::size_t symbols = 0;
};

struct VoteStatistics {
  std::vector<double> delta;
};

/// Received symbols indexed by slot.
struct ReceivedGrid {
  std::vector<cplx> slots;
  std::size_t q = 0;
  std::size_t subcarriers = 0;
  std::size_t symbols = 0;
};

/// Vote +1 puts sqrt(E_s) * P on the plus slot of i, vote -1 on the minus
/// slot. P is a uniform QPSK point read from `qpsk` at counter i, or 1 when
/// `unit_phase` is set.
GridSymbols encode_votes(const SignVector& votes, const ResourceMap& map, double symbol_energy,
                         const StreamId& qpsk, bool unit_phase = false);

/// One transmitter as seen by a receiver.
struct Transmission {
  const GridSymbols* grid = nullptr;
  double gain = 0.0;         // large-scale power gain rho
  std::uint64_t link = 0;    // channel stream entity
};

struct ReceiverSide {
  const ChannelRealization* channel = nullptr;
  double sigma2 = 0.0;
  std::uint64_t noise_stream = 0;  // stream key; sample index is the element's linear index
};

/// y = sum_tx sqrt(rho) h x + w on every mapped element, transmitters summed in
/// the order given. Parallel over slots with `workers` threads.
ReceivedGrid superpose(std::span<const Transmission> transmissions, const ResourceMap& map,
                       const ReceiverSide& rx, int workers = 1);

/// Energy detector: delta_i = |y+|^2 - |y-|^2, vote = sign(delta) with a coin
/// from `tie` at counter i when delta == 0.
std::pair<SignVector, VoteStatistics> detect_mv(const ReceivedGrid& received, const ResourceMap& map,
                                                const StreamId& tie);

/// Sign with a fair coin at zero.
int sign_with_tie(double value, CounterRng& coin);

/// Tab-separated `m n re im` rows for nonzero slots, with a header row.
void write_grid(std::ostream& out, std::span<const cplx> slots, const ResourceMap& map);

namespace reference {

/// Single-threaded superposition; the parallel kernel must match it bit for bit.
ReceivedGrid superpose(std::span<const Transmission> transmissions, const ResourceMap& map,
                       const ReceiverSide& rx);

}  // namespace reference

}  // namespace mcoac
