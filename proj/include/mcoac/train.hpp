#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mcoac/channel.hpp"
#include "mcoac/dataset.hpp"
#include "mcoac/model.hpp"
#include "mcoac/oac_codec.hpp"
#include "mcoac/topology.hpp"

namespace mcoac {

enum class Aggregation {
  kMultiCell,   // every ES aggregates, every ED combines all ESs
  kSingleCell,  // one ES serves every ED
  kLocalOnly,   // each ED steps on the sign of its own gradient
};

struct TrainConfig {
  double eta = 0.01;
  std::size_t batch_size = 16;
  std::size_t rounds = 200;
  std::uint64_t seed = 1;
  double symbol_energy = 2.0;
  NoiseParams noise{0.01, 0.01};
  FadingModel fading = FadingModel::flat_iid();
  MappingMode mapping = MappingMode::kLinear;
  std::size_t subcarriers = 1200;
  Aggregation aggregation = Aggregation::kMultiCell;
  std::size_t single_cell_es = 0;
  /// Unit channels, unit QPSK phases and zero noise.
  bool genie = false;
  int workers = 1;

  void validate() const;
};

/// Steps of one round, in protocol order.
enum class Phase {
  kGradient,
  kUplinkEncode,
  kEsDetect,
  kDownlinkEncode,
  kEdDetect,
  kUpdate,
};

/// Optional hooks into the training loop, called from the driving thread.
class TrainObserver {
 public:
  virtual ~TrainObserver() = default;
  virtual void on_phase(std::size_t /*round*/, Phase /*phase*/) {}
  /// Local gradient signs, ES votes (empty unless over the air) and the votes
  /// each ED applied in this round.
  virtual void on_votes(std::size_t /*round*/, std::span<const SignVector> /*ed_signs*/,
                        std::span<const SignVector> /*es_votes*/, std::span<const SignVector> /*applied*/) {}
};

struct RoundRecord {
  std::size_t round = 0;
  std::size_t ed = 0;
  double acc_all = 0.0;
  double acc_personalized = 0.0;
  double mv_flip_fraction = 0.0;
};

struct MetricsLog {
  std::vector<RoundRecord> rows;

  /// Final-round statistics over EDs.
  double final_mean(bool personalized) const;
  double final_min(bool personalized) const;
  double final_max(bool personalized) const;
};

/// Error-free two-hop vote over the connectivity sets: ES votes
/// sign(sum over K_s), then ED votes sign(sum over S_k); zero sums take a coin
/// from `tie` (entity s for ESs, 2^32 + k for EDs).
std::vector<SignVector> ideal_mv_oracle(std::span<const SignVector> ed_signs, const ConnectivitySets& sets,
                                        const StreamId& tie);

/// Runs the protocol for cfg.rounds rounds, updating `models` in place.
MetricsLog train(const TrainConfig& cfg, const LinkGains& gains, const ConnectivitySets& sets,
                 std::span<const Dataset> ed_data, const Dataset& test, std::vector<ModelState>& models,
                 TrainObserver* observer = nullptr);

/// `round,ed_id,acc_all,acc_personalized,mv_flip_fraction` with a header row.
void write_metrics_csv(std::ostream& out, const MetricsLog& log);

}  // namespace mcoac
