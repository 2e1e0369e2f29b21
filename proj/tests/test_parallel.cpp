// OpenMP kernels against their serial reference implementations.

#include <gtest/gtest.h>

#include <sstream>

#include "mcoac/analysis.hpp"
#include "mcoac/experiment.hpp"
#include "mcoac/oac_codec.hpp"

using namespace mcoac;

TEST(Parallel, SuperposeMatchesReferenceBitForBit) {
  const std::size_t q = 3000;
  const auto map = make_resource_map(q, 1200, MappingMode::kPermuted, 4);
  std::vector<GridSymbols> grids;
  std::vector<Transmission> txs;
  for (std::uint64_t k = 0; k < 9; ++k) {
    SignVector v(q);
    CounterRng rng(StreamId{1, 0, k, Purpose::kBatch});
    for (std::size_t i = 0; i < q; ++i) v.set(i, fair_sign(rng));
    grids.push_back(encode_votes(v, map, 2.0, StreamId{1, 0, k, Purpose::kQpskUl}));
  }
  for (std::uint64_t k = 0; k < 9; ++k) txs.push_back({&grids[k], 0.1 + 0.2 * static_cast<double>(k), k});
  for (const auto& model : {FadingModel::flat_iid(), FadingModel::epa()}) {
    const auto ch = make_channel(model, 3, 1, Purpose::kChannelUl);
    const ReceiverSide rx{&ch, 0.01, stream_key(StreamId{3, 1, 0, Purpose::kNoiseUl})};
    const auto serial = reference::superpose(txs, map, rx);
    for (int workers : {1, 2, 8}) EXPECT_EQ(superpose(txs, map, rx, workers).slots, serial.slots);
  }
}

TEST(Parallel, MonteCarloMatchesReference) {
  const ConnectivityParams cp{6, 3, 2.0, 0.01, 0.01};
  const std::uint64_t trials = 5 * kMcBlockSize + 123;
  const auto es_ref = reference::mc_es_success(0.8, cp, trials, 2);
  const auto hop_ref = reference::mc_two_hop_error(cp, 0.8, trials, 2);
  for (int workers : {1, 3, 8}) {
    EXPECT_EQ(mc_es_success(0.8, cp, trials, 2, workers).hits, es_ref.hits);
    EXPECT_EQ(mc_two_hop_error(cp, 0.8, trials, 2, workers).hits, hop_ref.hits);
  }
}

TEST(Parallel, SimulationIndependentOfWorkerCount) {
  ExperimentConfig cfg;
  cfg.topology.ed_count = 8;
  cfg.learning.rounds = 6;
  cfg.learning.global_size = 400;
  cfg.learning.test_size = 200;
  cfg.channel.model = "epa";
  std::string first;
  for (int workers : {1, 4, 8}) {
    const auto result = run_simulation(cfg, workers);
    std::ostringstream csv;
    write_metrics_csv(csv, result.log);
    if (first.empty()) {
      first = csv.str();
    } else {
      EXPECT_EQ(csv.str(), first) << "workers=" << workers;
    }
  }
}
