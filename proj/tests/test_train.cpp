#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "mcoac/errors.hpp"
#include "mcoac/train.hpp"

using namespace mcoac;

namespace {

class VoteRecorder : public TrainObserver {
 public:
  void on_phase(std::size_t, Phase phase) override { phases.push_back(phase); }
  void on_votes(std::size_t, std::span<const SignVector> ed_signs, std::span<const SignVector>,
                std::span<const SignVector> applied_votes) override {
    signs.emplace_back(ed_signs.begin(), ed_signs.end());
    applied.emplace_back(applied_votes.begin(), applied_votes.end());
  }
  std::vector<Phase> phases;
  std::vector<std::vector<SignVector>> signs;
  std::vector<std::vector<SignVector>> applied;
};

int majority(const std::vector<int>& votes) {
  const int sum = std::accumulate(votes.begin(), votes.end(), 0);
  return sum > 0 ? 1 : -1;
}

TrainConfig genie_config(std::size_t rounds) {
  TrainConfig cfg;
  cfg.rounds = rounds;
  cfg.genie = true;
  cfg.subcarriers = 16;
  cfg.eta = 0.05;
  cfg.batch_size = 4;
  return cfg;
}

}  // namespace

TEST(Oracle, UnanimousPlus) {
  ConnectivitySets sets;
  sets.eds_of_es = {{0, 1, 2}};
  sets.ess_of_ed = {{0}, {0}, {0}};
  const std::vector<SignVector> signs(3, SignVector(4, 1));
  for (const auto& v : ideal_mv_oracle(signs, sets, StreamId{1, 0, 0, Purpose::kOracleTie})) {
    EXPECT_EQ(v, SignVector(4, 1));
  }
}

TEST(Oracle, SingleServerMajority) {
  ConnectivitySets sets;
  sets.eds_of_es = {{0, 1, 2}};
  sets.ess_of_ed = {{0}, {0}, {0}};
  const std::vector<SignVector> signs{SignVector(1, 1), SignVector(1, 1), SignVector(1, -1)};
  for (const auto& v : ideal_mv_oracle(signs, sets, StreamId{1, 0, 0, Purpose::kOracleTie})) EXPECT_EQ(v[0], 1);
}

TEST(Oracle, MatchesEnumerationOverAllSignPatterns) {
  // 5 EDs, 3 ESs, odd set sizes everywhere.
  ConnectivitySets sets;
  sets.eds_of_es = {{0, 1, 2}, {1, 3, 4}, {0, 2, 3, 4, 1}};
  sets.ess_of_ed = {{0, 1, 2}, {0}, {0, 1, 2}, {1}, {2}};
  // ED 1 listens to ES 0 only; ED 3 to ES 1; ED 4 to ES 2.
  for (int pattern = 0; pattern < 32; ++pattern) {
    std::vector<SignVector> signs;
    std::vector<int> raw;
    for (int k = 0; k < 5; ++k) {
      raw.push_back((pattern >> k) & 1 ? 1 : -1);
      signs.emplace_back(1, raw.back());
    }
    std::vector<int> es_vote;
    for (const auto& eds : sets.eds_of_es) {
      std::vector<int> v;
      for (auto k : eds) v.push_back(raw[k]);
      es_vote.push_back(majority(v));
    }
    const auto got = ideal_mv_oracle(signs, sets, StreamId{1, 0, 0, Purpose::kOracleTie});
    for (std::size_t k = 0; k < 5; ++k) {
      std::vector<int> v;
      for (auto s : sets.ess_of_ed[k]) v.push_back(es_vote[s]);
      EXPECT_EQ(got[k][0], majority(v)) << "pattern " << pattern << " ed " << k;
    }
  }
}

TEST(Train, SingleLinkGenieIsPlainSignSgd) {
  const auto data = make_synthetic(3, 4, 20, 9, 4.0);
  ConnectivitySets sets;
  sets.eds_of_es = {{0}};
  sets.ess_of_ed = {{0}};
  const auto gains = fixed_connectivity_gains(sets, 1, 1);
  const auto cfg = genie_config(6);
  std::vector<ModelState> models{init_model({Architecture::kLogistic, 4, 3, 0}, StreamId{2, 0, 0, Purpose::kInit})};
  auto local = models;
  auto local_cfg = cfg;
  local_cfg.aggregation = Aggregation::kLocalOnly;
  const std::vector<Dataset> eds{data};
  train(cfg, gains, sets, eds, data, models);
  train(local_cfg, gains, sets, eds, data, local);
  EXPECT_EQ(models[0].w, local[0].w);
}

TEST(Train, GenieMultiCellMatchesOracle) {
  const auto data = make_synthetic(4, 15, 40, 3, 4.0);
  ConnectivitySets sets;
  // ED 2 is heard by both ESs but listens to ES 0 only, keeping every set odd.
  sets.eds_of_es = {{0, 1, 2}, {2, 3, 4}};
  sets.ess_of_ed = {{0}, {0}, {0}, {1}, {1}};
  const auto gains = fixed_connectivity_gains(sets, 2, 5);
  std::vector<Dataset> eds(5, data);
  std::vector<ModelState> models(5, init_model({Architecture::kLogistic, 15, 4, 0}, StreamId{1, 0, 0, Purpose::kInit}));
  VoteRecorder rec;
  const auto log = train(genie_config(5), gains, sets, eds, data, models, &rec);
  ASSERT_EQ(rec.applied.size(), 5u);
  for (std::size_t t = 0; t < 5; ++t) {
    const auto expect = ideal_mv_oracle(rec.signs[t], sets, StreamId{1, t, 0, Purpose::kOracleTie});
    for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(rec.applied[t][k], expect[k]);
  }
  for (const auto& row : log.rows) EXPECT_EQ(row.mv_flip_fraction, 0.0);
}

TEST(Train, PhaseOrderAndRowCount) {
  const auto data = make_synthetic(2, 3, 10, 3);
  ConnectivitySets sets;
  sets.eds_of_es = {{0, 1, 2}};
  sets.ess_of_ed = {{0}, {0}, {0}};
  std::vector<Dataset> eds(3, data);
  std::vector<ModelState> models(3, init_model({Architecture::kLogistic, 3, 2, 0}, StreamId{1, 0, 0, Purpose::kInit}));
  VoteRecorder rec;
  const auto log = train(genie_config(2), fixed_connectivity_gains(sets, 1, 3), sets, eds, data, models, &rec);
  EXPECT_EQ(log.rows.size(), 6u);
  const std::vector<Phase> one_round{Phase::kGradient, Phase::kUplinkEncode, Phase::kEsDetect,
                                     Phase::kDownlinkEncode, Phase::kEdDetect, Phase::kUpdate};
  ASSERT_EQ(rec.phases.size(), 12u);
  EXPECT_TRUE(std::equal(one_round.begin(), one_round.end(), rec.phases.begin()));
  for (const auto& r : log.rows) {
    EXPECT_GE(r.acc_all, 0.0);
    EXPECT_LE(r.acc_all, 1.0);
  }
}

TEST(Train, ValidationFailsBeforeWork) {
  const auto data = make_synthetic(2, 3, 10, 3);
  ConnectivitySets sets;
  sets.eds_of_es = {{0}};
  sets.ess_of_ed = {{0}};
  std::vector<Dataset> eds(1, data);
  std::vector<ModelState> models(1, init_model({Architecture::kLogistic, 3, 2, 0}, StreamId{1, 0, 0, Purpose::kInit}));
  auto cfg = genie_config(1);
  cfg.eta = -1.0;
  EXPECT_THROW(train(cfg, fixed_connectivity_gains(sets, 1, 1), sets, eds, data, models), InvalidArgument);
  cfg = genie_config(1);
  cfg.aggregation = Aggregation::kSingleCell;
  cfg.single_cell_es = 4;
  EXPECT_THROW(train(cfg, fixed_connectivity_gains(sets, 1, 1), sets, eds, data, models), InvalidArgument);
}

TEST(Metrics, CsvHeaderAndFormat) {
  MetricsLog log;
  log.rows.push_back({0, 3, 0.5, 0.75, 0.125});
  std::ostringstream out;
  write_metrics_csv(out, log);
  EXPECT_EQ(out.str(), "round,ed_id,acc_all,acc_personalized,mv_flip_fraction\n0,3,0.500000,0.750000,0.125000\n");
  EXPECT_DOUBLE_EQ(log.final_mean(true), 0.75);
}
