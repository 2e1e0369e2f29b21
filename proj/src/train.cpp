#include "mcoac/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include <fmt/format.h>

#include "mcoac/errors.hpp"

namespace mcoac {

namespace {

constexpr std::uint64_t kOracleEdEntityBase = std::uint64_t{1} << 32;

std::vector<std::size_t> sample_batch(std::size_t available, std::size_t batch_size, CounterRng& rng) {
  std::vector<std::size_t> pool(available);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  const std::size_t take = std::min(available, batch_size);
  for (std::size_t i = 0; i < take; ++i) {
    std::swap(pool[i], pool[i + uniform_index(rng, available - i)]);
  }
  pool.resize(take);
  return pool;
}

ConnectivitySets restrict_to(const ConnectivitySets& sets, std::span<const std::size_t> active_es) {
  ConnectivitySets out = sets;
  std::vector<bool> active(sets.eds_of_es.size(), false);
  for (std::size_t s : active_es) active[s] = true;
  for (std::size_t s = 0; s < out.eds_of_es.size(); ++s) {
    if (!active[s]) out.eds_of_es[s].clear();
  }
  for (auto& ess : out.ess_of_ed) {
    std::erase_if(ess, [&](std::size_t s) { return !active[s]; });
  }
  return out;
}

double final_stat(const MetricsLog& log, bool personalized, int which) {
  if (log.rows.empty()) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t last = log.rows.back().round;
  double sum = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  std::size_t n = 0;
  for (const auto& row : log.rows) {
    if (row.round != last) continue;
    const double v = personalized ? row.acc_personalized : row.acc_all;
    sum += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    ++n;
  }
  if (which == 0) return sum / static_cast<double>(n);
  return which < 0 ? lo : hi;
}

}  // namespace

void TrainConfig::validate() const {
  if (!(eta > 0.0)) throw InvalidArgument("train: eta must be > 0");
  if (batch_size < 1) throw InvalidArgument("train: batch size must be >= 1");
  if (rounds < 1) throw InvalidArgument("train: rounds must be >= 1");
  if (!(symbol_energy > 0.0)) throw InvalidArgument("train: symbol energy must be > 0");
  if (noise.sigma2_es < 0.0 || noise.sigma2_ed < 0.0) throw InvalidArgument("train: noise variances must be >= 0");
  if (subcarriers < 2) throw InvalidArgument("train: need at least 2 subcarriers");
  if (workers < 1) throw InvalidArgument("train: workers must be >= 1");
  fading.validate();
}

double MetricsLog::final_mean(bool personalized) const { return final_stat(*this, personalized, 0); }
double MetricsLog::final_min(bool personalized) const { return final_stat(*this, personalized, -1); }
double MetricsLog::final_max(bool personalized) const { return final_stat(*this, personalized, 1); }

std::vector<SignVector> ideal_mv_oracle(std::span<const SignVector> ed_signs, const ConnectivitySets& sets,
                                        const StreamId& tie) {
  if (ed_signs.size() != sets.ess_of_ed.size()) {
    throw InvalidArgument("ideal_mv_oracle: one sign vector per ED required");
  }
  const std::size_t q = ed_signs.empty() ? 0 : ed_signs.front().size();
  std::vector<SignVector> es_votes;
  es_votes.reserve(sets.eds_of_es.size());
  for (std::size_t s = 0; s < sets.eds_of_es.size(); ++s) {
    StreamId id = tie;
    id.entity = s;
    const std::uint64_t key = stream_key(id);
    SignVector votes(q);
    for (std::size_t i = 0; i < q; ++i) {
      long sum = 0;
      for (std::size_t k : sets.eds_of_es[s]) sum += ed_signs[k][i];
      CounterRng coin(key, i);
      votes.set(i, sign_with_tie(static_cast<double>(sum), coin));
    }
    es_votes.push_back(std::move(votes));
  }
  std::vector<SignVector> out;
  out.reserve(ed_signs.size());
  for (std::size_t k = 0; k < ed_signs.size(); ++k) {
    StreamId id = tie;
    id.entity = kOracleEdEntityBase + k;
    const std::uint64_t key = stream_key(id);
    SignVector votes(q);
    for (std::size_t i = 0; i < q; ++i) {
      long sum = 0;
      for (std::size_t s : sets.ess_of_ed[k]) sum += es_votes[s][i];
      CounterRng coin(key, i);
      votes.set(i, sign_with_tie(static_cast<double>(sum), coin));
    }
    out.push_back(std::move(votes));
  }
  return out;
}

MetricsLog train(const TrainConfig& cfg, const LinkGains& gains, const ConnectivitySets& sets,
                 std::span<const Dataset> ed_data, const Dataset& test, std::vector<ModelState>& models,
                 TrainObserver* observer) {
  cfg.validate();
  const std::size_t ed_count = ed_data.size();
  const std::size_t es_count = gains.rho_ul.es_count();
  if (ed_count == 0) throw InvalidArgument("train: no EDs");
  if (models.size() != ed_count) throw InvalidArgument("train: one model per ED required");
  if (gains.rho_ul.ed_count() != ed_count || gains.rho_dl.ed_count() != ed_count ||
      gains.rho_dl.es_count() != es_count) {
    throw InvalidArgument("train: gain matrices do not match the ED count");
  }
  if (sets.eds_of_es.size() != es_count || sets.ess_of_ed.size() != ed_count) {
    throw InvalidArgument("train: connectivity sets do not match the deployment");
  }
  const std::size_t q = models.front().w.size();
  for (std::size_t k = 0; k < ed_count; ++k) {
    if (models[k].w.size() != q) throw InvalidArgument("train: models differ in parameter count");
    if (ed_data[k].empty()) throw InvalidArgument(fmt::format("train: ED {} has no data", k));
    if (ed_data[k].dims != models[k].spec.inputs) throw InvalidArgument("train: dataset/model width mismatch");
  }
  if (test.empty()) throw InvalidArgument("train: empty test set");

  std::vector<std::size_t> active_es;
  if (cfg.aggregation == Aggregation::kSingleCell) {
    if (cfg.single_cell_es >= es_count) throw InvalidArgument("train: single-cell ES index out of range");
    active_es.push_back(cfg.single_cell_es);
  } else if (cfg.aggregation == Aggregation::kMultiCell) {
    active_es.resize(es_count);
    std::iota(active_es.begin(), active_es.end(), std::size_t{0});
  }
  const ConnectivitySets active_sets = restrict_to(sets, active_es);

  std::vector<std::vector<int>> personal_labels(ed_count);
  const auto test_labels = test.distinct_labels();
  for (std::size_t k = 0; k < ed_count; ++k) {
    personal_labels[k] = ed_data[k].distinct_labels();
    const bool covered = std::any_of(personal_labels[k].begin(), personal_labels[k].end(), [&](int label) {
      return std::binary_search(test_labels.begin(), test_labels.end(), label);
    });
    if (!covered) throw EmptyEvaluationError(fmt::format("train: test set has none of ED {}'s labels", k));
  }

  const ResourceMap map = make_resource_map(q, cfg.subcarriers, cfg.mapping, cfg.seed);
  const FadingModel fading = cfg.genie ? FadingModel::unit() : cfg.fading;
  const double sigma2_es = cfg.genie ? 0.0 : cfg.noise.sigma2_es;
  const double sigma2_ed = cfg.genie ? 0.0 : cfg.noise.sigma2_ed;
  const int workers = cfg.workers;
  const auto ed_loop = static_cast<std::int64_t>(ed_count);
  const auto es_loop = static_cast<std::int64_t>(active_es.size());
  auto notify = [&](std::size_t round, Phase phase) {
    if (observer != nullptr) observer->on_phase(round, phase);
  };

  MetricsLog log;
  log.rows.reserve(cfg.rounds * ed_count);

  for (std::size_t t = 0; t < cfg.rounds; ++t) {
    std::vector<SignVector> signs(ed_count);
#pragma omp parallel for num_threads(workers) schedule(static)
    for (std::int64_t kk = 0; kk < ed_loop; ++kk) {
      const auto k = static_cast<std::size_t>(kk);
      CounterRng batch_rng(StreamId{cfg.seed, t, k, Purpose::kBatch});
      const auto batch = sample_batch(ed_data[k].size(), cfg.batch_size, batch_rng);
      const auto grad = stochastic_gradient(models[k], ed_data[k], batch);
      const std::uint64_t tie_key = stream_key(StreamId{cfg.seed, t, k, Purpose::kGradientTie});
      SignVector s(q);
      for (std::size_t i = 0; i < q; ++i) {
        CounterRng coin(tie_key, i);
        s.set(i, sign_with_tie(grad[i], coin));
      }
      signs[k] = std::move(s);
    }
    notify(t, Phase::kGradient);

    std::vector<SignVector> es_votes(active_es.size());
    std::vector<SignVector> applied(ed_count);
    if (cfg.aggregation == Aggregation::kLocalOnly) {
      applied = signs;
    } else {
      std::vector<GridSymbols> ul_grids(ed_count);
#pragma omp parallel for num_threads(workers) schedule(static)
      for (std::int64_t kk = 0; kk < ed_loop; ++kk) {
        const auto k = static_cast<std::size_t>(kk);
        ul_grids[k] =
            encode_votes(signs[k], map, cfg.symbol_energy, StreamId{cfg.seed, t, k, Purpose::kQpskUl}, cfg.genie);
      }
      notify(t, Phase::kUplinkEncode);

      const ChannelRealization ul_channel = make_channel(fading, cfg.seed, t, Purpose::kChannelUl);
#pragma omp parallel for num_threads(workers) schedule(static)
      for (std::int64_t aa = 0; aa < es_loop; ++aa) {
        const auto a = static_cast<std::size_t>(aa);
        const std::size_t s = active_es[a];
        std::vector<Transmission> txs;
        txs.reserve(ed_count);
        for (std::size_t k = 0; k < ed_count; ++k) txs.push_back({&ul_grids[k], gains.rho_ul(s, k), s * ed_count + k});
        const ReceiverSide rx{&ul_channel, sigma2_es, stream_key(StreamId{cfg.seed, t, s, Purpose::kNoiseUl})};
        const auto received = superpose(txs, map, rx, 1);
        es_votes[a] = detect_mv(received, map, StreamId{cfg.seed, t, s, Purpose::kTieUl}).first;
      }
      notify(t, Phase::kEsDetect);

      std::vector<GridSymbols> dl_grids(active_es.size());
#pragma omp parallel for num_threads(workers) schedule(static)
      for (std::int64_t aa = 0; aa < es_loop; ++aa) {
        const auto a = static_cast<std::size_t>(aa);
        dl_grids[a] = encode_votes(es_votes[a], map, cfg.symbol_energy,
                                   StreamId{cfg.seed, t, active_es[a], Purpose::kQpskDl}, cfg.genie);
      }
      notify(t, Phase::kDownlinkEncode);

      const ChannelRealization dl_channel = make_channel(fading, cfg.seed, t, Purpose::kChannelDl);
#pragma omp parallel for num_threads(workers) schedule(static)
      for (std::int64_t kk = 0; kk < ed_loop; ++kk) {
        const auto k = static_cast<std::size_t>(kk);
        std::vector<Transmission> txs;
        txs.reserve(active_es.size());
        for (std::size_t a = 0; a < active_es.size(); ++a) {
          const std::size_t s = active_es[a];
          txs.push_back({&dl_grids[a], gains.rho_dl(s, k), s * ed_count + k});
        }
        const ReceiverSide rx{&dl_channel, sigma2_ed, stream_key(StreamId{cfg.seed, t, k, Purpose::kNoiseDl})};
        const auto received = superpose(txs, map, rx, 1);
        applied[k] = detect_mv(received, map, StreamId{cfg.seed, t, k, Purpose::kTieDl}).first;
      }
      notify(t, Phase::kEdDetect);
    }

    const auto reference = cfg.aggregation == Aggregation::kLocalOnly
                               ? signs
                               : ideal_mv_oracle(signs, active_sets, StreamId{cfg.seed, t, 0, Purpose::kOracleTie});
    if (observer != nullptr) observer->on_votes(t, signs, es_votes, applied);

    std::vector<RoundRecord> records(ed_count);
#pragma omp parallel for num_threads(workers) schedule(static)
    for (std::int64_t kk = 0; kk < ed_loop; ++kk) {
      const auto k = static_cast<std::size_t>(kk);
      models[k] = apply_update(std::move(models[k]), cfg.eta, applied[k]);
      std::size_t flips = 0;
      for (std::size_t i = 0; i < q; ++i) flips += applied[k][i] != reference[k][i] ? 1 : 0;
      records[k] = RoundRecord{t, k, evaluate(models[k], test),
                               evaluate(models[k], test, personal_labels[k]),
                               static_cast<double>(flips) / static_cast<double>(q)};
    }
    notify(t, Phase::kUpdate);
    log.rows.insert(log.rows.end(), records.begin(), records.end());
  }
  return log;
}

void write_metrics_csv(std::ostream& out, const MetricsLog& log) {
  out << "round,ed_id,acc_all,acc_personalized,mv_flip_fraction\n";
  for (const auto& r : log.rows) {
    out << fmt::format("{},{},{:.6f},{:.6f},{:.6f}\n", r.round, r.ed, r.acc_all, r.acc_personalized,
                       r.mv_flip_fraction);
  }
}

}  // namespace mcoac
