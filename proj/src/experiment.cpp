#include "mcoac/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include <fmt/format.h>

#include "mcoac/errors.hpp"
#include "mcoac/rng.hpp"

namespace mcoac {

namespace {

template <class Enum>
Enum pick(const std::string& path, const std::string& value,
          std::initializer_list<std::pair<const char*, Enum>> options) {
  std::string names;
  for (const auto& [name, e] : options) {
    if (value == name) return e;
    names += names.empty() ? name : fmt::format("|{}", name);
  }
  throw ConfigError(path, fmt::format("'{}' is not one of {}", value, names));
}

template <class Enum>
const char* name_of(Enum e, std::initializer_list<std::pair<const char*, Enum>> options) {
  for (const auto& [name, value] : options) {
    if (value == e) return name;
  }
  return "?";
}

const std::initializer_list<std::pair<const char*, Placement>> kPlacements{{"boundary", Placement::kBoundary},
                                                                          {"vertices", Placement::kVerticesOnly}};
const std::initializer_list<std::pair<const char*, MappingMode>> kMappings{{"linear", MappingMode::kLinear},
                                                                          {"permuted", MappingMode::kPermuted}};
const std::initializer_list<std::pair<const char*, Architecture>> kArchitectures{
    {"logistic", Architecture::kLogistic}, {"mlp", Architecture::kMlp}};
const std::initializer_list<std::pair<const char*, DatasetSource>> kSources{{"synthetic", DatasetSource::kSynthetic},
                                                                           {"idx", DatasetSource::kIdx}};
const std::initializer_list<std::pair<const char*, PartitionMode>> kPartitions{
    {"homogeneous", PartitionMode::kHomogeneous}, {"heterogeneous", PartitionMode::kLocationHeterogeneous}};
const std::initializer_list<std::pair<const char*, Aggregation>> kAggregations{
    {"multi_cell", Aggregation::kMultiCell}, {"single_cell", Aggregation::kSingleCell},
    {"local_only", Aggregation::kLocalOnly}};

std::size_t positive_size(const ConfigFile& f, const std::string& path, std::size_t fallback) {
  const auto v = f.get_int(path, static_cast<std::int64_t>(fallback));
  if (v < 1) throw ConfigError(path, "must be >= 1");
  return static_cast<std::size_t>(v);
}

double positive_float(const ConfigFile& f, const std::string& path, double fallback) {
  const double v = f.get_float(path, fallback);
  if (!(v > 0.0)) throw ConfigError(path, "must be > 0");
  return v;
}

double nonnegative_float(const ConfigFile& f, const std::string& path, double fallback) {
  const double v = f.get_float(path, fallback);
  if (v < 0.0) throw ConfigError(path, "must be >= 0");
  return v;
}

FadingModel fading_model(const ChannelSettings& ch) {
  const auto granularity = ch.granularity == "per_round" ? FadingGranularity::kPerRound : FadingGranularity::kPerSymbol;
  FadingModel model = ch.model == "epa"   ? FadingModel::epa(granularity)
                      : ch.model == "unit" ? FadingModel::unit()
                                           : FadingModel::flat_iid();
  model.subcarrier_spacing_hz = ch.subcarrier_spacing_hz;
  return model;
}

// |G| samples with an equal count per label, drawn after a seeded shuffle.
Dataset balanced_subset(const Dataset& data, std::size_t total, std::uint64_t seed) {
  std::vector<std::vector<std::size_t>> by_label(data.classes);
  for (std::size_t i = 0; i < data.size(); ++i) by_label[static_cast<std::size_t>(data.labels[i])].push_back(i);
  const std::size_t per_label = total / data.classes;
  Dataset out;
  out.dims = data.dims;
  out.classes = data.classes;
  for (std::size_t label = 0; label < data.classes; ++label) {
    auto& idx = by_label[label];
    if (idx.size() < per_label) {
      throw ConfigError("learning.global_size", fmt::format("label {} has only {} samples", label, idx.size()));
    }
    CounterRng rng(StreamId{seed, 1, label, Purpose::kPartition});
    for (std::size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[uniform_index(rng, i)]);
    for (std::size_t j = 0; j < per_label; ++j) out.push_back(data.sample(idx[j]), data.labels[idx[j]]);
  }
  return out;
}

}  // namespace

double snr_to_variance(double snr_db) noexcept { return std::pow(10.0, -snr_db / 10.0); }

ExperimentConfig load_experiment_config(const ConfigFile& f) {
  static const std::set<std::string> kKnown = {
      "version", "seed",
      "topology.cell_count", "topology.isd_m", "topology.ed_count", "topology.placement", "topology.alpha",
      "topology.r_ul_m", "topology.r_dl_m", "topology.threshold",
      "channel.model", "channel.granularity", "channel.snr_ul_db", "channel.snr_dl_db",
      "channel.subcarrier_spacing_hz",
      "oac.symbol_energy", "oac.mapping", "oac.subcarriers",
      "learning.architecture", "learning.hidden", "learning.dataset", "learning.classes", "learning.dims",
      "learning.global_size", "learning.test_size", "learning.separation", "learning.idx_train_images",
      "learning.idx_train_labels", "learning.idx_test_images", "learning.idx_test_labels", "learning.partition",
      "learning.band_count", "learning.labels_per_band", "learning.eta", "learning.batch_size", "learning.rounds",
      "learning.aggregation", "learning.single_cell_es", "learning.init_scale", "learning.per_ed_init",
      "learning.genie",
      "analysis.p_i", "analysis.k_c", "analysis.s_c", "analysis.sigma2_es", "analysis.sigma2_ed",
      "analysis.symbol_energy", "analysis.trials", "analysis.tolerance", "analysis.initial_gap",
      "analysis.l_norm1", "analysis.sigma_norm1", "analysis.gamma", "analysis.rounds", "analysis.ed_count"};

  if (!f.has("version")) throw ConfigError("version", "missing (mandatory)");
  f.reject_unknown(kKnown);

  ExperimentConfig cfg;
  cfg.version = f.get_int("version", 1);
  if (cfg.version != 1) throw ConfigError("version", fmt::format("unsupported version {}", cfg.version));
  cfg.seed = f.get_uint("seed", cfg.seed);

  auto& t = cfg.topology;
  t.cell_count = positive_size(f, "topology.cell_count", t.cell_count);
  t.isd_m = positive_float(f, "topology.isd_m", t.isd_m);
  t.ed_count = positive_size(f, "topology.ed_count", t.ed_count);
  t.placement = pick("topology.placement", f.get_string("topology.placement", "boundary"), kPlacements);
  t.alpha = positive_float(f, "topology.alpha", t.alpha);
  t.r_ul_m = nonnegative_float(f, "topology.r_ul_m", t.r_ul_m);
  t.r_dl_m = nonnegative_float(f, "topology.r_dl_m", t.r_dl_m);
  t.threshold = nonnegative_float(f, "topology.threshold", t.threshold);

  auto& c = cfg.channel;
  c.model = f.get_string("channel.model", c.model);
  if (c.model != "flat_iid" && c.model != "epa" && c.model != "unit") {
    throw ConfigError("channel.model", fmt::format("'{}' is not one of flat_iid|epa|unit", c.model));
  }
  c.granularity = f.get_string("channel.granularity", c.granularity);
  if (c.granularity != "per_symbol" && c.granularity != "per_round") {
    throw ConfigError("channel.granularity", "expected per_symbol|per_round");
  }
  c.snr_ul_db = f.get_float("channel.snr_ul_db", c.snr_ul_db);
  c.snr_dl_db = f.get_float("channel.snr_dl_db", c.snr_dl_db);
  c.subcarrier_spacing_hz = positive_float(f, "channel.subcarrier_spacing_hz", c.subcarrier_spacing_hz);

  auto& o = cfg.oac;
  o.symbol_energy = positive_float(f, "oac.symbol_energy", o.symbol_energy);
  o.mapping = pick("oac.mapping", f.get_string("oac.mapping", "linear"), kMappings);
  o.subcarriers = positive_size(f, "oac.subcarriers", o.subcarriers);
  if (o.subcarriers < 2) throw ConfigError("oac.subcarriers", "must be >= 2");

  auto& l = cfg.learning;
  l.architecture = pick("learning.architecture", f.get_string("learning.architecture", "logistic"), kArchitectures);
  l.hidden = positive_size(f, "learning.hidden", l.hidden);
  l.source = pick("learning.dataset", f.get_string("learning.dataset", "synthetic"), kSources);
  l.classes = positive_size(f, "learning.classes", l.classes);
  if (l.classes < 2) throw ConfigError("learning.classes", "must be >= 2");
  l.dims = positive_size(f, "learning.dims", l.dims);
  l.global_size = positive_size(f, "learning.global_size", l.global_size);
  l.test_size = positive_size(f, "learning.test_size", l.test_size);
  l.separation = positive_float(f, "learning.separation", l.separation);
  l.idx_train_images = f.get_string("learning.idx_train_images", "");
  l.idx_train_labels = f.get_string("learning.idx_train_labels", "");
  l.idx_test_images = f.get_string("learning.idx_test_images", "");
  l.idx_test_labels = f.get_string("learning.idx_test_labels", "");
  if (l.source == DatasetSource::kIdx) {
    for (const char* key : {"idx_train_images", "idx_train_labels", "idx_test_images", "idx_test_labels"}) {
      if (!f.has(fmt::format("learning.{}", key))) throw ConfigError(fmt::format("learning.{}", key), "required for idx");
    }
  }
  if (l.global_size < l.classes) throw ConfigError("learning.global_size", "must be >= classes");
  l.partition = pick("learning.partition", f.get_string("learning.partition", "homogeneous"), kPartitions);
  l.band_count = positive_size(f, "learning.band_count", l.band_count);
  l.labels_per_band = static_cast<std::size_t>(f.get_uint("learning.labels_per_band", l.labels_per_band));
  if (l.partition == PartitionMode::kLocationHeterogeneous && l.band_count > l.classes) {
    throw ConfigError("learning.band_count", "must not exceed the class count");
  }
  l.eta = positive_float(f, "learning.eta", l.eta);
  l.batch_size = positive_size(f, "learning.batch_size", l.batch_size);
  l.rounds = positive_size(f, "learning.rounds", l.rounds);
  l.aggregation = pick("learning.aggregation", f.get_string("learning.aggregation", "multi_cell"), kAggregations);
  l.single_cell_es = static_cast<std::size_t>(f.get_uint("learning.single_cell_es", l.single_cell_es));
  if (l.single_cell_es >= t.cell_count) throw ConfigError("learning.single_cell_es", "exceeds the cell count");
  l.init_scale = nonnegative_float(f, "learning.init_scale", l.init_scale);
  l.per_ed_init = f.get_bool("learning.per_ed_init", l.per_ed_init);
  l.genie = f.get_bool("learning.genie", l.genie);

  auto& a = cfg.analysis;
  a.p_i = f.get_floats("analysis.p_i", a.p_i);
  for (double p : a.p_i) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("analysis.p_i", "entries must lie in [0, 1]");
  }
  a.k_c = f.get_ints("analysis.k_c", a.k_c);
  a.s_c = f.get_ints("analysis.s_c", a.s_c);
  for (auto v : a.k_c) {
    if (v < 1) throw ConfigError("analysis.k_c", "entries must be >= 1");
  }
  for (auto v : a.s_c) {
    if (v < 1) throw ConfigError("analysis.s_c", "entries must be >= 1");
  }
  a.sigma2_es = f.get_floats("analysis.sigma2_es", a.sigma2_es);
  a.sigma2_ed = f.get_floats("analysis.sigma2_ed", a.sigma2_ed);
  for (double v : a.sigma2_es) {
    if (v < 0.0) throw ConfigError("analysis.sigma2_es", "entries must be >= 0");
  }
  for (double v : a.sigma2_ed) {
    if (v < 0.0) throw ConfigError("analysis.sigma2_ed", "entries must be >= 0");
  }
  a.symbol_energy = positive_float(f, "analysis.symbol_energy", a.symbol_energy);
  a.trials = f.get_uint("analysis.trials", a.trials);
  if (a.trials < 1) throw ConfigError("analysis.trials", "must be >= 1");
  a.tolerance = positive_float(f, "analysis.tolerance", a.tolerance);
  a.initial_gap = nonnegative_float(f, "analysis.initial_gap", a.initial_gap);
  a.l_norm1 = nonnegative_float(f, "analysis.l_norm1", a.l_norm1);
  a.sigma_norm1 = nonnegative_float(f, "analysis.sigma_norm1", a.sigma_norm1);
  a.gamma = f.get_int("analysis.gamma", a.gamma);
  a.rounds = f.get_int("analysis.rounds", a.rounds);
  a.ed_count = f.get_int("analysis.ed_count", a.ed_count);
  if (a.gamma < 1) throw ConfigError("analysis.gamma", "must be >= 1");
  if (a.rounds < 1) throw ConfigError("analysis.rounds", "must be >= 1");
  if (a.ed_count < 1) throw ConfigError("analysis.ed_count", "must be >= 1");
  return cfg;
}

nlohmann::ordered_json to_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["version"] = cfg.version;
  j["seed"] = cfg.seed;
  const auto& t = cfg.topology;
  j["topology"] = {{"cell_count", t.cell_count}, {"isd_m", t.isd_m},         {"ed_count", t.ed_count},
                   {"placement", name_of(t.placement, kPlacements)},         {"alpha", t.alpha},
                   {"r_ul_m", t.r_ul_m},         {"r_dl_m", t.r_dl_m},       {"threshold", t.threshold}};
  const auto& c = cfg.channel;
  j["channel"] = {{"model", c.model},         {"granularity", c.granularity},
                  {"snr_ul_db", c.snr_ul_db}, {"snr_dl_db", c.snr_dl_db},
                  {"subcarrier_spacing_hz", c.subcarrier_spacing_hz}};
  const auto& o = cfg.oac;
  j["oac"] = {{"symbol_energy", o.symbol_energy},
              {"mapping", name_of(o.mapping, kMappings)},
              {"subcarriers", o.subcarriers}};
  const auto& l = cfg.learning;
  j["learning"] = {{"architecture", name_of(l.architecture, kArchitectures)},
                   {"hidden", l.hidden},
                   {"dataset", name_of(l.source, kSources)},
                   {"classes", l.classes},
                   {"dims", l.dims},
                   {"global_size", l.global_size},
                   {"test_size", l.test_size},
                   {"separation", l.separation},
                   {"idx_train_images", l.idx_train_images},
                   {"idx_train_labels", l.idx_train_labels},
                   {"idx_test_images", l.idx_test_images},
                   {"idx_test_labels", l.idx_test_labels},
                   {"partition", name_of(l.partition, kPartitions)},
                   {"band_count", l.band_count},
                   {"labels_per_band", l.labels_per_band},
                   {"eta", l.eta},
                   {"batch_size", l.batch_size},
                   {"rounds", l.rounds},
                   {"aggregation", name_of(l.aggregation, kAggregations)},
                   {"single_cell_es", l.single_cell_es},
                   {"init_scale", l.init_scale},
                   {"per_ed_init", l.per_ed_init},
                   {"genie", l.genie}};
  const auto& a = cfg.analysis;
  j["analysis"] = {{"p_i", a.p_i},
                   {"k_c", a.k_c},
                   {"s_c", a.s_c},
                   {"sigma2_es", a.sigma2_es},
                   {"sigma2_ed", a.sigma2_ed},
                   {"symbol_energy", a.symbol_energy},
                   {"trials", a.trials},
                   {"tolerance", a.tolerance},
                   {"initial_gap", a.initial_gap},
                   {"l_norm1", a.l_norm1},
                   {"sigma_norm1", a.sigma_norm1},
                   {"gamma", a.gamma},
                   {"rounds", a.rounds},
                   {"ed_count", a.ed_count}};
  return j;
}

PathLossParams path_loss_params(const ExperimentConfig& cfg) {
  const auto& t = cfg.topology;
  const double vertex = cell_radius(t.isd_m);
  return {t.alpha, t.r_ul_m > 0.0 ? t.r_ul_m : vertex, t.r_dl_m > 0.0 ? t.r_dl_m : vertex};
}

Deployment build_deployment(const ExperimentConfig& cfg) {
  const auto& t = cfg.topology;
  return place_cell_edge_eds(build_hex_grid(t.cell_count, t.isd_m), t.ed_count, cfg.seed, t.placement);
}

Simulation build_simulation(const ExperimentConfig& cfg, int workers) {
  Simulation sim;
  sim.deployment = build_deployment(cfg);
  sim.path_loss = path_loss_params(cfg);
  sim.gains = compute_link_gains(sim.deployment, sim.path_loss);
  const double threshold = cfg.topology.threshold > 0.0
                               ? cfg.topology.threshold
                               : default_connectivity_threshold(cfg.topology.isd_m, sim.path_loss);
  sim.connectivity = connectivity_sets(sim.gains, threshold);

  const auto& l = cfg.learning;
  Dataset global;
  if (l.source == DatasetSource::kSynthetic) {
    const std::size_t per_class = l.global_size / l.classes;
    global = make_synthetic(l.classes, l.dims, per_class, mix64(cfg.seed ^ 0x5eed0001ULL), l.separation);
    sim.test = make_synthetic(l.classes, l.dims, std::max<std::size_t>(1, l.test_size / l.classes),
                              mix64(cfg.seed ^ 0x5eed0002ULL), l.separation);
  } else {
    global = balanced_subset(load_idx(l.idx_train_images, l.idx_train_labels, l.classes), l.global_size, cfg.seed);
    sim.test = load_idx(l.idx_test_images, l.idx_test_labels, l.classes);
  }
  sim.ed_data = partition(global, sim.deployment, PartitionSpec{l.partition, l.band_count, l.labels_per_band}, cfg.seed);

  const ModelSpec spec{l.architecture, global.dims, l.classes, l.hidden};
  for (std::size_t k = 0; k < sim.deployment.ed_count(); ++k) {
    const std::uint64_t entity = l.per_ed_init ? k : 0;
    sim.models.push_back(init_model(spec, StreamId{cfg.seed, 0, entity, Purpose::kInit}, l.init_scale));
  }

  auto& tc = sim.train;
  tc.eta = l.eta;
  tc.batch_size = l.batch_size;
  tc.rounds = l.rounds;
  tc.seed = cfg.seed;
  tc.symbol_energy = cfg.oac.symbol_energy;
  tc.noise = {snr_to_variance(cfg.channel.snr_ul_db), snr_to_variance(cfg.channel.snr_dl_db)};
  tc.fading = fading_model(cfg.channel);
  tc.mapping = cfg.oac.mapping;
  tc.subcarriers = cfg.oac.subcarriers;
  tc.aggregation = l.aggregation;
  tc.single_cell_es = l.single_cell_es;
  tc.genie = l.genie;
  tc.workers = workers;
  if (l.genie) {
    sim.gains = fixed_connectivity_gains(sim.connectivity, sim.deployment.es_count(), sim.deployment.ed_count());
  }
  return sim;
}

SimulationResult run_simulation(const ExperimentConfig& cfg, int workers) {
  const auto start = std::chrono::steady_clock::now();
  Simulation sim = build_simulation(cfg, workers);
  SimulationResult result;
  result.log = train(sim.train, sim.gains, sim.connectivity, sim.ed_data, sim.test, sim.models);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  auto& s = result.summary;
  s["config"] = to_json(cfg);
  s["parameter_count"] = sim.models.front().w.size();
  s["resource_symbols"] = make_resource_map(sim.models.front().w.size(), cfg.oac.subcarriers).symbols();
  s["k_c"] = sim.connectivity.k_c;
  s["s_c"] = sim.connectivity.s_c;
  s["connectivity_threshold"] = sim.connectivity.threshold;
  s["warnings"] = sim.connectivity.warnings;
  s["final"] = {{"acc_all_mean", result.log.final_mean(false)},
                {"acc_all_min", result.log.final_min(false)},
                {"acc_all_max", result.log.final_max(false)},
                {"acc_personalized_mean", result.log.final_mean(true)},
                {"acc_personalized_min", result.log.final_min(true)},
                {"acc_personalized_max", result.log.final_max(true)}};
  s["wall_time_s"] = wall;
  return result;
}

std::vector<AnalysisRow> run_analysis(const ExperimentConfig& cfg, int workers) {
  const auto& a = cfg.analysis;
  std::vector<AnalysisRow> rows;
  std::uint64_t point = 0;
  for (double p_i : a.p_i) {
    for (auto k_c : a.k_c) {
      for (auto s_c : a.s_c) {
        for (double s2es : a.sigma2_es) {
          for (double s2ed : a.sigma2_ed) {
            const ConnectivityParams cp{static_cast<int>(k_c), static_cast<int>(s_c), a.symbol_energy, s2es, s2ed};
            const std::uint64_t seed = mix64(cfg.seed + point++);
            AnalysisRow r;
            r.p_i = p_i;
            r.k_c = cp.k_c;
            r.s_c = cp.s_c;
            r.sigma2_es = s2es;
            r.sigma2_ed = s2ed;
            r.es_success = es_success_prob(p_i, cp);
            r.es_success_mc = mc_es_success(p_i, cp, a.trials, seed, workers);
            r.p_y = r.es_success;
            r.ed_error = ed_error_prob_sum(r.p_y, cp);
            r.ed_error_mc = mc_ed_error(r.p_y, cp, a.trials, seed, Support::kAsPrinted, workers);
            const double snr = p_i < 1.0 ? std::numbers::sqrt2 / (3.0 * (1.0 - p_i))
                                         : std::numeric_limits<double>::infinity();
            r.ed_error_bound = ed_error_prob_bound(cp, snr);
            r.two_hop_mc = mc_two_hop_error(cp, p_i, a.trials, seed, workers);
            const BoundResult bound = convergence_bound(
                BoundInputs{a.initial_gap, a.l_norm1, a.sigma_norm1, static_cast<int>(a.gamma),
                            static_cast<int>(a.rounds), static_cast<int>(a.ed_count)},
                cp);
            r.a = bound.a;
            r.b = bound.b;
            r.convergence_bound = bound.value;
            r.a_negative = bound.a < 0.0;
            rows.push_back(r);
          }
        }
      }
    }
  }
  return rows;
}

void write_analysis_table(std::ostream& out, const std::vector<AnalysisRow>& rows) {
  out << "p_i\tk_c\ts_c\tsigma2_es\tsigma2_ed\tes_success\tes_success_mc\tes_success_se\t"
         "ed_error\ted_error_mc\ted_error_se\ted_error_bound\ttwo_hop_mc\ttwo_hop_se\tA\tB\t"
         "convergence_bound\tA_negative\n";
  for (const auto& r : rows) {
    out << fmt::format("{}\t{}\t{}\t{}\t{}\t{:.9g}\t{:.9g}\t{:.3g}\t{:.9g}\t{:.9g}\t{:.3g}\t{:.9g}\t{:.9g}\t{:.3g}\t"
                       "{:.12g}\t{:.12g}\t{:.12g}\t{}\n",
                       r.p_i, r.k_c, r.s_c, r.sigma2_es, r.sigma2_ed, r.es_success, r.es_success_mc.mean,
                       r.es_success_mc.std_error, r.ed_error, r.ed_error_mc.mean, r.ed_error_mc.std_error,
                       r.ed_error_bound, r.two_hop_mc.mean, r.two_hop_mc.std_error, r.a, r.b, r.convergence_bound,
                       r.a_negative ? 1 : 0);
  }
}

bool write_mc_table(std::ostream& out, const std::vector<AnalysisRow>& rows, double tolerance) {
  out << "p_i\tk_c\ts_c\tsigma2_es\tsigma2_ed\tquantity\tclosed_form\tmc\tmc_se\tabs_diff\tpass\n";
  bool all = true;
  for (const auto& r : rows) {
    const struct {
      const char* name;
      double closed;
      const McEstimate& mc;
    } checks[] = {{"es_success", r.es_success, r.es_success_mc},
                  {"ed_error", r.ed_error, r.ed_error_mc},
                  {"two_hop_error", r.ed_error_bound, r.two_hop_mc}};
    for (const auto& c : checks) {
      const double diff = std::abs(c.closed - c.mc.mean);
      const bool pass = diff < tolerance;
      all = all && pass;
      out << fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{:.9g}\t{:.9g}\t{:.3g}\t{:.3g}\t{}\n", r.p_i, r.k_c, r.s_c,
                         r.sigma2_es, r.sigma2_ed, c.name, c.closed, c.mc.mean, c.mc.std_error, diff,
                         pass ? "pass" : "FAIL");
    }
  }
  return all;
}

}  // namespace mcoac
