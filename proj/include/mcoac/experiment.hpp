#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcoac/analysis.hpp"
#include "mcoac/config.hpp"
#include "mcoac/dataset.hpp"
#include "mcoac/model.hpp"
#include "mcoac/topology.hpp"
#include "mcoac/train.hpp"

namespace mcoac {

/// sigma^2 = 10^(-snr_db / 10).
double snr_to_variance(double snr_db) noexcept;

enum class DatasetSource { kSynthetic, kIdx };

struct TopologySettings {
  std::size_t cell_count = 7;
  double isd_m = 50.0;
  std::size_t ed_count = 12;
  Placement placement = Placement::kBoundary;
  double alpha = 4.0;
  double r_ul_m = 0.0;        // 0: cell-vertex distance isd/sqrt(3)
  double r_dl_m = 0.0;
  double threshold = 0.0;     // 0: gain at 1.5x the cell-vertex distance
};

struct ChannelSettings {
  std::string model = "flat_iid";  // flat_iid | epa | unit
  std::string granularity = "per_symbol";
  double snr_ul_db = 20.0;
  double snr_dl_db = 20.0;
  double subcarrier_spacing_hz = 15e3;
};

struct OacSettings {
  double symbol_energy = 2.0;
  MappingMode mapping = MappingMode::kLinear;
  std::size_t subcarriers = 1200;
};

struct LearningSettings {
  Architecture architecture = Architecture::kLogistic;
  std::size_t hidden = 16;
  DatasetSource source = DatasetSource::kSynthetic;
  std::size_t classes = 4;
  std::size_t dims = 8;
  std::size_t global_size = 2000;      // |G|
  std::size_t test_size = 1000;
  double separation = 3.0;
  std::string idx_train_images;
  std::string idx_train_labels;
  std::string idx_test_images;
  std::string idx_test_labels;
  PartitionMode partition = PartitionMode::kHomogeneous;
  std::size_t band_count = 5;
  std::size_t labels_per_band = 0;
  double eta = 0.01;
  std::size_t batch_size = 16;
  std::size_t rounds = 200;
  Aggregation aggregation = Aggregation::kMultiCell;
  std::size_t single_cell_es = 0;
  double init_scale = 0.01;
  bool per_ed_init = false;
  bool genie = false;
};

struct AnalysisSettings {
  std::vector<double> p_i{0.5, 0.7, 0.9, 1.0};
  std::vector<std::int64_t> k_c{3, 6};
  std::vector<std::int64_t> s_c{1, 3};
  std::vector<double> sigma2_es{0.0, 0.01, 0.1};
  std::vector<double> sigma2_ed{0.01};
  double symbol_energy = 2.0;
  std::uint64_t trials = 1000000;
  double tolerance = 1e-2;
  // Convergence-bound inputs.
  double initial_gap = 1.0;
  double l_norm1 = 1.0;
  double sigma_norm1 = 1.0;
  std::int64_t gamma = 1;
  std::int64_t rounds = 200;
  std::int64_t ed_count = 120;
};

struct ExperimentConfig {
  std::int64_t version = 1;
  std::uint64_t seed = 1;
  TopologySettings topology;
  ChannelSettings channel;
  OacSettings oac;
  LearningSettings learning;
  AnalysisSettings analysis;
};

/// Reads and validates every field; throws ConfigError with the field path.
ExperimentConfig load_experiment_config(const ConfigFile& file);

/// Full resolved configuration, keys in a fixed order.
nlohmann::ordered_json to_json(const ExperimentConfig& cfg);

struct Simulation {
  Deployment deployment;
  PathLossParams path_loss;
  LinkGains gains;
  ConnectivitySets connectivity;
  std::vector<Dataset> ed_data;
  Dataset test;
  std::vector<ModelState> models;
  TrainConfig train;
};

Deployment build_deployment(const ExperimentConfig& cfg);
PathLossParams path_loss_params(const ExperimentConfig& cfg);

/// Everything `train` needs, built deterministically from the config.
Simulation build_simulation(const ExperimentConfig& cfg, int workers = 1);

struct SimulationResult {
  MetricsLog log;
  nlohmann::ordered_json summary;
};

SimulationResult run_simulation(const ExperimentConfig& cfg, int workers = 1);

struct AnalysisRow {
  double p_i = 0.0;
  int k_c = 0;
  int s_c = 0;
  double sigma2_es = 0.0;
  double sigma2_ed = 0.0;
  double es_success = 0.0;
  McEstimate es_success_mc;
  double p_y = 0.0;
  double ed_error = 0.0;           // as printed, S+ >= 1
  McEstimate ed_error_mc;          // support-matched
  double ed_error_bound = 0.0;
  McEstimate two_hop_mc;
  double a = 0.0;
  double b = 0.0;
  double convergence_bound = 0.0;
  bool a_negative = false;
};

/// One row per (p_i, K_c, S_c, sigma2_es, sigma2_ed) grid point.
std::vector<AnalysisRow> run_analysis(const ExperimentConfig& cfg, int workers = 1);

void write_analysis_table(std::ostream& out, const std::vector<AnalysisRow>& rows);

/// Closed form vs Monte-Carlo with |diff| and a pass column; returns true when
/// every comparison is within the tolerance.
bool write_mc_table(std::ostream& out, const std::vector<AnalysisRow>& rows, double tolerance);

}  // namespace mcoac
