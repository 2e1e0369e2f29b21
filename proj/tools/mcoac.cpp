// Command-line driver: simulate | analyze | mc | topology.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "mcoac/errors.hpp"
#include "mcoac/experiment.hpp"

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config;
  std::string out = ".";
  int workers = 1;
  std::uint64_t seed = 0;
  bool seed_given = false;
};

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw mcoac::Error(fmt::format("cannot write '{}'", path.string()));
  return out;
}

mcoac::ExperimentConfig load(const Options& opt) {
  auto cfg = mcoac::load_experiment_config(mcoac::ConfigFile::load(opt.config));
  if (opt.seed_given) cfg.seed = opt.seed;
  fs::create_directories(opt.out);
  return cfg;
}

int simulate(const Options& opt) {
  const auto cfg = load(opt);
  const auto result = mcoac::run_simulation(cfg, opt.workers);
  auto csv = open_output(fs::path(opt.out) / "metrics.csv");
  mcoac::write_metrics_csv(csv, result.log);
  auto json = open_output(fs::path(opt.out) / "summary.json");
  json << result.summary.dump(2) << '\n';
  std::cout << fmt::format("final acc_all mean {:.4f}  acc_personalized mean {:.4f}\n",
                           result.log.final_mean(false), result.log.final_mean(true));
  return 0;
}

int analyze(const Options& opt) {
  const auto cfg = load(opt);
  auto out = open_output(fs::path(opt.out) / "analysis.tsv");
  mcoac::write_analysis_table(out, mcoac::run_analysis(cfg, opt.workers));
  return 0;
}

int monte_carlo(const Options& opt) {
  const auto cfg = load(opt);
  auto out = open_output(fs::path(opt.out) / "mc.tsv");
  const bool ok = mcoac::write_mc_table(out, mcoac::run_analysis(cfg, opt.workers), cfg.analysis.tolerance);
  if (!ok) std::cerr << "mc: at least one comparison exceeds the tolerance\n";
  return ok ? 0 : 3;
}

int topology(const Options& opt) {
  const auto cfg = load(opt);
  auto out = open_output(fs::path(opt.out) / "deployment.tsv");
  mcoac::write_deployment(out, mcoac::build_deployment(cfg));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-cell non-coherent over-the-air federated learning simulator"};
  app.require_subcommand(1, 1);
  Options opt;

  auto add_common = [&opt](CLI::App* sub) {
    sub->add_option("--config", opt.config, "Experiment config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "Output directory");
    sub->add_option("--workers", opt.workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", opt.seed, "Override the config seed");
  };

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Options&);
  };
  const Command commands[] = {{"simulate", "Run the training protocol; writes metrics.csv and summary.json", simulate},
                              {"analyze", "Closed-form tables; writes analysis.tsv", analyze},
                              {"mc", "Closed forms against Monte-Carlo; writes mc.tsv", monte_carlo},
                              {"topology", "Deployment table; writes deployment.tsv", topology}};
  int (*chosen)(const Options&) = nullptr;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_common(sub);
    sub->callback([&chosen, run = c.run] { chosen = run; });
  }

  CLI11_PARSE(app, argc, argv);
  for (auto* sub : app.get_subcommands()) {
    if (sub->count("--seed") > 0) opt.seed_given = true;
  }

  try {
    return chosen(opt);
  } catch (const mcoac::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
