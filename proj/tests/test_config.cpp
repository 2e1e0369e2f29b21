#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mcoac/errors.hpp"
#include "mcoac/experiment.hpp"

using namespace mcoac;
namespace fs = std::filesystem;

namespace {

ConfigFile parse(const std::string& text) {
  std::istringstream in(text);
  return ConfigFile::parse(in);
}

std::string field_of(const std::string& text) {
  try {
    load_experiment_config(parse(text));
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

int run_cli(const std::string& args) {
  const char* cli = std::getenv("MCOAC_CLI");
  if (cli == nullptr) return -1;
  return std::system((std::string(cli) + " " + args + " > /dev/null 2>&1").c_str());
}

}  // namespace

TEST(ConfigFile, TypedSectionedValues) {
  const auto f = parse(
      "# header\nversion:int = 1\n[a]\nx:float = 2.5  # trailing\nn:uint = 7\nflag:bool = true\n"
      "name:string = hello world\nlist:floats = 0.5, 1, 2e-3\nids:ints = 3,-4\n");
  EXPECT_DOUBLE_EQ(f.get_float("a.x", 0.0), 2.5);
  EXPECT_EQ(f.get_uint("a.n", 0), 7u);
  EXPECT_TRUE(f.get_bool("a.flag", false));
  EXPECT_EQ(f.get_string("a.name", ""), "hello world");
  EXPECT_EQ(f.get_floats("a.list", {}), (std::vector<double>{0.5, 1.0, 2e-3}));
  EXPECT_EQ(f.get_ints("a.ids", {}), (std::vector<std::int64_t>{3, -4}));
  EXPECT_EQ(f.get_int("a.missing", 42), 42);
}

TEST(ConfigFile, MalformedInputsNameTheField) {
  EXPECT_THROW(parse("x:int = 1.5\n"), ConfigError);
  EXPECT_THROW(parse("x:uint = -1\n"), ConfigError);
  EXPECT_THROW(parse("x:bool = yes\n"), ConfigError);
  EXPECT_THROW(parse("x:widget = 1\n"), ConfigError);
  EXPECT_THROW(parse("x = 1\n"), ConfigError);
  EXPECT_THROW(parse("x:int = 1\nx:int = 2\n"), ConfigError);
  try {
    parse("[s]\nk:float = abc\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "s.k");
  }
  EXPECT_THROW(parse("x:string = a\n").get_int("x", 0), ConfigError);
}

TEST(Experiment, VersionIsMandatory) { EXPECT_EQ(field_of("seed:uint = 3\n"), "version"); }

TEST(Experiment, ValidationReportsFieldPath) {
  EXPECT_EQ(field_of("version:int = 1\n[topology]\ncell_count:int = 0\n"), "topology.cell_count");
  EXPECT_EQ(field_of("version:int = 1\n[channel]\nmodel:string = rician\n"), "channel.model");
  EXPECT_EQ(field_of("version:int = 1\n[learning]\neta:float = -0.1\n"), "learning.eta");
  EXPECT_EQ(field_of("version:int = 1\n[analysis]\np_i:floats = 0.5, 1.5\n"), "analysis.p_i");
  EXPECT_EQ(field_of("version:int = 1\n[topology]\nbogus:int = 1\n"), "topology.bogus");
  EXPECT_EQ(field_of("version:int = 1\n[learning]\ndataset:string = idx\n"), "learning.idx_train_images");
}

TEST(Experiment, SnrConversion) {
  EXPECT_DOUBLE_EQ(snr_to_variance(0.0), 1.0);
  EXPECT_NEAR(snr_to_variance(20.0), 0.01, 1e-15);
  EXPECT_NEAR(snr_to_variance(10.0), 0.1, 1e-15);
}

TEST(Experiment, EveryKeyEchoedInJson) {
  const auto cfg = load_experiment_config(ConfigFile::load(std::string(MCOAC_CONFIG_DIR) + "/desk.cfg"));
  const auto j = to_json(cfg);
  for (const char* section : {"topology", "channel", "oac", "learning", "analysis"}) {
    ASSERT_TRUE(j.contains(section)) << section;
  }
  EXPECT_EQ(j["learning"]["dims"], cfg.learning.dims);
  EXPECT_EQ(j["channel"]["model"], cfg.channel.model);
  EXPECT_EQ(j.begin().key(), "version");
}

TEST(Experiment, NoiselessAnalysisRow) {
  auto cfg = load_experiment_config(parse(
      "version:int = 1\n[analysis]\np_i:floats = 0.9\nk_c:ints = 6\ns_c:ints = 3\nsigma2_es:floats = 0\n"
      "sigma2_ed:floats = 0\ntrials:uint = 1000\n"));
  const auto rows = run_analysis(cfg);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].a, 0.0);
  EXPECT_EQ(rows[0].b, 1.0);
  std::ostringstream out;
  write_analysis_table(out, rows);
  EXPECT_EQ(out.str().substr(0, 4), "p_i\t");
}

TEST(Cli, SubcommandsWriteArtifacts) {
  if (std::getenv("MCOAC_CLI") == nullptr) GTEST_SKIP() << "MCOAC_CLI not set";
  const auto out = fs::temp_directory_path() / "mcoac_cli_test";
  fs::remove_all(out);
  const std::string cfg = std::string(MCOAC_CONFIG_DIR) + "/smoke.cfg";
  EXPECT_EQ(run_cli("topology --config " + cfg + " --out " + out.string()), 0);
  EXPECT_TRUE(fs::exists(out / "deployment.tsv"));
  EXPECT_EQ(run_cli("simulate --config " + cfg + " --out " + out.string() + " --seed 4"), 0);
  EXPECT_TRUE(fs::exists(out / "metrics.csv"));
  std::ifstream summary(out / "summary.json");
  const auto j = nlohmann::json::parse(summary);
  EXPECT_EQ(j["config"]["seed"], 4);
  EXPECT_EQ(run_cli("analyze --config " + cfg + " --out " + out.string()), 0);
  EXPECT_TRUE(fs::exists(out / "analysis.tsv"));
  EXPECT_EQ(run_cli("mc --config " + cfg + " --out " + out.string()), 0);
  EXPECT_TRUE(fs::exists(out / "mc.tsv"));
}

TEST(Cli, ErrorsExitNonzero) {
  if (std::getenv("MCOAC_CLI") == nullptr) GTEST_SKIP() << "MCOAC_CLI not set";
  const auto dir = fs::temp_directory_path() / "mcoac_cli_bad";
  fs::create_directories(dir);
  std::ofstream(dir / "bad.cfg") << "version:int = 1\n[topology]\nisd_m:float = -3\n";
  EXPECT_NE(run_cli("simulate --config " + (dir / "bad.cfg").string() + " --out " + dir.string()), 0);
  EXPECT_NE(run_cli("simulate --config /nonexistent.cfg"), 0);
  EXPECT_NE(run_cli("frobnicate"), 0);
}
