#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "isaclim/csv.hpp"
#include "isaclim/errors.hpp"
#include "isaclim/experiments.hpp"
#include "isaclim/parallel.hpp"

using namespace isac;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::istringstream in(slurp(path));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    rows.push_back(fields);
  }
  return rows;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name)
      : path("isaclim_test_" + name) {}
  ~TempFile() {
    std::remove(path.c_str());
    std::remove((path + ".meta.json").c_str());
  }
};

ExperimentConfig small_config(const std::string& out) {
  ExperimentConfig cfg;
  cfg.system.n_tx = 2;
  cfg.system.m_c = 2;
  cfg.system.m_s = 2;
  cfg.k = 2;
  cfg.u_isac = 400;
  cfg.system.n_cpi = 400;
  cfg.trials = 100;
  cfg.seed = 99;
  cfg.output_path = out;
  return cfg;
}

}  // namespace

TEST_CASE("csv double formatting uses 12 significant digits") {
  CHECK(CsvWriter::format_double(1.0 / 3.0) == "0.333333333333");
  CHECK(CsvWriter::format_double(2.0) == "2");
  CHECK(CsvWriter::format_double(1.5e-7) == "1.5e-07");
}

TEST_CASE("experiment config JSON round trip and validation") {
  SUBCASE("defaults reproduce the reference setup") {
    const ExperimentConfig cfg = ExperimentConfig::from_json_text("{}");
    CHECK(cfg.system.n_tx == 4);
    CHECK(cfg.system.m_c == 4);
    CHECK(cfg.system.m_s == 8);
    CHECK(cfg.k == 16);
    CHECK(cfg.u_isac == 10000);
    CHECK(cfg.system.beta_c() == doctest::Approx(100.0));
    CHECK(cfg.system.beta_s() == doctest::Approx(10.0));
    CHECK(cfg.correlation.rho_s == 0.3);
    CHECK(cfg.correlation.rho_sr == 0.2);
  }
  SUBCASE("dB inputs convert once at parse time") {
    const ExperimentConfig cfg = ExperimentConfig::from_json_text(
        R"({"beta_s_db": 0.0, "sigma2_ns": 2.0})");
    CHECK(cfg.system.alpha2_hs == doctest::Approx(2.0));
  }
  SUBCASE("k defaults to half the channel dimension") {
    const ExperimentConfig cfg =
        ExperimentConfig::from_json_text(R"({"n_tx": 2, "m_s": 4})");
    CHECK(cfg.k == 4);
  }
  SUBCASE("u_isac drives n_cpi") {
    const ExperimentConfig cfg = ExperimentConfig::from_json_text(
        R"({"u_isac": 600, "bandwidth_b": 3})");
    CHECK(cfg.system.n_cpi == 200);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(
                        R"({"u_isac": 601, "bandwidth_b": 3})"),
                    ConfigError);
  }
  SUBCASE("unknown keys and bad values are rejected") {
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"ntx": 4})"),
                    ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"rho_s": 1.5})"),
                    ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"p_t": -1})"),
                    ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text("not json"),
                    ConfigError);
  }
  SUBCASE("echo parses back to the same config") {
    const ExperimentConfig cfg = ExperimentConfig::from_json_text(
        R"({"n_tx": 2, "m_s": 4, "k": 3, "u_isac": 128, "seed": 7})");
    const ExperimentConfig again =
        ExperimentConfig::from_json_text(cfg.to_json_text());
    CHECK(again.system.n_tx == 2);
    CHECK(again.k == 3);
    CHECK(again.seed == 7);
    CHECK(again.system.alpha2_hs ==
          doctest::Approx(cfg.system.alpha2_hs).epsilon(1e-12));
  }
}

TEST_CASE("smi-mse command output") {
  TempFile out("smi_mse.csv");
  ExperimentConfig cfg = small_config(out.path);
  cmd_smi_mse(cfg, {4, 8}, {0.3});
  const auto rows = read_csv(out.path);
  REQUIRE(rows.size() == 1 + 2 * 61);
  CHECK(rows[0] ==
        std::vector<std::string>({"k", "rho_s", "smi_bits", "mse_bound"}));
  // Monotone decreasing MSE along each K block.
  double prev = 1e300;
  for (std::size_t i = 1; i <= 61; ++i) {
    const double mse = std::stod(rows[i][3]);
    CHECK(mse < prev);
    prev = mse;
  }
  // Reference anchors: 25 bits at K=4 and 50 bits at K=8.
  CHECK(std::stod(rows[1 + 25][3]) >= 0.008);
  CHECK(std::stod(rows[1 + 25][3]) <= 0.015);
  CHECK(std::stod(rows[61 + 1 + 50][3]) >= 0.008);
  CHECK(std::stod(rows[61 + 1 + 50][3]) <= 0.015);
  // Fixed SMI, growing correlation: MSE decreases with rho_s.
  TempFile out_rho("smi_mse_rho.csv");
  cfg.output_path = out_rho.path;
  cmd_smi_mse(cfg, {12}, {0.0, 0.3, 0.6, 0.9});
  const auto rho_rows = read_csv(out_rho.path);
  const int smi_at = 30;
  double prev_mse = 1e300;
  for (int block = 0; block < 4; ++block) {
    const double mse =
        std::stod(rho_rows[static_cast<std::size_t>(1 + 61 * block +
                                                     smi_at)][3]);
    CHECK(mse < prev_mse);
    prev_mse = mse;
  }
}

TEST_CASE("region command emits labeled curves") {
  TempFile out("region.csv");
  ExperimentConfig cfg = small_config(out.path);
  cmd_region(cfg, RegionMode::approx, {400, 200});
  const auto rows = read_csv(out.path);
  REQUIRE(rows.size() == 1 + 2 * 51);
  CHECK(rows[0][0] == "u_isac");
  CHECK(rows[0][7] == "label");
  CHECK(rows[1][6] == "approx");
  // Final point of each curve is the u_s = 0 endpoint.
  CHECK(std::stod(rows[51][4]) == 0.0);
  std::set<std::string> labels;
  for (std::size_t i = 1; i <= 51; ++i) labels.insert(rows[i][7]);
  CHECK(labels.count("sensing_saturation") == 1);
}

TEST_CASE("sensing-rho command output") {
  TempFile out("sensing_rho.csv");
  ExperimentConfig cfg = small_config(out.path);
  cmd_sensing_rho(cfg, {0.0, 0.2, 0.4, 0.6, 0.8}, 50);
  const auto rows = read_csv(out.path);
  REQUIRE(rows.size() == 6);
  double prev_smi = 1e300;
  double mse_min = 1e300, mse_max = 0.0, mse_sum = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double smi = std::stod(rows[i][2]);
    CHECK(smi < prev_smi);
    prev_smi = smi;
    const double mse = std::stod(rows[i][3]);
    mse_min = std::min(mse_min, mse);
    mse_max = std::max(mse_max, mse);
    mse_sum += mse;
  }
  CHECK((mse_max - mse_min) <= 0.10 * (mse_sum / 5.0));
  // Uncorrelated parameters: the entropy column is K log2(alpha2)
  // (tolerance covers the 12-digit CSV round trip).
  const int dim = cfg.system.n_tx * cfg.system.m_s;
  CHECK(std::stod(rows[1][1]) ==
        doctest::Approx(dim * std::log2(cfg.system.alpha2_hs))
            .epsilon(1e-10));
}

TEST_CASE("oracle command output schema") {
  TempFile out("oracle.csv");
  ExperimentConfig cfg = small_config(out.path);
  cmd_oracle(cfg, {10, 20});
  const auto rows = read_csv(out.path);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == std::vector<std::string>(
                       {"u_s", "trials", "empirical_mse", "bound",
                        "std_error"}));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double emp = std::stod(rows[i][2]);
    const double bound = std::stod(rows[i][3]);
    const double se = std::stod(rows[i][4]);
    CHECK(emp + 3.0 * se >= bound);
  }
}

TEST_CASE("waveform compare covers both aspects") {
  TempFile out("wave.csv");
  ExperimentConfig cfg = small_config(out.path);
  cfg.mc_outer = 200;
  cfg.mc_inner = 200;
  cfg.trials = 50;
  cmd_waveform_compare(cfg, {1, 2}, {4, 16});
  const auto rows = read_csv(out.path);
  // 2 ensembles x 2 antenna counts x 2 Rx counts + 2 ensembles x 2
  // budgets.
  REQUIRE(rows.size() == 1 + 8 + 4);
  int comm = 0, sensing = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][0] == "communication") ++comm;
    if (rows[i][0] == "sensing") ++sensing;
  }
  CHECK(comm == 8);
  CHECK(sensing == 4);
}

TEST_CASE("dump-waveform writes re/im pairs") {
  TempFile out("dump.csv");
  ExperimentConfig cfg = small_config(out.path);
  cfg.u_isac = 16;
  cfg.system.n_cpi = 16;
  cmd_dump_waveform(cfg, {Ensemble::constant_modulus, 0.0});
  const auto rows = read_csv(out.path);
  REQUIRE(rows.size() == 1 + 32);  // 2 B N_CPI samples
  REQUIRE(rows[0].size() == 4);    // 2 antennas x (re, im)
  CHECK(rows[0][0] == "ant0_re");
  const double re = std::stod(rows[1][0]);
  const double im = std::stod(rows[1][1]);
  CHECK(re * re + im * im == doctest::Approx(cfg.system.p_t).epsilon(1e-9));
}

TEST_CASE("identical config and seed give byte-identical outputs across "
          "thread counts") {
  TempFile out("det.csv");
  ExperimentConfig cfg = small_config(out.path);

  set_max_threads(1);
  cmd_oracle(cfg, {10, 20});
  const std::string first = slurp(out.path);
  const std::string first_meta = slurp(out.path + ".meta.json");

  cmd_oracle(cfg, {10, 20});
  CHECK(slurp(out.path) == first);
  CHECK(slurp(out.path + ".meta.json") == first_meta);

  set_max_threads(8);
  cmd_oracle(cfg, {10, 20});
  CHECK(slurp(out.path) == first);
  set_max_threads(0);
}

TEST_CASE("sidecar metadata records the run") {
  TempFile out("meta.csv");
  ExperimentConfig cfg = small_config(out.path);
  cmd_smi_mse(cfg, {4}, {0.3});
  const nlohmann::json meta =
      nlohmann::json::parse(slurp(out.path + ".meta.json"));
  CHECK(meta.at("command") == "smi-mse");
  CHECK(meta.at("seed") == 99);
  CHECK(meta.at("version").get<std::string>() == "0.1.0");
  CHECK(meta.at("config").at("n_tx") == 2);
  CHECK(meta.at("params").at("k_list") == nlohmann::json({4}));
}
