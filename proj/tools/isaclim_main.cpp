// Experiment runner: every analysis in the library is exposed as a seeded,
// reproducible subcommand that writes CSV plus a metadata sidecar.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isaclim/errors.hpp"
#include "isaclim/experiments.hpp"
#include "isaclim/parallel.hpp"
#include "isaclim/version.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out_path;
  long trials = 0;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path,
                  "JSON experiment config file");
  cmd->add_option("--seed", flags.seed, "master RNG seed (overrides config)")
      ->each([&flags](const std::string&) { flags.seed_set = true; });
  cmd->add_option("--out", flags.out_path,
                  "output CSV path (overrides config)");
  cmd->add_option("--trials", flags.trials,
                  "Monte-Carlo trials (overrides config)");
}

isac::ExperimentConfig load_config(const CommonFlags& flags) {
  isac::ExperimentConfig cfg;
  if (!flags.config_path.empty())
    cfg = isac::ExperimentConfig::from_file(flags.config_path);
  if (flags.seed_set) cfg.seed = flags.seed;
  if (!flags.out_path.empty()) cfg.output_path = flags.out_path;
  if (flags.trials > 0) cfg.trials = flags.trials;
  return cfg;
}

isac::EnsembleSpec parse_ensemble(const std::string& name, double rho_x) {
  if (name == "gaussian") return {isac::Ensemble::gaussian, 0.0};
  if (name == "cm" || name == "constant-modulus")
    return {isac::Ensemble::constant_modulus, 0.0};
  if (name == "gaussian-correlated")
    return {isac::Ensemble::gaussian_correlated, rho_x};
  throw isac::ConfigError("unknown ensemble: " + name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Band-limited ISAC performance-limit experiments"};
  app.set_version_flag("--version", std::string("isaclim ") + isac::kVersion);
  app.require_subcommand(1);

  if (const char* env = std::getenv("ISAC_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) isac::set_max_threads(n);
  }

  CommonFlags smi_mse_flags;
  std::vector<int> k_list = {4, 8, 12, 16};
  std::vector<double> rho_list = {0.3};
  auto* smi_mse = app.add_subcommand(
      "smi-mse", "MSE bound versus SMI for each (K, rho_s)");
  add_common(smi_mse, smi_mse_flags);
  smi_mse->add_option("--k-list", k_list, "sensing parameter counts")
      ->delimiter(',');
  smi_mse->add_option("--rho-list", rho_list, "parameter correlations")
      ->delimiter(',');

  CommonFlags region_flags;
  std::string mode_name = "exact";
  std::vector<long> u_isac_list;
  double fraction = 0.1;
  auto* region = app.add_subcommand(
      "region", "CMI-SMI / CMI-MSE region sweep over RE allocations");
  add_common(region, region_flags);
  region->add_option("--mode", mode_name, "exact or approx")
      ->check(CLI::IsMember({"exact", "approx"}));
  region->add_option("--u-isac-list", u_isac_list,
                     "total RE budgets (default: config u_isac)")
      ->delimiter(',');
  region->add_option("--fraction", fraction,
                     "saturation classification fraction, in (0, 0.5)");

  CommonFlags wave_flags;
  std::vector<int> n_list = {1, 2, 4, 8};
  std::vector<long> u_s_list_wave = {1, 2, 4, 8, 16, 32, 64, 128, 256};
  auto* wave_cmp = app.add_subcommand(
      "waveform-compare",
      "constant-modulus versus Gaussian waveform performance");
  add_common(wave_cmp, wave_flags);
  wave_cmp->add_option("--n-list", n_list, "transmit antenna counts")
      ->delimiter(',');
  wave_cmp->add_option("--u-s-list", u_s_list_wave, "sensing RE budgets")
      ->delimiter(',');
  long mc_outer = 0, mc_inner = 0;
  wave_cmp->add_option("--mc-outer", mc_outer, "outer MC samples");
  wave_cmp->add_option("--mc-inner", mc_inner, "inner MC samples");

  CommonFlags rho_flags;
  std::vector<double> rho_s_sweep = {0.0, 0.2, 0.4, 0.6, 0.8};
  long rho_u_s = 100;
  auto* sensing_rho = app.add_subcommand(
      "sensing-rho", "sensing metrics versus parameter correlation");
  add_common(sensing_rho, rho_flags);
  sensing_rho->add_option("--rho-list", rho_s_sweep, "rho_s values")
      ->delimiter(',');
  sensing_rho->add_option("--u-s", rho_u_s, "sensing REs");

  CommonFlags oracle_flags;
  std::vector<long> u_s_list_oracle = {25, 50, 100, 200, 400};
  auto* oracle = app.add_subcommand(
      "oracle", "empirical LMMSE error versus the SMI-implied bound");
  add_common(oracle, oracle_flags);
  oracle->add_option("--u-s-list", u_s_list_oracle, "sensing RE budgets")
      ->delimiter(',');

  CommonFlags dump_flags;
  std::string ensemble_name = "gaussian";
  double rho_x_flag = 0.0;
  auto* dump = app.add_subcommand("dump-waveform",
                                  "write one drawn waveform to CSV");
  add_common(dump, dump_flags);
  dump->add_option("--ensemble", ensemble_name,
                   "gaussian, cm or gaussian-correlated")
      ->check(CLI::IsMember({"gaussian", "cm", "constant-modulus",
                             "gaussian-correlated"}));
  dump->add_option("--rho-x", rho_x_flag,
                   "spatial correlation for gaussian-correlated");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*smi_mse) {
      cmd_smi_mse(load_config(smi_mse_flags), k_list, rho_list);
    } else if (*region) {
      isac::ExperimentConfig cfg = load_config(region_flags);
      if (u_isac_list.empty()) u_isac_list = {cfg.u_isac};
      cmd_region(cfg,
                 mode_name == "exact" ? isac::RegionMode::exact
                                      : isac::RegionMode::approx,
                 u_isac_list, fraction);
    } else if (*wave_cmp) {
      isac::ExperimentConfig cfg = load_config(wave_flags);
      if (mc_outer > 0) cfg.mc_outer = mc_outer;
      if (mc_inner > 0) cfg.mc_inner = mc_inner;
      cmd_waveform_compare(cfg, n_list, u_s_list_wave);
    } else if (*sensing_rho) {
      cmd_sensing_rho(load_config(rho_flags), rho_s_sweep, rho_u_s);
    } else if (*oracle) {
      cmd_oracle(load_config(oracle_flags), u_s_list_oracle);
    } else if (*dump) {
      isac::ExperimentConfig cfg = load_config(dump_flags);
      double rho_x = rho_x_flag > 0.0 ? rho_x_flag : cfg.correlation.rho_x;
      cmd_dump_waveform(cfg, parse_ensemble(ensemble_name, rho_x));
    }
  } catch (const isac::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const isac::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
