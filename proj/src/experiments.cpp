#include "isaclim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "isaclim/csv.hpp"
#include "isaclim/errors.hpp"
#include "isaclim/linalg.hpp"
#include "isaclim/metrics.hpp"
#include "isaclim/oracle.hpp"
#include "isaclim/rng.hpp"
#include "isaclim/version.hpp"

namespace isac {

namespace {

using nlohmann::json;

double to_db(double ratio) { return 10.0 * std::log10(ratio); }
double from_db(double db) { return std::pow(10.0, db / 10.0); }

json config_echo(const ExperimentConfig& cfg) {
  json j;
  j["n_tx"] = cfg.system.n_tx;
  j["m_c"] = cfg.system.m_c;
  j["m_s"] = cfg.system.m_s;
  j["bandwidth_b"] = cfg.system.bandwidth_b;
  j["u_isac"] = cfg.u_isac;
  j["p_t"] = cfg.system.p_t;
  j["sigma2_nc"] = cfg.system.sigma2_nc;
  j["sigma2_ns"] = cfg.system.sigma2_ns;
  j["beta_c_db"] = to_db(cfg.system.beta_c());
  j["beta_s_db"] = to_db(cfg.system.beta_s());
  j["rho_s"] = cfg.correlation.rho_s;
  j["rho_r"] = cfg.correlation.rho_r;
  j["rho_sr"] = cfg.correlation.rho_sr;
  j["rho_x"] = cfg.correlation.rho_x;
  j["k"] = cfg.k;
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  j["mc_outer"] = cfg.mc_outer;
  j["mc_inner"] = cfg.mc_inner;
  j["output_path"] = cfg.output_path;
  return j;
}

void write_sidecar(const ExperimentConfig& cfg, const std::string& command,
                   const json& params) {
  json meta;
  meta["command"] = command;
  meta["config"] = config_echo(cfg);
  meta["params"] = params;
  meta["seed"] = cfg.seed;
  meta["version"] = kVersion;
  std::ofstream out(cfg.output_path + ".meta.json", std::ios::binary);
  if (!out)
    throw ConfigError("cannot open sidecar file: " + cfg.output_path +
                      ".meta.json");
  out << meta.dump(2) << '\n';
}

// System config with exactly u_s sensing REs per CPI.
SystemConfig with_res(const SystemConfig& base, long u_s) {
  SystemConfig cfg = base;
  cfg.bandwidth_b = 1;
  cfg.n_cpi = u_s;
  return cfg;
}

Eigen::MatrixXcd draw_comm_channel(const SystemConfig& cfg,
                                   std::uint64_t seed,
                                   std::uint64_t counter) {
  Rng rng(derive_seed(seed, SeedStream::comm_channel, counter));
  return complex_gaussian_matrix(cfg.n_tx, cfg.m_c, cfg.alpha2_hc, rng);
}

}  // namespace

void ExperimentConfig::validate() const {
  system.validate();
  correlation.validate();
  if (k < 1 || k > system.channel_dim())
    throw ConfigError("k outside [1, n_tx*m_s]");
  if (u_isac < 1) throw ConfigError("u_isac must be >= 1");
  if (u_isac % system.bandwidth_b != 0)
    throw ConfigError("u_isac must be divisible by bandwidth_b");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (mc_outer < 1 || mc_inner < 1)
    throw ConfigError("mc_outer and mc_inner must be >= 1");
  if (output_path.empty()) throw ConfigError("output_path is empty");
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  static const std::set<std::string> known = {
      "n_tx",      "m_c",        "m_s",      "bandwidth_b", "u_isac",
      "p_t",       "sigma2_nc",  "sigma2_ns", "beta_c_db",  "beta_s_db",
      "rho_s",     "rho_r",      "rho_sr",   "rho_x",       "k",
      "seed",      "trials",     "mc_outer", "mc_inner",    "output_path"};
  for (const auto& item : j.items()) {
    if (!known.count(item.key()))
      throw ConfigError("unknown config key: " + item.key());
  }

  ExperimentConfig cfg;
  bool k_given = false;
  try {
    auto get = [&](const char* key, auto& slot) {
      if (j.contains(key)) slot = j.at(key).get<std::decay_t<decltype(slot)>>();
    };
    get("n_tx", cfg.system.n_tx);
    get("m_c", cfg.system.m_c);
    get("m_s", cfg.system.m_s);
    get("bandwidth_b", cfg.system.bandwidth_b);
    get("u_isac", cfg.u_isac);
    get("p_t", cfg.system.p_t);
    get("sigma2_nc", cfg.system.sigma2_nc);
    get("sigma2_ns", cfg.system.sigma2_ns);
    get("rho_s", cfg.correlation.rho_s);
    get("rho_r", cfg.correlation.rho_r);
    get("rho_sr", cfg.correlation.rho_sr);
    get("rho_x", cfg.correlation.rho_x);
    get("seed", cfg.seed);
    get("trials", cfg.trials);
    get("mc_outer", cfg.mc_outer);
    get("mc_inner", cfg.mc_inner);
    get("output_path", cfg.output_path);
    if (j.contains("k")) {
      cfg.k = j.at("k").get<int>();
      k_given = true;
    }
    double beta_c_db = 20.0, beta_s_db = 10.0;
    get("beta_c_db", beta_c_db);
    get("beta_s_db", beta_s_db);
    cfg.system.alpha2_hc = cfg.system.sigma2_nc * from_db(beta_c_db);
    cfg.system.alpha2_hs = cfg.system.sigma2_ns * from_db(beta_s_db);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config value has wrong type: ") +
                      e.what());
  }
  if (!k_given) cfg.k = cfg.system.n_tx * cfg.system.m_s / 2;
  if (cfg.system.bandwidth_b >= 1 && cfg.u_isac >= 1 &&
      cfg.u_isac % cfg.system.bandwidth_b == 0)
    cfg.system.n_cpi = cfg.u_isac / cfg.system.bandwidth_b;
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return from_json_text(text.str());
}

std::string ExperimentConfig::to_json_text() const {
  return config_echo(*this).dump(2);
}

void cmd_smi_mse(const ExperimentConfig& cfg, const std::vector<int>& k_list,
                 const std::vector<double>& rho_s_list) {
  cfg.validate();
  if (k_list.empty() || rho_s_list.empty())
    throw ConfigError("smi-mse needs nonempty k and rho lists");
  CsvWriter csv(cfg.output_path, {"k", "rho_s", "smi_bits", "mse_bound"});
  for (int k : k_list) {
    for (double rho : rho_s_list) {
      const Eigen::MatrixXcd r_s =
          build_equicorrelation(k, 1.0, rho, "rho_s")
              .cast<std::complex<double>>();
      for (int smi = 0; smi <= 60; ++smi) {
        const double smi_bits = static_cast<double>(smi);
        csv.field(k)
            .field(rho)
            .field(smi_bits)
            .field(mse_bound(smi_bits, r_s, k));
        csv.end_row();
      }
    }
  }
  write_sidecar(cfg, "smi-mse",
                json{{"k_list", k_list}, {"rho_s_list", rho_s_list}});
}

void cmd_region(const ExperimentConfig& cfg, RegionMode mode,
                const std::vector<long>& u_isac_list,
                double saturation_fraction) {
  cfg.validate();
  if (u_isac_list.empty()) throw ConfigError("region needs u_isac values");
  CsvWriter csv(cfg.output_path,
                {"u_isac", "u_c", "u_s", "cmi_bits", "smi_bits", "mse_bound",
                 "mode", "label"});
  // One channel draw shared by all sweeps so curves are comparable.
  const Eigen::MatrixXcd h_c = draw_comm_channel(cfg.system, cfg.seed, 0);
  for (std::size_t ui = 0; ui < u_isac_list.size(); ++ui) {
    const long u_isac = u_isac_list[ui];
    const SystemConfig sys = with_res(cfg.system, u_isac);
    const SensingChannelModel model =
        build_channel_model(sys, cfg.correlation, cfg.k);
    SweepOptions opts;
    opts.mode = mode;
    opts.ensemble =
        cfg.correlation.rho_x > 0.0
            ? EnsembleSpec{Ensemble::gaussian_correlated,
                           cfg.correlation.rho_x}
            : EnsembleSpec{Ensemble::gaussian, 0.0};
    opts.seed = derive_seed(cfg.seed, SeedStream::experiment, ui);
    const RegionCurve curve =
        sweep_region(sys, model, h_c, default_grid(u_isac), opts);
    const std::vector<RegionLabel> labels =
        classify_regions(curve, saturation_fraction);
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
      const MetricPoint& pt = curve.points[i];
      const RegionLabel label = labels[std::min(i, labels.size() - 1)];
      csv.field(u_isac)
          .field(pt.u_c)
          .field(pt.u_s)
          .field(pt.cmi_bits)
          .field(pt.smi_bits)
          .field(pt.mse_bound)
          .field(std::string(region_mode_name(mode)))
          .field(std::string(region_label_name(label)));
      csv.end_row();
    }
  }
  write_sidecar(cfg, "region",
                json{{"mode", region_mode_name(mode)},
                     {"u_isac_list", u_isac_list},
                     {"saturation_fraction", saturation_fraction}});
}

void cmd_waveform_compare(const ExperimentConfig& cfg,
                          const std::vector<int>& n_list,
                          const std::vector<long>& u_s_list) {
  cfg.validate();
  if (n_list.empty() || u_s_list.empty())
    throw ConfigError("waveform-compare needs n and u_s lists");
  const EnsembleSpec ensembles[2] = {{Ensemble::gaussian, 0.0},
                                     {Ensemble::constant_modulus, 0.0}};
  CsvWriter csv(cfg.output_path, {"aspect", "ensemble", "n_tx", "m_c", "u_s",
                                  "value_bits", "std_error"});

  std::vector<int> mc_list = {1, cfg.system.m_c};
  std::sort(mc_list.begin(), mc_list.end());
  mc_list.erase(std::unique(mc_list.begin(), mc_list.end()), mc_list.end());

  std::uint64_t counter = 0;
  for (const EnsembleSpec& ens : ensembles) {
    for (int n : n_list) {
      for (int m_c : mc_list) {
        SystemConfig sys = cfg.system;
        sys.n_tx = n;
        sys.m_c = m_c;
        // Same channel for both ensembles at a given (n, m_c), normalized
        // to unit receive power per Rx antenna. The mixture-density CMI
        // estimator needs mc_inner >> (1+SNR)^m_c, so this comparison is
        // pinned to the moderate-SNR regime where the amplitude-
        // distribution effect is the story; beta_c stays with the
        // closed-form commands.
        Rng ch_rng(derive_seed(cfg.seed, SeedStream::comm_channel,
                               1 + static_cast<std::uint64_t>(n) * 64 +
                                   static_cast<std::uint64_t>(m_c)));
        const Eigen::MatrixXcd h_c = complex_gaussian_matrix(
            n, m_c, sys.sigma2_nc / (sys.p_t * n), ch_rng);
        const MonteCarloEstimate est = cmi_monte_carlo(
            sys, h_c, ens, cfg.mc_outer, cfg.mc_inner,
            derive_seed(cfg.seed, SeedStream::experiment, counter++));
        csv.field(std::string("communication"))
            .field(std::string(ensemble_name(ens.kind)))
            .field(n)
            .field(m_c)
            .field(-1L)
            .field(est.value)
            .field(est.std_error);
        csv.end_row();
      }
    }
  }

  const SensingChannelModel model =
      build_channel_model(cfg.system, cfg.correlation, cfg.k);
  for (const EnsembleSpec& ens : ensembles) {
    for (long u_s : u_s_list) {
      if (u_s < 1) throw ConfigError("sensing u_s values must be >= 1");
      const SystemConfig sys = with_res(cfg.system, u_s);
      const MonteCarloEstimate est = ensemble_average_smi(
          ens, model, sys, cfg.trials,
          derive_seed(cfg.seed, SeedStream::experiment, counter++));
      csv.field(std::string("sensing"))
          .field(std::string(ensemble_name(ens.kind)))
          .field(cfg.system.n_tx)
          .field(-1L)
          .field(u_s)
          .field(est.value)
          .field(est.std_error);
      csv.end_row();
    }
  }
  write_sidecar(cfg, "waveform-compare",
                json{{"n_list", n_list}, {"u_s_list", u_s_list}});
}

void cmd_sensing_rho(const ExperimentConfig& cfg,
                     const std::vector<double>& rho_s_list, long u_s) {
  cfg.validate();
  if (rho_s_list.empty()) throw ConfigError("sensing-rho needs rho values");
  if (u_s < 1) throw ConfigError("u_s must be >= 1");
  const SystemConfig sys = with_res(cfg.system, u_s);
  const int dim = sys.channel_dim();
  // One waveform shared across the sweep isolates the correlation effect.
  const WaveformMatrix wave =
      gen_waveform({Ensemble::gaussian, 0.0}, sys,
                   derive_seed(cfg.seed, SeedStream::experiment, 0));
  CsvWriter csv(cfg.output_path,
                {"rho_s", "entropy_bits", "smi_bits", "mse_bound"});
  for (double rho : rho_s_list) {
    CorrelationSpec corr = cfg.correlation;
    corr.rho_s = rho;
    const SensingChannelModel model = build_channel_model(sys, corr, dim);
    const double smi = smi_full_channel(wave, model, sys);
    csv.field(rho)
        .field(logdet2_hermitian_pd(model.r_s, "R_s"))
        .field(smi)
        .field(mse_bound(smi, model.r_s, dim));
    csv.end_row();
  }
  write_sidecar(cfg, "sensing-rho",
                json{{"rho_s_list", rho_s_list}, {"u_s", u_s}});
}

void cmd_oracle(const ExperimentConfig& cfg,
                const std::vector<long>& u_s_list) {
  cfg.validate();
  if (u_s_list.empty()) throw ConfigError("oracle needs u_s values");
  const SensingChannelModel model =
      build_channel_model(cfg.system, cfg.correlation, cfg.k);
  CsvWriter csv(cfg.output_path,
                {"u_s", "trials", "empirical_mse", "bound", "std_error"});
  for (std::size_t i = 0; i < u_s_list.size(); ++i) {
    const long u_s = u_s_list[i];
    if (u_s < 1) throw ConfigError("u_s values must be >= 1");
    const SystemConfig sys = with_res(cfg.system, u_s);
    const WaveformMatrix wave =
        gen_waveform({Ensemble::gaussian, 0.0}, sys,
                     derive_seed(cfg.seed, SeedStream::experiment, i));
    const OracleResult res = lmmse_empirical_mse(
        wave, model, sys, cfg.trials,
        derive_seed(cfg.seed, SeedStream::noise, i));
    csv.field(u_s)
        .field(res.trials)
        .field(res.empirical_mse)
        .field(res.bound)
        .field(res.std_error);
    csv.end_row();
  }
  write_sidecar(cfg, "oracle", json{{"u_s_list", u_s_list}});
}

void cmd_dump_waveform(const ExperimentConfig& cfg,
                       const EnsembleSpec& ensemble) {
  cfg.validate();
  const SystemConfig sys = with_res(cfg.system, cfg.u_isac);
  const WaveformMatrix wave = gen_waveform(
      ensemble, sys, derive_seed(cfg.seed, SeedStream::experiment, 0));
  dump_waveform_csv(wave, cfg.output_path);
  write_sidecar(cfg, "dump-waveform",
                json{{"ensemble", ensemble_name(ensemble.kind)},
                     {"rho_x", ensemble.rho_x}});
}

}  // namespace isac
