#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "isaclim/config.hpp"
#include "isaclim/regions.hpp"
#include "isaclim/waveform.hpp"

namespace isac {

/// Everything one experiment run needs, loadable from a flat JSON file.
/// Field defaults reproduce the reference setup: N = 4, M_c = 4, M_s = 8,
/// per-element power 1 (total N across antennas), beta_c = 20 dB,
/// beta_s = 10 dB, rho_s = rho_r = 0.3, rho_sr = 0.2, U_ISAC = 10^4,
/// K = N*M_s/2.
struct ExperimentConfig {
  SystemConfig system;
  CorrelationSpec correlation;
  int k = 16;
  long u_isac = 10000;
  std::uint64_t seed = 12345;
  long trials = 1000;
  long mc_outer = 2000;
  long mc_inner = 2000;
  std::string output_path = "out.csv";

  void validate() const;

  /// Parses the flat JSON schema (see README). Unknown keys are rejected.
  /// Gain-to-noise ratios are given in dB (beta_c_db, beta_s_db) and
  /// converted to channel gains once, at parse time.
  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig from_file(const std::string& path);

  /// Canonical JSON echo of this config (the same flat schema).
  std::string to_json_text() const;
};

// Every command writes its CSV to cfg.output_path plus a sidecar metadata
// record (<output_path>.meta.json) with the config echo, command name,
// parameters, seed and version.

/// MSE-versus-SMI tables for each (K, rho_s) pair over an SMI grid, with
/// unit-variance equicorrelated parameters.
/// CSV: k, rho_s, smi_bits, mse_bound
void cmd_smi_mse(const ExperimentConfig& cfg, const std::vector<int>& k_list,
                 const std::vector<double>& rho_s_list);

/// Region sweeps (51-point grid) for each U_ISAC value, with saturation
/// labels. CSV: u_isac, u_c, u_s, cmi_bits, smi_bits, mse_bound, mode,
/// label
void cmd_region(const ExperimentConfig& cfg, RegionMode mode,
                const std::vector<long>& u_isac_list,
                double saturation_fraction = 0.1);

/// Constant-modulus versus Gaussian waveforms: Monte-Carlo CMI per RE over
/// transmit antenna counts (for M_c = 1 and the configured M_c), and
/// ensemble-average SMI over sensing RE budgets.
/// CSV: aspect, ensemble, n_tx, m_c, u_s, value_bits, std_error
/// (-1 marks a column that does not apply to the row's aspect)
void cmd_waveform_compare(const ExperimentConfig& cfg,
                          const std::vector<int>& n_list,
                          const std::vector<long>& u_s_list);

/// Sensing-parameter correlation sweep at K = N*M_s with a fixed waveform.
/// CSV: rho_s, entropy_bits, smi_bits, mse_bound
void cmd_sensing_rho(const ExperimentConfig& cfg,
                     const std::vector<double>& rho_s_list, long u_s = 100);

/// Empirical LMMSE error against the SMI-implied bound over sensing RE
/// budgets. CSV: u_s, trials, empirical_mse, bound, std_error
void cmd_oracle(const ExperimentConfig& cfg,
                const std::vector<long>& u_s_list);

/// Writes one drawn waveform (u_isac REs) to CSV, re/im per antenna.
void cmd_dump_waveform(const ExperimentConfig& cfg,
                       const EnsembleSpec& ensemble);

}  // namespace isac
