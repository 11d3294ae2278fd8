#pragma once

#include <cstdint>

namespace isac {

/// Scalar system parameters of the band-limited ISAC link. A resource
/// element (RE) spans unit bandwidth and one symbol and carries two complex
/// samples, so one CPI holds 2*B*N_CPI samples over B*N_CPI REs.
struct SystemConfig {
  int n_tx = 4;        // transmit antennas N
  int m_c = 4;         // communication Rx antennas
  int m_s = 8;         // sensing Rx antennas
  long bandwidth_b = 1;   // bandwidth in symbol-rate units
  long n_cpi = 10000;     // symbols per CPI
  double p_t = 1.0;       // per-element transmit sample power
  double sigma2_nc = 1.0;  // communication noise variance
  double sigma2_ns = 1.0;  // sensing noise variance
  double alpha2_hc = 100.0;  // communication channel gain
  double alpha2_hs = 10.0;   // sensing channel gain

  long samples_per_cpi() const { return 2 * bandwidth_b * n_cpi; }
  long res_per_cpi() const { return bandwidth_b * n_cpi; }
  int channel_dim() const { return n_tx * m_s; }  // dim of vec(H_s)

  // Gain-to-noise ratios are always derived, never stored.
  double beta_c() const { return alpha2_hc / sigma2_nc; }
  double beta_s() const { return alpha2_hs / sigma2_ns; }

  /// Throws ConfigError on non-positive counts, powers or variances.
  void validate() const;
};

/// Scalar correlation coefficients realized as constant-correlation
/// (equicorrelation) blocks by the covariance module.
struct CorrelationSpec {
  double rho_s = 0.3;   // within the sensing parameters s
  double rho_r = 0.3;   // within the remaining channel entries r
  double rho_sr = 0.2;  // between s and r
  double rho_x = 0.0;   // spatial correlation of the transmit waveform

  /// Range checks only; positive definiteness of the assembled composite
  /// is verified by Cholesky when the channel model is built.
  void validate() const;
};

}  // namespace isac
