#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "isaclim/config.hpp"

namespace isac {

enum class Ensemble { gaussian, constant_modulus, gaussian_correlated };

const char* ensemble_name(Ensemble e);

/// Ensemble selector plus the parameters that ensemble needs. rho_x only
/// applies to the Gaussian family; a correlated constant-modulus ensemble
/// is not defined and is rejected.
struct EnsembleSpec {
  Ensemble kind = Ensemble::gaussian;
  double rho_x = 0.0;
};

/// Transmit sample matrix over one CPI: 2*B*N_CPI frequency-domain sample
/// rows by N antennas, plus the Gram matrix that every sensing metric
/// consumes.
struct WaveformMatrix {
  Eigen::MatrixXcd x;
  Eigen::MatrixXcd gram;  // x^H x, N x N Hermitian PSD
  Ensemble ensemble_tag = Ensemble::gaussian;
  std::uint64_t seed = 0;

  static WaveformMatrix from_samples(Eigen::MatrixXcd samples,
                                     Ensemble tag, std::uint64_t seed);
};

/// Rows i.i.d. CN(0, P_t * Sigma_x) with Sigma_x the unit-variance
/// equicorrelation matrix at rho_x; coloring is applied through the
/// Cholesky factor of Sigma_x. rho_x = 0 gives i.i.d. CN(0, P_t) entries.
WaveformMatrix gen_gaussian(const SystemConfig& cfg, double rho_x,
                            std::uint64_t seed);

/// Every entry sqrt(P_t) e^{j theta} with theta i.i.d. uniform on
/// [0, 2*pi); per-entry power is P_t by construction.
WaveformMatrix gen_constant_modulus(const SystemConfig& cfg,
                                    std::uint64_t seed);

WaveformMatrix gen_waveform(const EnsembleSpec& spec, const SystemConfig& cfg,
                            std::uint64_t seed);

/// Dumps x to CSV, two columns (re, im) per antenna, one row per sample.
void dump_waveform_csv(const WaveformMatrix& wave, const std::string& path);

}  // namespace isac
