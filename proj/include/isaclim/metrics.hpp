#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "isaclim/config.hpp"
#include "isaclim/covariance.hpp"
#include "isaclim/waveform.hpp"

namespace isac {

/// One operating point of the communication-sensing trade-off. Everything
/// is per CPI and in bits (base-2 throughout); mse_bound carries the units
/// of the sensing parameter variance.
struct MetricPoint {
  double cmi_bits = 0.0;
  double smi_bits = 0.0;
  double mse_bound = 0.0;
  long u_c = 0;
  long u_s = 0;
};

struct MonteCarloEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Communication mutual information of one resource element for a Gaussian
/// codebook: 2 log2 det(I + (P_t / sigma_nc^2) H_c^H Sigma_x H_c). The
/// factor 2 counts the two complex samples each RE carries. Sigma_x is the
/// transmit spatial covariance (identity for the uncorrelated ensemble).
double cmi_per_re(const SystemConfig& cfg, const Eigen::MatrixXcd& h_c);
double cmi_per_re(const SystemConfig& cfg, const Eigen::MatrixXcd& h_c,
                  const Eigen::MatrixXd& sigma_x);

/// CMI over u_c resource elements: u_c * cmi_per_re. u_c = 0 returns 0.
double cmi_gaussian(const SystemConfig& cfg, const Eigen::MatrixXcd& h_c,
                    long u_c);
double cmi_gaussian(const SystemConfig& cfg, const Eigen::MatrixXcd& h_c,
                    const Eigen::MatrixXd& sigma_x, long u_c);

/// Per-RE CMI estimated from the entropy difference 2 (h(y) - h(n)) with a
/// mixture-density estimate of h(y): each outer receive sample y_i is scored
/// against n_inner fresh transmit draws from the ensemble. Works for
/// non-Gaussian ensembles where no closed form exists. The density sum is
/// evaluated in the log domain with max-shift. std_error is the outer-loop
/// standard error.
///
/// Validity: the mixture must cover the receive space, which needs
/// n_inner >> (1 + SNR)^m_c. Keep to moderate SNR and small m_c; outside
/// that envelope the estimate biases high without the std_error showing
/// it.
MonteCarloEstimate cmi_monte_carlo(const SystemConfig& cfg,
                                   const Eigen::MatrixXcd& h_c,
                                   const EnsembleSpec& ensemble, long n_outer,
                                   long n_inner, std::uint64_t seed);

/// Sensing mutual information when the whole channel vector is sensed
/// (K = N*M_s): log2 det(I + sigma_ns^{-2} L^H (gram ⊗ I_{M_s}) L) with
/// R_H = L L^H. The identity det(I + AB) = det(I + BA) collapses the
/// sample-dimension determinant to the N*M_s channel dimension, so the
/// 2*B*N_CPI*M_s-dimensional form is never materialized.
double smi_full_channel(const WaveformMatrix& wave,
                        const SensingChannelModel& model,
                        const SystemConfig& cfg);

/// Sensing mutual information for 1 <= K <= N*M_s sensed entries:
/// the R_H log-det term minus the conditional-covariance term, each reduced
/// to channel dimension. R_{h_s|s} is PSD and structurally singular, so its
/// factor comes from an eigendecomposition square root rather than
/// Cholesky. K = N*M_s reduces exactly to smi_full_channel.
double smi_partial_channel(const WaveformMatrix& wave,
                           const SensingChannelModel& model,
                           const SystemConfig& cfg);

/// Minimum average MSE of the K sensing parameters implied by an SMI of
/// smi_bits: 2^{(log2 det(R_s) - smi_bits) / k}.
double mse_bound(double smi_bits, const Eigen::MatrixXcd& r_s, int k);

/// High-SNR closed forms with u_s sensing REs (2*u_s samples):
/// smi ~= K log2(2 u_s P_t / sigma_ns^2) + log2 det(R_s),
/// mse ~= sigma_ns^2 / (2 u_s P_t).
/// u_s = 0 is the no-observation endpoint: SMI 0 and the prior
/// geometric-mean variance 2^{log2 det(R_s) / k}.
double smi_approx(const SystemConfig& cfg, const Eigen::MatrixXcd& r_s,
                  int k, long u_s);
double mse_approx(const SystemConfig& cfg, long u_s);
double mse_approx(const SystemConfig& cfg, long u_s,
                  const Eigen::MatrixXcd& r_s, int k);

/// Mean and standard error of the SMI over independent waveform draws
/// (full- or partial-channel per the model), one sub-seed per trial.
MonteCarloEstimate ensemble_average_smi(const EnsembleSpec& ensemble,
                                        const SensingChannelModel& model,
                                        const SystemConfig& cfg, long trials,
                                        std::uint64_t seed);

}  // namespace isac
