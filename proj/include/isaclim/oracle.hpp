#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "isaclim/config.hpp"
#include "isaclim/covariance.hpp"
#include "isaclim/waveform.hpp"

namespace isac {

struct OracleResult {
  double empirical_mse = 0.0;  // mean |s_k - s_hat_k|^2 over s and trials
  double bound = 0.0;          // mse_bound at the same configuration
  long trials = 0;
  double std_error = 0.0;  // Monte-Carlo SE of empirical_mse
  bool ill_conditioned = false;  // normal-equation condition > 1e12
  double condition = 1.0;
};

/// Linear MMSE estimator of the channel vector h_s from the echo samples.
/// All solves run at channel dimension N*M_s through the Gram matrix; the
/// 2*B*N_CPI*M_s-dimensional observation operator X ⊗ I is applied through
/// reshapes and never materialized.
class LmmseEstimator {
 public:
  LmmseEstimator(const WaveformMatrix& wave, const SensingChannelModel& model,
                 const SystemConfig& cfg);

  /// y_samples is the 2*B*N_CPI x M_s received echo matrix Y = X H + N.
  /// Returns the posterior-mean estimate of h_s (length N*M_s, entry
  /// n*M_s + m).
  Eigen::VectorXcd estimate(const Eigen::MatrixXcd& y_samples) const;

  double condition() const { return condition_; }

 private:
  Eigen::MatrixXcd x_;
  Eigen::LLT<Eigen::MatrixXcd> normal_llt_;
  double inv_sigma2_ = 0.0;
  double condition_ = 1.0;
  int m_s_ = 0;
};

/// Empirical LMMSE error versus the SMI-implied bound: each trial draws
/// h_s ~ CN(0, R_H) and fresh noise, estimates h_s from Y = X H + N, and
/// averages the squared error over the K sensed entries. The returned
/// bound is mse_bound for the same waveform and model.
OracleResult lmmse_empirical_mse(const WaveformMatrix& wave,
                                 const SensingChannelModel& model,
                                 const SystemConfig& cfg, long trials,
                                 std::uint64_t seed);

}  // namespace isac
