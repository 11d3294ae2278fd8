#include "isaclim/oracle.hpp"

#include <cmath>
#include <vector>

#include "isaclim/errors.hpp"
#include "isaclim/linalg.hpp"
#include "isaclim/metrics.hpp"
#include "isaclim/parallel.hpp"
#include "isaclim/rng.hpp"

namespace isac {

namespace {
using RowMajorMap =
    Eigen::Map<const Eigen::Matrix<std::complex<double>, Eigen::Dynamic,
                                   Eigen::Dynamic, Eigen::RowMajor>>;
}

LmmseEstimator::LmmseEstimator(const WaveformMatrix& wave,
                               const SensingChannelModel& model,
                               const SystemConfig& cfg)
    : x_(wave.x), inv_sigma2_(1.0 / cfg.sigma2_ns), m_s_(cfg.m_s) {
  if (wave.x.cols() != cfg.n_tx)
    throw ConfigError("waveform antenna count does not match config");
  if (model.dim() != cfg.channel_dim())
    throw ConfigError("channel model dimension does not match config");
  Eigen::LLT<Eigen::MatrixXcd> prior(model.r_h);
  if (prior.info() != Eigen::Success)
    throw NumericalError("channel covariance is not positive definite");
  const int dim = model.dim();
  const Eigen::MatrixXcd prior_inv =
      prior.solve(Eigen::MatrixXcd::Identity(dim, dim));
  const Eigen::MatrixXcd normal = symmetrize(
      prior_inv + inv_sigma2_ * kron_identity(wave.gram, m_s_));
  condition_ = hermitian_condition(normal);
  normal_llt_.compute(normal);
  if (normal_llt_.info() != Eigen::Success)
    throw NumericalError("LMMSE normal equations are not positive definite");
}

Eigen::VectorXcd LmmseEstimator::estimate(
    const Eigen::MatrixXcd& y_samples) const {
  if (y_samples.rows() != x_.rows() || y_samples.cols() != m_s_)
    throw ConfigError("echo matrix must be 2*B*N_CPI x m_s");
  // (X ⊗ I)^H vec(Y) in the h_s ordering is the row-major vec of X^H Y.
  const Eigen::MatrixXcd proj = x_.adjoint() * y_samples;
  Eigen::VectorXcd rhs(proj.size());
  for (Eigen::Index n = 0; n < proj.rows(); ++n)
    rhs.segment(n * m_s_, m_s_) = proj.row(n).transpose();
  return normal_llt_.solve(inv_sigma2_ * rhs);
}

OracleResult lmmse_empirical_mse(const WaveformMatrix& wave,
                                 const SensingChannelModel& model,
                                 const SystemConfig& cfg, long trials,
                                 std::uint64_t seed) {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  const LmmseEstimator estimator(wave, model, cfg);
  Eigen::LLT<Eigen::MatrixXcd> prior(model.r_h);
  if (prior.info() != Eigen::Success)
    throw NumericalError("channel covariance is not positive definite");
  const Eigen::MatrixXcd chol = prior.matrixL();
  const int dim = model.dim();
  const int m_s = cfg.m_s;
  const long rows = wave.x.rows();
  const double noise_amp = std::sqrt(cfg.sigma2_ns);

  std::vector<double> per_trial(static_cast<std::size_t>(trials));
  parallel_for(trials, [&](std::int64_t t) {
    Rng rng(derive_seed(seed, SeedStream::trial,
                        static_cast<std::uint64_t>(t)));
    Eigen::VectorXcd z(dim);
    for (int i = 0; i < dim; ++i) z(i) = rng.cnormal();
    const Eigen::VectorXcd h = chol * z;
    // Y = X H + N with H(n, m) = h(n*M_s + m).
    RowMajorMap h_mat(h.data(), wave.x.cols(), m_s);
    Eigen::MatrixXcd y = wave.x * h_mat;
    for (long i = 0; i < rows; ++i)
      for (int m = 0; m < m_s; ++m) y(i, m) += noise_amp * rng.cnormal();
    const Eigen::VectorXcd h_hat = estimator.estimate(y);
    double err = 0.0;
    for (int idx : model.s_indices) err += std::norm(h(idx) - h_hat(idx));
    per_trial[static_cast<std::size_t>(t)] = err / model.k;
  });

  OracleResult result;
  result.trials = trials;
  double mean = 0.0;
  for (double v : per_trial) mean += v;
  mean /= static_cast<double>(trials);
  double var = 0.0;
  for (double v : per_trial) var += (v - mean) * (v - mean);
  var = trials > 1 ? var / static_cast<double>(trials - 1) : 0.0;
  result.empirical_mse = mean;
  result.std_error = std::sqrt(var / static_cast<double>(trials));
  result.condition = estimator.condition();
  result.ill_conditioned = estimator.condition() > 1e12;

  const double smi = model.k == dim ? smi_full_channel(wave, model, cfg)
                                    : smi_partial_channel(wave, model, cfg);
  result.bound = mse_bound(smi, model.r_s, model.k);
  return result;
}

}  // namespace isac
