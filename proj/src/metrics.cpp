#include "isaclim/metrics.hpp"

#include <cmath>
#include <vector>

#include "isaclim/errors.hpp"
#include "isaclim/linalg.hpp"
#include "isaclim/parallel.hpp"
#include "isaclim/rng.hpp"

namespace isac {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kLn2 = 0.6931471805599453094172321214581766;

// log2 det(I_r + scale * f^H (gram ⊗ I_m) f) for a factor f of a PSD
// covariance (f f^H = R). f may have fewer columns than rows when R is
// rank deficient; zero columns mean the term vanishes.
double logdet2_gram_reduced(const Eigen::MatrixXcd& f,
                            const Eigen::MatrixXcd& gram, int m,
                            double scale, const char* what) {
  if (f.cols() == 0) return 0.0;
  const Eigen::MatrixXcd kx = kron_identity(gram, m);
  const Eigen::MatrixXcd inner =
      Eigen::MatrixXcd::Identity(f.cols(), f.cols()) +
      scale * (f.adjoint() * kx * f);
  return logdet2_hermitian_pd(symmetrize(inner), what);
}

void check_wave_model(const WaveformMatrix& wave,
                      const SensingChannelModel& model,
                      const SystemConfig& cfg) {
  if (wave.gram.rows() != cfg.n_tx)
    throw ConfigError("waveform antenna count does not match config");
  if (model.dim() != cfg.channel_dim())
    throw ConfigError("channel model dimension does not match config");
}

// Draws one transmit sample row from the ensemble. `chol` is the coloring
// factor for the correlated Gaussian case, empty otherwise.
Eigen::RowVectorXcd draw_row(const EnsembleSpec& spec, int n, double amp,
                             const Eigen::MatrixXd& chol, Rng& rng) {
  Eigen::RowVectorXcd row(n);
  switch (spec.kind) {
    case Ensemble::gaussian:
      for (int j = 0; j < n; ++j) row(j) = amp * rng.cnormal();
      return row;
    case Ensemble::gaussian_correlated: {
      Eigen::VectorXcd z(n);
      for (int j = 0; j < n; ++j) z(j) = rng.cnormal();
      return (amp * (chol * z)).transpose();
    }
    case Ensemble::constant_modulus:
      for (int j = 0; j < n; ++j) {
        const double theta = rng.phase();
        row(j) = {amp * std::cos(theta), amp * std::sin(theta)};
      }
      return row;
  }
  throw ConfigError("unknown ensemble");
}

}  // namespace

double cmi_per_re(const SystemConfig& cfg, const Eigen::MatrixXcd& h_c) {
  if (h_c.rows() != cfg.n_tx || h_c.cols() != cfg.m_c)
    throw ConfigError("communication channel must be n_tx x m_c");
  const Eigen::MatrixXcd inner =
      Eigen::MatrixXcd::Identity(cfg.m_c, cfg.m_c) +
      (cfg.p_t / cfg.sigma2_nc) * (h_c.adjoint() * h_c);
  return 2.0 * logdet2_hermitian_pd(symmetrize(inner), "CMI matrix");
}

double cmi_per_re(const SystemConfig& cfg, const Eigen::MatrixXcd& h_c,
                  const Eigen::MatrixXd& sigma_x) {
  if (h_c.rows() != cfg.n_tx || h_c.cols() != cfg.m_c)
    throw ConfigError("communication channel must be n_tx x m_c");
  if (sigma_x.rows() != cfg.n_tx || sigma_x.cols() != cfg.n_tx)
    throw ConfigError("transmit covariance must be n_tx x n_tx");
  const Eigen::MatrixXcd inner =
      Eigen::MatrixXcd::Identity(cfg.m_c, cfg.m_c) +
      (cfg.p_t / cfg.sigma2_nc) *
          (h_c.adjoint() * sigma_x.cast<std::complex<double>>() * h_c);
  return 2.0 * logdet2_hermitian_pd(symmetrize(inner), "CMI matrix");
}

double cmi_gaussian(const SystemConfig& cfg, const Eigen::MatrixXcd& h_c,
                    long u_c) {
  if (u_c < 0) throw ConfigError("u_c must be >= 0");
  if (u_c == 0) return 0.0;
  return static_cast<double>(u_c) * cmi_per_re(cfg, h_c);
}

double cmi_gaussian(const SystemConfig& cfg, const Eigen::MatrixXcd& h_c,
                    const Eigen::MatrixXd& sigma_x, long u_c) {
  if (u_c < 0) throw ConfigError("u_c must be >= 0");
  if (u_c == 0) return 0.0;
  return static_cast<double>(u_c) * cmi_per_re(cfg, h_c, sigma_x);
}

MonteCarloEstimate cmi_monte_carlo(const SystemConfig& cfg,
                                   const Eigen::MatrixXcd& h_c,
                                   const EnsembleSpec& ensemble, long n_outer,
                                   long n_inner, std::uint64_t seed) {
  cfg.validate();
  if (h_c.rows() != cfg.n_tx || h_c.cols() != cfg.m_c)
    throw ConfigError("communication channel must be n_tx x m_c");
  if (n_outer < 1 || n_inner < 1)
    throw ConfigError("n_outer and n_inner must be >= 1");
  if (cfg.m_c > 8)
    throw ConfigError(
        "Monte-Carlo CMI is limited to m_c <= 8 (density evaluation cost)");
  const int n = cfg.n_tx;
  const int m = cfg.m_c;
  const double amp = std::sqrt(cfg.p_t);
  const double sigma2 = cfg.sigma2_nc;
  const double noise_amp = std::sqrt(sigma2);

  Eigen::MatrixXd chol;
  if (ensemble.kind == Ensemble::gaussian_correlated)
    chol = build_equicorrelation(n, 1.0, ensemble.rho_x, "rho_x")
               .llt()
               .matrixL();
  else if (ensemble.kind == Ensemble::constant_modulus &&
           ensemble.rho_x != 0.0)
    throw ConfigError(
        "a spatially correlated constant-modulus ensemble is not defined");

  // -log2 p_hat(y_i), one slot per outer sample so the reduction order is
  // independent of the thread layout.
  std::vector<double> neg_log2_density(static_cast<std::size_t>(n_outer));
  parallel_for(n_outer, [&](std::int64_t i) {
    Rng rng_out(derive_seed(seed, SeedStream::mc_outer,
                            static_cast<std::uint64_t>(i)));
    const Eigen::RowVectorXcd x = draw_row(ensemble, n, amp, chol, rng_out);
    Eigen::RowVectorXcd y = x * h_c;
    for (int c = 0; c < m; ++c) y(c) += noise_amp * rng_out.cnormal();

    // Streaming log-sum-exp of the inner mixture; fresh transmit draws per
    // outer sample keep the outer terms independent.
    Rng rng_in(derive_seed(seed, SeedStream::mc_inner,
                           static_cast<std::uint64_t>(i)));
    double shift = -std::numeric_limits<double>::infinity();
    double accum = 0.0;
    for (long j = 0; j < n_inner; ++j) {
      const Eigen::RowVectorXcd xj = draw_row(ensemble, n, amp, chol, rng_in);
      const double expo = -(y - xj * h_c).squaredNorm() / sigma2;
      if (expo <= shift) {
        accum += std::exp(expo - shift);
      } else {
        accum = accum * std::exp(shift - expo) + 1.0;
        shift = expo;
      }
    }
    // log p_hat = -m ln(pi sigma2) + shift + ln(accum / n_inner)
    const double ln_density = -m * std::log(kPi * sigma2) + shift +
                              std::log(accum / static_cast<double>(n_inner));
    neg_log2_density[static_cast<std::size_t>(i)] = -ln_density / kLn2;
  });

  double mean = 0.0;
  for (double v : neg_log2_density) mean += v;
  mean /= static_cast<double>(n_outer);
  double var = 0.0;
  for (double v : neg_log2_density) var += (v - mean) * (v - mean);
  var = n_outer > 1 ? var / static_cast<double>(n_outer - 1) : 0.0;

  const double h_noise = m * std::log2(kPi * std::exp(1.0) * sigma2);
  MonteCarloEstimate est;
  est.value = 2.0 * (mean - h_noise);
  est.std_error = 2.0 * std::sqrt(var / static_cast<double>(n_outer));
  return est;
}

double smi_full_channel(const WaveformMatrix& wave,
                        const SensingChannelModel& model,
                        const SystemConfig& cfg) {
  check_wave_model(wave, model, cfg);
  if (model.k != model.dim())
    throw ConfigError(
        "smi_full_channel requires K = N*M_s (all channel entries sensed)");
  Eigen::LLT<Eigen::MatrixXcd> llt(model.r_h);
  if (llt.info() != Eigen::Success)
    throw NumericalError("channel covariance is not positive definite");
  const Eigen::MatrixXcd l = llt.matrixL();
  return logdet2_gram_reduced(l, wave.gram, cfg.m_s, 1.0 / cfg.sigma2_ns,
                              "full-channel SMI matrix");
}

double smi_partial_channel(const WaveformMatrix& wave,
                           const SensingChannelModel& model,
                           const SystemConfig& cfg) {
  check_wave_model(wave, model, cfg);
  if (model.k < 1 || model.k > model.dim())
    throw ConfigError("model K outside [1, N*M_s]");
  Eigen::LLT<Eigen::MatrixXcd> llt(model.r_h);
  if (llt.info() != Eigen::Success)
    throw NumericalError("channel covariance is not positive definite");
  const Eigen::MatrixXcd l = llt.matrixL();
  const double term_full = logdet2_gram_reduced(
      l, wave.gram, cfg.m_s, 1.0 / cfg.sigma2_ns, "SMI channel term");
  const Eigen::MatrixXcd cond_factor = psd_sqrt_factor(model.r_h_cond);
  const double term_cond =
      logdet2_gram_reduced(cond_factor, wave.gram, cfg.m_s,
                           1.0 / cfg.sigma2_ns, "SMI conditional term");
  // R_H - R_{h_s|s} is PSD, so the difference is nonnegative up to
  // rounding.
  return std::max(0.0, term_full - term_cond);
}

double mse_bound(double smi_bits, const Eigen::MatrixXcd& r_s, int k) {
  if (k < 1 || r_s.rows() != k || r_s.cols() != k)
    throw ConfigError("mse_bound: r_s must be k x k with k >= 1");
  const double logdet = logdet2_hermitian_pd(r_s, "R_s");
  return std::exp2((logdet - smi_bits) / static_cast<double>(k));
}

double smi_approx(const SystemConfig& cfg, const Eigen::MatrixXcd& r_s,
                  int k, long u_s) {
  if (u_s < 0) throw ConfigError("u_s must be >= 0");
  if (r_s.rows() != k || r_s.cols() != k)
    throw ConfigError("smi_approx: r_s must be k x k");
  if (u_s == 0) return 0.0;
  const double snr = 2.0 * static_cast<double>(u_s) * cfg.p_t / cfg.sigma2_ns;
  return k * std::log2(snr) + logdet2_hermitian_pd(r_s, "R_s");
}

double mse_approx(const SystemConfig& cfg, long u_s) {
  if (u_s < 1)
    throw ConfigError(
        "mse_approx needs u_s >= 1 (pass R_s for the u_s = 0 prior)");
  return cfg.sigma2_ns / (2.0 * static_cast<double>(u_s) * cfg.p_t);
}

double mse_approx(const SystemConfig& cfg, long u_s,
                  const Eigen::MatrixXcd& r_s, int k) {
  if (u_s < 0) throw ConfigError("u_s must be >= 0");
  if (u_s == 0) {
    const double logdet = logdet2_hermitian_pd(r_s, "R_s");
    return std::exp2(logdet / static_cast<double>(k));
  }
  return mse_approx(cfg, u_s);
}

MonteCarloEstimate ensemble_average_smi(const EnsembleSpec& ensemble,
                                        const SensingChannelModel& model,
                                        const SystemConfig& cfg, long trials,
                                        std::uint64_t seed) {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  const bool full = model.k == model.dim();
  std::vector<double> smi(static_cast<std::size_t>(trials));
  parallel_for(trials, [&](std::int64_t t) {
    const std::uint64_t sub =
        derive_seed(seed, SeedStream::trial, static_cast<std::uint64_t>(t));
    const WaveformMatrix wave = gen_waveform(ensemble, cfg, sub);
    smi[static_cast<std::size_t>(t)] =
        full ? smi_full_channel(wave, model, cfg)
             : smi_partial_channel(wave, model, cfg);
  });
  double mean = 0.0;
  for (double v : smi) mean += v;
  mean /= static_cast<double>(trials);
  double var = 0.0;
  for (double v : smi) var += (v - mean) * (v - mean);
  var = trials > 1 ? var / static_cast<double>(trials - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(trials))};
}

}  // namespace isac
