#include "isaclim/waveform.hpp"

#include <cmath>

#include "isaclim/covariance.hpp"
#include "isaclim/csv.hpp"
#include "isaclim/errors.hpp"
#include "isaclim/rng.hpp"

namespace isac {

const char* ensemble_name(Ensemble e) {
  switch (e) {
    case Ensemble::gaussian: return "gaussian";
    case Ensemble::constant_modulus: return "constant_modulus";
    case Ensemble::gaussian_correlated: return "gaussian_correlated";
  }
  return "unknown";
}

WaveformMatrix WaveformMatrix::from_samples(Eigen::MatrixXcd samples,
                                            Ensemble tag,
                                            std::uint64_t seed) {
  WaveformMatrix w;
  w.gram = samples.adjoint() * samples;
  w.x = std::move(samples);
  w.ensemble_tag = tag;
  w.seed = seed;
  return w;
}

WaveformMatrix gen_gaussian(const SystemConfig& cfg, double rho_x,
                            std::uint64_t seed) {
  cfg.validate();
  if (rho_x < 0.0 || rho_x >= 1.0)
    throw ConfigError("waveform rho_x = " + std::to_string(rho_x) +
                      " outside [0, 1)");
  const int n = cfg.n_tx;
  const long rows = cfg.samples_per_cpi();
  const double amp = std::sqrt(cfg.p_t);
  Rng rng(derive_seed(seed, SeedStream::waveform, 0));
  Eigen::MatrixXcd x(rows, n);
  if (rho_x == 0.0) {
    for (long i = 0; i < rows; ++i)
      for (int j = 0; j < n; ++j) x(i, j) = amp * rng.cnormal();
  } else {
    const Eigen::MatrixXd sigma_x = build_equicorrelation(n, 1.0, rho_x);
    const Eigen::MatrixXd chol = sigma_x.llt().matrixL();
    Eigen::VectorXcd z(n);
    for (long i = 0; i < rows; ++i) {
      for (int j = 0; j < n; ++j) z(j) = rng.cnormal();
      x.row(i) = (amp * (chol * z)).transpose();
    }
  }
  return WaveformMatrix::from_samples(
      std::move(x),
      rho_x == 0.0 ? Ensemble::gaussian : Ensemble::gaussian_correlated,
      seed);
}

WaveformMatrix gen_constant_modulus(const SystemConfig& cfg,
                                    std::uint64_t seed) {
  cfg.validate();
  const int n = cfg.n_tx;
  const long rows = cfg.samples_per_cpi();
  const double amp = std::sqrt(cfg.p_t);
  Rng rng(derive_seed(seed, SeedStream::waveform, 0));
  Eigen::MatrixXcd x(rows, n);
  for (long i = 0; i < rows; ++i) {
    for (int j = 0; j < n; ++j) {
      const double theta = rng.phase();
      x(i, j) = {amp * std::cos(theta), amp * std::sin(theta)};
    }
  }
  return WaveformMatrix::from_samples(std::move(x),
                                      Ensemble::constant_modulus, seed);
}

WaveformMatrix gen_waveform(const EnsembleSpec& spec, const SystemConfig& cfg,
                            std::uint64_t seed) {
  switch (spec.kind) {
    case Ensemble::gaussian:
      return gen_gaussian(cfg, 0.0, seed);
    case Ensemble::gaussian_correlated:
      return gen_gaussian(cfg, spec.rho_x, seed);
    case Ensemble::constant_modulus:
      if (spec.rho_x != 0.0)
        throw ConfigError(
            "a spatially correlated constant-modulus ensemble is not "
            "defined");
      return gen_constant_modulus(cfg, seed);
  }
  throw ConfigError("unknown ensemble");
}

void dump_waveform_csv(const WaveformMatrix& wave, const std::string& path) {
  std::vector<std::string> cols;
  for (Eigen::Index n = 0; n < wave.x.cols(); ++n) {
    cols.push_back("ant" + std::to_string(n) + "_re");
    cols.push_back("ant" + std::to_string(n) + "_im");
  }
  CsvWriter csv(path, cols);
  for (Eigen::Index i = 0; i < wave.x.rows(); ++i) {
    for (Eigen::Index n = 0; n < wave.x.cols(); ++n)
      csv.field(wave.x(i, n).real()).field(wave.x(i, n).imag());
    csv.end_row();
  }
}

}  // namespace isac
