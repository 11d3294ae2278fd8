#include "isaclim/covariance.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "isaclim/errors.hpp"
#include "isaclim/linalg.hpp"

namespace isac {

Eigen::MatrixXd build_equicorrelation(int dim, double variance, double rho,
                                      const char* label) {
  if (dim < 1) throw ConfigError("equicorrelation dim must be >= 1");
  if (variance <= 0.0)
    throw ConfigError("equicorrelation variance must be > 0");
  if (dim > 1) {
    const double lower = -1.0 / (dim - 1);
    if (rho <= lower || rho >= 1.0) {
      std::ostringstream msg;
      msg << label << " = " << rho << " gives a non-PD " << dim << "x" << dim
          << " equicorrelation matrix (need " << label << " in (" << lower
          << ", 1))";
      throw ConfigError(msg.str());
    }
  }
  Eigen::MatrixXd out =
      Eigen::MatrixXd::Constant(dim, dim, variance * rho);
  out.diagonal().setConstant(variance);
  return out;
}

Eigen::MatrixXcd schur_conditional(const Eigen::MatrixXcd& r_r,
                                   const Eigen::MatrixXcd& r_rs,
                                   const Eigen::MatrixXcd& r_s) {
  if (r_s.rows() != r_s.cols() || r_r.rows() != r_r.cols() ||
      r_rs.rows() != r_r.rows() || r_rs.cols() != r_s.rows())
    throw ConfigError("schur_conditional: nonconformal block dimensions");
  if (r_rs.size() == 0 || r_rs.isZero(0.0)) return symmetrize(r_r);
  Eigen::LLT<Eigen::MatrixXcd> llt(r_s);
  if (llt.info() != Eigen::Success)
    throw NumericalError("schur_conditional: r_s is singular or not PD");
  // R_s^{-1} R_sr with R_sr = R_rs^H
  const Eigen::MatrixXcd solved = llt.solve(r_rs.adjoint());
  return symmetrize(r_r - r_rs * solved);
}

SensingChannelModel build_channel_model(const SystemConfig& cfg,
                                        const CorrelationSpec& corr, int k,
                                        std::vector<int> s_indices) {
  cfg.validate();
  corr.validate();
  const int dim = cfg.channel_dim();
  if (k < 1 || k > dim)
    throw ConfigError("sensing parameter count k = " + std::to_string(k) +
                      " outside [1, " + std::to_string(dim) + "]");
  if (s_indices.empty()) {
    s_indices.resize(k);
    std::iota(s_indices.begin(), s_indices.end(), 0);
  }
  if (static_cast<int>(s_indices.size()) != k)
    throw ConfigError("s_indices cardinality does not match k");
  std::vector<char> taken(dim, 0);
  for (int idx : s_indices) {
    if (idx < 0 || idx >= dim)
      throw ConfigError("s index " + std::to_string(idx) +
                        " outside [0, " + std::to_string(dim) + ")");
    if (taken[idx]) throw ConfigError("duplicate s index");
    taken[idx] = 1;
  }

  SensingChannelModel model;
  model.k = k;
  model.s_indices = std::move(s_indices);
  const int r_dim = dim - k;
  model.psi.reserve(r_dim);
  for (int i = 0; i < dim; ++i)
    if (!taken[i]) model.psi.push_back(i);

  const double a2 = cfg.alpha2_hs;
  model.r_s = build_equicorrelation(k, a2, corr.rho_s, "rho_s")
                  .cast<std::complex<double>>();
  if (r_dim > 0) {
    model.r_r = build_equicorrelation(r_dim, a2, corr.rho_r, "rho_r")
                    .cast<std::complex<double>>();
    model.r_sr = Eigen::MatrixXcd::Constant(k, r_dim, a2 * corr.rho_sr);
    model.r_rs = model.r_sr.adjoint();
  } else {
    model.r_r.resize(0, 0);
    model.r_sr.resize(k, 0);
    model.r_rs.resize(0, k);
  }

  // Scatter the (s, r)-ordered blocks into h_s coordinates.
  std::vector<int> pos(dim);
  for (int i = 0; i < k; ++i) pos[i] = model.s_indices[i];
  for (int i = 0; i < r_dim; ++i) pos[k + i] = model.psi[i];
  model.r_h.resize(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const std::complex<double> v =
          (i < k) ? (j < k ? model.r_s(i, j) : model.r_sr(i, j - k))
                  : (j < k ? model.r_rs(i - k, j) : model.r_r(i - k, j - k));
      model.r_h(pos[i], pos[j]) = v;
    }
  }

  Eigen::LLT<Eigen::MatrixXcd> llt(model.r_h);
  if (llt.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "assembled channel covariance is not positive definite "
        << "(rho_s = " << corr.rho_s << ", rho_r = " << corr.rho_r
        << ", rho_sr = " << corr.rho_sr << ", K = " << k << ", dim = " << dim
        << "); the cross-correlation rho_sr is the usual culprit";
    throw ConfigError(msg.str());
  }

  model.r_cond = schur_conditional(model.r_r, model.r_rs, model.r_s);
  model.r_h_cond = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < r_dim; ++i)
    for (int j = 0; j < r_dim; ++j)
      model.r_h_cond(model.psi[i], model.psi[j]) = model.r_cond(i, j);
  return model;
}

}  // namespace isac
