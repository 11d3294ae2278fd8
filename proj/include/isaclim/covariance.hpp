#pragma once

#include <vector>

#include <Eigen/Dense>

#include "isaclim/config.hpp"

namespace isac {

/// Constant-correlation covariance: variance * [(1-rho) I + rho 11^T].
/// Eigenvalues are variance*(1+(dim-1)rho) once and variance*(1-rho) with
/// multiplicity dim-1, so the PD range is rho in (-1/(dim-1), 1).
/// `label` names the coefficient in error messages.
Eigen::MatrixXd build_equicorrelation(int dim, double variance, double rho,
                                      const char* label = "rho");

/// Conditional covariance of a jointly Gaussian partition:
/// R_r - R_rs R_s^{-1} R_sr with R_sr = R_rs^H. The result is symmetrized
/// on output. Throws if r_s is not positive definite.
Eigen::MatrixXcd schur_conditional(const Eigen::MatrixXcd& r_r,
                                   const Eigen::MatrixXcd& r_rs,
                                   const Eigen::MatrixXcd& r_s);

/// Covariance structure of the sensing channel vector h_s = vec(H_s)
/// (entry n*M_s + m couples transmit antenna n with sensing Rx m), split
/// into the K sensed parameters s and the N*M_s - K remaining entries r.
///
/// r_h_cond is the conditional covariance of h_s given s, embedded back at
/// the h_s coordinates: entry (psi(i), psi(j)) carries r_cond(i, j) and
/// everything else is exactly zero. With K = N*M_s it is the zero matrix.
struct SensingChannelModel {
  Eigen::MatrixXcd r_h;        // N*M_s x N*M_s, Hermitian PD
  int k = 0;                   // sensing parameter count K
  std::vector<int> s_indices;  // h_s indices forming s, in parameter order
  std::vector<int> psi;        // r index -> h_s index (ascending complement)
  Eigen::MatrixXcd r_s, r_r, r_sr, r_rs;
  Eigen::MatrixXcd r_cond;    // R_{r|s}, (N*M_s-K)^2
  Eigen::MatrixXcd r_h_cond;  // R_{h_s|s} embedded at psi coordinates

  int dim() const { return static_cast<int>(r_h.rows()); }
};

/// Assembles the block covariance [[R_s, R_sr], [R_rs, R_r]] from
/// equicorrelation blocks with uniform variance alpha2_hs, permutes it to
/// the h_s ordering given by s_indices, verifies positive definiteness by
/// Cholesky, and computes the conditional covariances. s_indices defaults
/// to the first k entries of h_s when empty.
SensingChannelModel build_channel_model(const SystemConfig& cfg,
                                        const CorrelationSpec& corr, int k,
                                        std::vector<int> s_indices = {});

}  // namespace isac
