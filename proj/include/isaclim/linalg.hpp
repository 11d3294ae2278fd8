#pragma once

#include <Eigen/Dense>

namespace isac {

/// (a + a^H)/2 — restores exact Hermitian symmetry after accumulated
/// floating-point asymmetry.
Eigen::MatrixXcd symmetrize(const Eigen::MatrixXcd& a);

/// Base-2 log-determinant of a Hermitian positive-definite matrix via
/// Cholesky. Throws NumericalError (with a condition-number report) if the
/// factorization fails. `what` names the matrix in the error message.
double logdet2_hermitian_pd(const Eigen::MatrixXcd& a, const char* what);

/// Condition number estimate from the extreme eigenvalues of a Hermitian
/// matrix.
double hermitian_condition(const Eigen::MatrixXcd& a);

/// a ⊗ I_m without a general Kronecker product: entries land at
/// (i*m + k, j*m + k).
Eigen::MatrixXcd kron_identity(const Eigen::MatrixXcd& a, int m);

/// Factor F with F F^H = a for Hermitian PSD a, possibly singular.
/// Eigenvalues below rel_tol * max eigenvalue are treated as zero and their
/// columns dropped, so F has exactly rank(a) columns.
Eigen::MatrixXcd psd_sqrt_factor(const Eigen::MatrixXcd& a,
                                 double rel_tol = 1e-12);

}  // namespace isac
