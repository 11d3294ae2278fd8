#include "isaclim/linalg.hpp"

#include <cmath>
#include <sstream>

#include "isaclim/errors.hpp"

namespace isac {

Eigen::MatrixXcd symmetrize(const Eigen::MatrixXcd& a) {
  return 0.5 * (a + a.adjoint());
}

double hermitian_condition(const Eigen::MatrixXcd& a) {
  if (a.rows() == 0) return 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a,
                                                     Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (lo <= 0.0) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

double logdet2_hermitian_pd(const Eigen::MatrixXcd& a, const char* what) {
  if (a.rows() == 0) return 0.0;
  Eigen::LLT<Eigen::MatrixXcd> llt(a);
  if (llt.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "cholesky factorization of " << what << " failed (dim "
        << a.rows() << ", condition ~ " << hermitian_condition(a) << ")";
    throw NumericalError(msg.str());
  }
  const Eigen::MatrixXcd& l = llt.matrixLLT();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i)
    sum += std::log2(std::real(l(i, i)));
  return 2.0 * sum;
}

Eigen::MatrixXcd kron_identity(const Eigen::MatrixXcd& a, int m) {
  const Eigen::Index n_rows = a.rows() * m;
  const Eigen::Index n_cols = a.cols() * m;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n_rows, n_cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (int k = 0; k < m; ++k) out(i * m + k, j * m + k) = a(i, j);
  return out;
}

Eigen::MatrixXcd psd_sqrt_factor(const Eigen::MatrixXcd& a, double rel_tol) {
  if (a.rows() == 0) return Eigen::MatrixXcd(0, 0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(symmetrize(a));
  if (es.info() != Eigen::Success)
    throw NumericalError("eigendecomposition failed in psd_sqrt_factor");
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double cutoff = rel_tol * std::max(0.0, ev.maxCoeff());
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > cutoff) ++rank;
  Eigen::MatrixXcd f(a.rows(), rank);
  Eigen::Index col = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > cutoff)
      f.col(col++) = es.eigenvectors().col(i) * std::sqrt(ev(i));
  }
  return f;
}

}  // namespace isac
