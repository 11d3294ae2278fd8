#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "isaclim/covariance.hpp"
#include "isaclim/errors.hpp"
#include "isaclim/rng.hpp"
#include "oracles.hpp"

using isac::build_channel_model;
using isac::build_equicorrelation;
using isac::ConfigError;
using isac::CorrelationSpec;
using isac::schur_conditional;
using isac::SystemConfig;

namespace {

SystemConfig config_with_dims(int n_tx, int m_s) {
  SystemConfig cfg;
  cfg.n_tx = n_tx;
  cfg.m_s = m_s;
  cfg.bandwidth_b = 1;
  cfg.n_cpi = 4;
  return cfg;
}

}  // namespace

TEST_CASE("equicorrelation basic shapes and values") {
  SUBCASE("single element ignores rho") {
    const Eigen::MatrixXd m = build_equicorrelation(1, 1.0, 0.3);
    REQUIRE(m.rows() == 1);
    CHECK(m(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("zero correlation is a scaled identity") {
    const Eigen::MatrixXd m = build_equicorrelation(3, 2.0, 0.0);
    CHECK((m - 2.0 * Eigen::MatrixXd::Identity(3, 3)).norm() == 0.0);
  }
  SUBCASE("4x4 determinant matches (1+3 rho)(1-rho)^3") {
    const Eigen::MatrixXd m = build_equicorrelation(4, 1.0, 0.3);
    const double expected = (1.0 + 3.0 * 0.3) * std::pow(0.7, 3);
    CHECK(m.determinant() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(0.6517).epsilon(1e-4));
  }
}

TEST_CASE("equicorrelation eigenstructure over random parameters") {
  isac::Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 2 + static_cast<int>(rng.uniform01() * 10);
    const double variance = 0.2 + 4.0 * rng.uniform01();
    const double lower = -1.0 / (dim - 1);
    const double rho = lower + (1.0 - lower) * (0.02 + 0.96 * rng.uniform01());
    const Eigen::MatrixXd m = build_equicorrelation(dim, variance, rho);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m,
                                                      Eigen::EigenvaluesOnly);
    const double big = variance * (1.0 + (dim - 1) * rho);
    const double small = variance * (1.0 - rho);
    // Eigenvalues sorted ascending; the bulk eigenvalue may land on either
    // side of the spiked one depending on the sign of rho.
    std::vector<double> expected(static_cast<std::size_t>(dim), small);
    if (rho >= 0.0)
      expected.back() = big;
    else
      expected.front() = big;
    for (int i = 0; i < dim; ++i)
      CHECK(es.eigenvalues()(i) ==
            doctest::Approx(expected[static_cast<std::size_t>(i)])
                .epsilon(1e-10));
  }
}

TEST_CASE("equicorrelation rejects non-PD coefficients by name") {
  CHECK_THROWS_AS(build_equicorrelation(4, 1.0, 1.0), ConfigError);
  CHECK_THROWS_AS(build_equicorrelation(4, 1.0, -0.34), ConfigError);
  CHECK_THROWS_AS(build_equicorrelation(3, -1.0, 0.1), ConfigError);
  try {
    build_equicorrelation(4, 1.0, -0.5, "rho_r");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("rho_r") != std::string::npos);
  }
}

TEST_CASE("schur_conditional") {
  isac::Rng rng(7);
  SUBCASE("zero cross-covariance returns r_r") {
    const Eigen::MatrixXcd r_r = oracles::random_hermitian_pd(3, rng);
    const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(3, 2);
    const Eigen::MatrixXcd r_s = oracles::random_hermitian_pd(2, rng);
    const Eigen::MatrixXcd cond = schur_conditional(r_r, zero, r_s);
    CHECK((cond - 0.5 * (r_r + r_r.adjoint())).norm() == 0.0);
  }
  SUBCASE("scalar case") {
    const Eigen::MatrixXcd one = Eigen::MatrixXcd::Constant(1, 1, 1.0);
    const Eigen::MatrixXcd cross = Eigen::MatrixXcd::Constant(1, 1, 0.2);
    const Eigen::MatrixXcd cond = schur_conditional(one, cross, one);
    CHECK(cond(0, 0).real() == doctest::Approx(0.96).epsilon(1e-14));
  }
  SUBCASE("matches the naive-inverse formula on random PD instances") {
    for (int trial = 0; trial < 6; ++trial) {
      const Eigen::MatrixXcd full = oracles::random_hermitian_pd(8, rng);
      const Eigen::MatrixXcd r_s = full.topLeftCorner(4, 4);
      const Eigen::MatrixXcd r_r = full.bottomRightCorner(4, 4);
      const Eigen::MatrixXcd r_rs = full.bottomLeftCorner(4, 4);
      const Eigen::MatrixXcd got = schur_conditional(r_r, r_rs, r_s);
      const Eigen::MatrixXcd want = oracles::naive_schur(r_r, r_rs, r_s);
      CHECK((got - want).norm() <= 1e-10 * want.norm());
    }
  }
  SUBCASE("singular r_s is rejected") {
    const Eigen::MatrixXcd r_r = oracles::random_hermitian_pd(2, rng);
    const Eigen::MatrixXcd r_rs = Eigen::MatrixXcd::Constant(2, 2, 0.1);
    const Eigen::MatrixXcd r_s = Eigen::MatrixXcd::Zero(2, 2);
    CHECK_THROWS_AS(schur_conditional(r_r, r_rs, r_s), isac::NumericalError);
  }
}

TEST_CASE("schur complement of a PD composite stays PSD") {
  isac::Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 2 + static_cast<int>(rng.uniform01() * 4);
    const int r = 2 + static_cast<int>(rng.uniform01() * 4);
    const Eigen::MatrixXcd full = oracles::random_hermitian_pd(k + r, rng);
    const Eigen::MatrixXcd cond =
        schur_conditional(full.bottomRightCorner(r, r),
                          full.bottomLeftCorner(r, k),
                          full.topLeftCorner(k, k));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        cond, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es_r(
        full.bottomRightCorner(r, r), Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >=
          -1e-10 * es_r.eigenvalues().maxCoeff());
  }
}

TEST_CASE("build_channel_model structure") {
  const SystemConfig cfg = config_with_dims(1, 2);  // dim 2
  CorrelationSpec corr;

  SUBCASE("K = N*M_s gives a zero conditional covariance") {
    const auto model = build_channel_model(cfg, corr, 2);
    CHECK(model.r_h_cond.rows() == 2);
    CHECK(model.r_h_cond.norm() == 0.0);
    CHECK(model.r_cond.rows() == 0);
    CHECK(model.psi.empty());
  }
  SUBCASE("uncorrelated blocks make r_cond equal r_r exactly") {
    CorrelationSpec uncorr = corr;
    uncorr.rho_sr = 0.0;
    const auto model = build_channel_model(cfg, uncorr, 1);
    CHECK((model.r_cond - model.r_r).norm() == 0.0);
  }
  SUBCASE("index validation") {
    CHECK_THROWS_AS(build_channel_model(cfg, corr, 0), ConfigError);
    CHECK_THROWS_AS(build_channel_model(cfg, corr, 3), ConfigError);
    CHECK_THROWS_AS(build_channel_model(cfg, corr, 1, {5}), ConfigError);
    CHECK_THROWS_AS(build_channel_model(cfg, corr, 2, {0}), ConfigError);
    CHECK_THROWS_AS(build_channel_model(cfg, corr, 2, {0, 0}), ConfigError);
  }
}

TEST_CASE("channel model conditional covariance matches an element-wise "
          "evaluation") {
  const SystemConfig cfg = config_with_dims(4, 8);  // dim 32
  CorrelationSpec corr;
  corr.rho_s = 0.3;
  corr.rho_r = 0.3;
  corr.rho_sr = 0.2;
  const int k = 16;
  const auto model = build_channel_model(cfg, corr, k);

  // Closed-form equicorrelation inverse:
  // (1/(v(1-rho))) (I - rho/(1+(K-1)rho) 11^T), evaluated entrywise.
  const int r_dim = 16;
  const double v = cfg.alpha2_hs;
  const double rho = corr.rho_s;
  const double diag_inv = 1.0 / (v * (1.0 - rho));
  const double off = -rho / (1.0 + (k - 1) * rho);
  for (int i = 0; i < r_dim; ++i) {
    for (int j = 0; j < r_dim; ++j) {
      double sum = 0.0;
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
          const double inv_ab = diag_inv * ((a == b ? 1.0 : 0.0) + off);
          sum += (v * corr.rho_sr) * inv_ab * (v * corr.rho_sr);
        }
      }
      const double direct =
          (i == j ? v : v * corr.rho_r) - sum;
      CHECK(model.r_cond(i, j).real() ==
            doctest::Approx(direct).epsilon(1e-10));
      CHECK(model.r_cond(i, j).imag() == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("conditional covariance embedding hits exactly the psi "
          "coordinates") {
  const SystemConfig cfg = config_with_dims(2, 3);  // dim 6
  CorrelationSpec corr;
  const std::vector<int> s_idx = {1, 4};
  const auto model = build_channel_model(cfg, corr, 2, s_idx);
  REQUIRE(model.psi == std::vector<int>({0, 2, 3, 5}));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(model.r_h_cond(model.psi[i], model.psi[j]) ==
            model.r_cond(i, j));
  // Everything outside the psi image is exactly zero.
  for (int idx : s_idx) {
    CHECK(model.r_h_cond.row(idx).norm() == 0.0);
    CHECK(model.r_h_cond.col(idx).norm() == 0.0);
  }
}

TEST_CASE("arbitrary s-subsets equal the prefix construction under "
          "permutation") {
  const SystemConfig cfg = config_with_dims(2, 4);  // dim 8
  CorrelationSpec corr;
  const int k = 3;
  const auto prefix = build_channel_model(cfg, corr, k);
  isac::Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<int> all(8);
    for (int i = 0; i < 8; ++i) all[static_cast<std::size_t>(i)] = i;
    for (int i = 7; i > 0; --i) {
      const int j = static_cast<int>(rng.uniform01() * (i + 1));
      std::swap(all[static_cast<std::size_t>(i)],
                all[static_cast<std::size_t>(j)]);
    }
    const std::vector<int> s_idx(all.begin(), all.begin() + k);
    const auto model = build_channel_model(cfg, corr, k, s_idx);
    std::vector<int> pos(8);
    for (int i = 0; i < k; ++i) pos[static_cast<std::size_t>(i)] = s_idx[i];
    for (std::size_t i = 0; i < model.psi.size(); ++i)
      pos[static_cast<std::size_t>(k) + i] = model.psi[i];
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        CHECK(std::abs(model.r_h(pos[static_cast<std::size_t>(i)],
                                 pos[static_cast<std::size_t>(j)]) -
                       prefix.r_h(i, j)) <= 1e-12);
  }
}

TEST_CASE("non-PD composite assemblies are rejected") {
  const SystemConfig cfg = config_with_dims(4, 4);  // dim 16
  CorrelationSpec corr;
  corr.rho_s = 0.0;
  corr.rho_r = 0.0;
  corr.rho_sr = 0.9;  // cross block overwhelms the diagonal blocks
  CHECK_THROWS_AS(build_channel_model(cfg, corr, 8), ConfigError);
}
