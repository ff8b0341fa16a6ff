#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dense_oracle.hpp"
#include "test_support.hpp"
#include "uncon/analysis.hpp"
#include "uncon/errors.hpp"
#include "uncon/random.hpp"

using namespace uncon;
using testing_support::vec;
using testing_support::vfield;

TEST(DenseAssembly, ProjectionIsAnOrthogonalProjector) {
  const Grid g = Grid::channel(10, 12);
  const Eigen::MatrixXd p = assemble_dense(DenseOperator::Projection, g);
  EXPECT_LE((p * p - p).norm(), 1e-8);
  EXPECT_LE((p - p.transpose()).norm(), 1e-8);
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(0.5 * (p + p.transpose())).eigenvalues();
  for (int k = 0; k < ev.size(); ++k) EXPECT_LE(std::min(std::abs(ev[k]), std::abs(ev[k] - 1.0)), 1e-8);
  // rank of I - P equals the number of non-constant pressure modes
  EXPECT_NEAR((Eigen::MatrixXd::Identity(p.rows(), p.cols()) - p).trace(), g.nx() * g.ny() - 1, 1e-6);
}

TEST(DenseAssembly, PeriodicIdentityDefectVanishes) {
  const Grid g = Grid::periodic(12, 12);
  const Eigen::MatrixXd p = assemble_dense(DenseOperator::Projection, g);
  const Eigen::MatrixXd q = assemble_dense(DenseOperator::QOp, g);
  const Eigen::Index n = p.rows();
  // restrict to mean-free velocities, on which the Laplacian is invertible
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  const Eigen::Index half = n / 2;
  m.topLeftCorner(half, half).array() -= 1.0 / static_cast<double>(half);
  m.bottomRightCorner(n - half, n - half).array() -= 1.0 / static_cast<double>(n - half);
  EXPECT_LE(((Eigen::MatrixXd::Identity(n, n) - p - q) * m).norm(), 1e-8);
}

TEST(DenseAssembly, AgreesWithMatrixFreeAndOracle) {
  const Grid g = Grid::channel(12, 10);
  const PressureSolver ps(g);
  const oracle::Layout l(g);
  Rng rng(3);
  const VectorField w = random_vector(g, rng);
  for (DenseOperator op : {DenseOperator::Projection, DenseOperator::QOp, DenseOperator::StokesPressureGrad,
                           DenseOperator::UnconstrainedStokesB, DenseOperator::VectorLaplacian}) {
    const Eigen::MatrixXd a = assemble_dense(op, g);
    const Eigen::VectorXd direct = vec(apply_operator(op, ps, w));
    EXPECT_LE((a * vec(w) - direct).norm(), 1e-8 * direct.norm());
  }
  EXPECT_LE((assemble_dense(DenseOperator::UnconstrainedStokesB, g) - oracle::unconstrained_b(l)).norm(),
            1e-7 * oracle::unconstrained_b(l).norm());
}

TEST(DenseAssembly, RefusesLargeGrids) {
  EXPECT_THROW(assemble_dense(DenseOperator::Projection, Grid::channel(kDenseCap + 1, 8)), GridTooLarge);
}

TEST(Beta, SupRatioIsNonIncreasingInPenalty) {
  const BetaEstimate b = beta_estimate(Grid::channel(12, 12));
  ASSERT_EQ(b.sup_ratio.size(), b.c_values.size());
  for (std::size_t k = 1; k < b.sup_ratio.size(); ++k) EXPECT_LE(b.sup_ratio[k], b.sup_ratio[k - 1] + 1e-12);
  EXPECT_GT(b.sup_ratio.front(), 0.0);
  EXPECT_LT(b.sup_ratio.front(), 1.0);
  EXPECT_GE(b.beta_emp, 0.0);
}

TEST(Beta, DenseRatioMatchesOracleRayleighQuotient) {
  // independent evaluation: generalised eigenproblem S^T S x = mu L^T L x
  const Grid g = Grid::channel(10, 10);
  const oracle::Layout l(g);
  const Eigen::MatrixXd s = oracle::stokes_pressure_grad(l);
  const Eigen::MatrixXd lap = oracle::vector_laplacian(l);
  const Eigen::MatrixXd r = s * lap.inverse();
  const double want = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(r.transpose() * r).eigenvalues().maxCoeff();
  BetaOptions opt;
  opt.c_values = {0.0};
  EXPECT_NEAR(beta_estimate(g, opt).sup_ratio[0], want, 1e-8);
}

TEST(Beta, LanczosAgreesWithDense) {
  const Grid g = Grid::channel(16, 16);
  BetaOptions dense;
  dense.c_values = {0.0, 10.0};
  BetaOptions lanczos = dense;
  lanczos.method = BetaMethod::Lanczos;
  const BetaEstimate a = beta_estimate(g, dense);
  const BetaEstimate b = beta_estimate(g, lanczos);
  for (std::size_t k = 0; k < a.c_values.size(); ++k)
    EXPECT_NEAR(b.top_eigenvalues[k][0], a.top_eigenvalues[k][0], 1e-6 * std::abs(a.top_eigenvalues[k][0]));
  EXPECT_GT(b.iterations, 0);
}

TEST(Beta, RejectsGridsWithoutWalls) {
  EXPECT_THROW(beta_estimate(Grid::periodic(8, 8)), ValidationError);
}

TEST(Spectrum, PositiveAndNearLaplacianMinimum) {
  const Grid g = Grid::channel(16, 16);
  const SpectrumReport s = spectrum(g);
  EXPECT_GT(s.min_real_part, 0.0);
  EXPECT_NEAR(s.min_real_part, s.dirichlet_min, 0.1 * s.dirichlet_min);
  for (std::size_t k = 1; k < s.eigenvalues.size(); ++k)
    EXPECT_LE(s.eigenvalues[k - 1].real(), s.eigenvalues[k].real() + 1e-12);
}

TEST(Spectrum, LaplacianMinimaFromClosedForms) {
  const Grid g = Grid::channel(16, 20, 2.0, 1.0);
  const double dy = g.dy();
  const double want_d = 4.0 / (dy * dy) * std::pow(std::sin(std::numbers::pi * dy / 2.0), 2);
  // channel: the slowest no-slip mode is x-constant, the Neumann one is cos(pi x) along the period
  EXPECT_NEAR(dirichlet_laplacian_min(g), want_d, 1e-9 * want_d);
  const double dx = g.dx();
  const double kx = 4.0 / (dx * dx) * std::pow(std::sin(std::numbers::pi * dx / 2.0), 2);
  EXPECT_NEAR(neumann_laplacian_min_nonzero(g), std::min(kx, want_d), 1e-9);
}

TEST(DecayFit, RecoversSyntheticRate) {
  std::vector<double> t, q;
  for (int k = 0; k <= 100; ++k) {
    t.push_back(0.01 * k);
    q.push_back(2.0 * std::exp(-3.0 * t.back()));
  }
  EXPECT_NEAR(fit_decay_rate(t, q), 3.0, 1e-10);
}

TEST(DecayFit, DegenerateSeriesThrow) {
  EXPECT_THROW(fit_decay_rate({0.0, 0.1, 0.2}, {1.0, 0.9, 0.8}), DegenerateSeries);
  std::vector<double> t(20), q(20, 0.0);
  for (int k = 0; k < 20; ++k) t[k] = k;
  EXPECT_THROW(fit_decay_rate(t, q), DegenerateSeries);
}

TEST(LogLogSlope, PowerLaw) {
  EXPECT_NEAR(log_log_slope({1.0, 2.0, 4.0, 8.0}, {3.0, 12.0, 48.0, 192.0}), 2.0, 1e-12);
}

TEST(Decay, SmallChannelRate) {
  DecayOptions opt;
  opt.nx = opt.ny = 32;
  opt.nu = 0.2;
  opt.dt = 2e-3;
  opt.t_end = 0.5;
  const DecayResult r = decay_experiment(opt);
  EXPECT_LT(r.relative_error, 0.02);
  EXPECT_NEAR(r.expected, 0.2 * std::numbers::pi * std::numbers::pi, 1e-12);
}

TEST(Mms, RejectsEndTimeOffTheStepLattice) {
  MmsOptions opt;
  opt.t_end = 0.5;  // 0.5 / 0.04 is not an integer
  EXPECT_THROW(mms_convergence(opt), ValidationError);
}
