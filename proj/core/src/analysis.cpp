#include "uncon/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "uncon/errors.hpp"
#include "uncon/manufactured.hpp"
#include "uncon/operators.hpp"
#include "uncon/random.hpp"

namespace uncon {

namespace {

Eigen::VectorXd to_vec(const VectorField& w) {
  const auto flat = flatten(w);
  return Eigen::Map<const Eigen::VectorXd>(flat.data(), static_cast<Eigen::Index>(flat.size()));
}

VectorField to_field(const Grid& grid, const Eigen::VectorXd& x) {
  VectorField w(grid);
  unflatten(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())), w);
  return w;
}

void check_cap(const Grid& grid) {
  if (grid.nx() > kDenseCap || grid.ny() > kDenseCap)
    throw GridTooLarge(grid.nx(), grid.ny(), kDenseCap);
}

// (I - P - Q) g, the map g = Lap u -> grad p_S(u)
VectorField stokes_residual_map(const PressureSolver& ps, const VectorField& g) {
  VectorField r = ps.gradient_part(g).grad_p;
  r -= ps.q_operator(g);
  return r;
}

// its transpose: (I - P) w - Lap^{-1} grad div w
VectorField stokes_residual_map_t(const PressureSolver& ps, const VectorField& w) {
  VectorField r = ps.gradient_part(w).grad_p;
  r -= ps.inverse_laplacian(grad(div(w)));
  return r;
}

}  // namespace

VectorField apply_operator(DenseOperator op, const PressureSolver& solver, const VectorField& w) {
  switch (op) {
    case DenseOperator::Projection:
      return solver.project(w).pa;
    case DenseOperator::QOp:
      return solver.q_operator(w);
    case DenseOperator::StokesPressureGrad:
      return solver.stokes_pressure(w).grad_p;
    case DenseOperator::UnconstrainedStokesB: {
      VectorField b = solver.stokes_pressure(w).grad_p;
      b -= laplacian(w);
      return b;
    }
    case DenseOperator::VectorLaplacian:
      return laplacian(w);
  }
  throw ValidationError("unknown dense operator");
}

Eigen::MatrixXd assemble_dense(DenseOperator op, const Grid& grid, SolverOptions options) {
  check_cap(grid);
  const PressureSolver solver(grid, options);
  VectorField e(grid);
  const int n = e.size();
  Eigen::MatrixXd m(n, n);
  Eigen::VectorXd unit = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < n; ++k) {
    unit[k] = 1.0;
    m.col(k) = to_vec(apply_operator(op, solver, to_field(grid, unit)));
    unit[k] = 0.0;
  }
  return m;
}

namespace {

std::vector<double> top3(const Eigen::VectorXd& ascending) {
  std::vector<double> out;
  for (Eigen::Index k = ascending.size() - 1; k >= 0 && out.size() < 3; --k)
    out.push_back(ascending[k]);
  return out;
}

void beta_dense(const Grid& grid, const BetaOptions& opt, BetaEstimate& est) {
  const Eigen::MatrixXd s = assemble_dense(DenseOperator::StokesPressureGrad, grid, opt.solver);
  Eigen::MatrixXd lap = assemble_dense(DenseOperator::VectorLaplacian, grid, opt.solver);
  lap = 0.5 * (lap + lap.transpose()).eval();
  // substitute u = Lap^{-1} g so the quotient becomes a standard symmetric problem
  Eigen::LDLT<Eigen::MatrixXd> ldlt(lap);
  const Eigen::MatrixXd linv = ldlt.solve(Eigen::MatrixXd::Identity(lap.rows(), lap.cols()));
  const Eigen::MatrixXd r = s * linv;
  const Eigen::MatrixXd m0 = r.transpose() * r;
  const Eigen::MatrixXd linv_sym = 0.5 * (linv + linv.transpose());
  for (double c : opt.c_values) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m0 + c * linv_sym, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NonConvergence(0, 1.0);
    est.top_eigenvalues.push_back(top3(es.eigenvalues()));
    est.sup_ratio.push_back(es.eigenvalues()[es.eigenvalues().size() - 1]);
  }
}

// Lanczos with full reorthogonalisation on T_c = R^T R + c Lap^{-1}.
void beta_lanczos(const Grid& grid, const BetaOptions& opt, BetaEstimate& est) {
  const PressureSolver ps(grid, opt.solver);
  Rng rng(opt.seed);
  const Eigen::VectorXd start = to_vec(random_vector(grid, rng));
  const int n = static_cast<int>(start.size());

  for (double c : opt.c_values) {
    auto apply_t = [&](const Eigen::VectorXd& x) {
      const VectorField g = to_field(grid, x);
      VectorField y = stokes_residual_map_t(ps, stokes_residual_map(ps, g));
      y.axpy(c, ps.inverse_laplacian(g));
      return to_vec(y);
    };

    const int mmax = std::min(opt.max_iterations, n);
    std::vector<Eigen::VectorXd> basis;
    std::vector<double> alpha, beta;
    basis.push_back(start.normalized());
    bool converged = false;
    std::vector<double> ritz;
    for (int m = 0; m < mmax; ++m) {
      Eigen::VectorXd w = apply_t(basis[m]);
      alpha.push_back(basis[m].dot(w));
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : basis) w -= q.dot(w) * q;
      const double b = w.norm();

      const int k = m + 1;
      Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
      for (int i = 0; i < k; ++i) {
        tri(i, i) = alpha[i];
        if (i + 1 < k) tri(i, i + 1) = tri(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
      const Eigen::VectorXd& th = es.eigenvalues();
      const double scale = std::max(std::abs(th[k - 1]), std::abs(th[0]));
      const int want = std::min(3, k);
      bool ok = k >= 3 || b == 0.0;
      for (int i = 0; i < want && ok; ++i) {
        const double resid = std::abs(b * es.eigenvectors()(k - 1, k - 1 - i));
        ok = resid <= opt.eig_tol * std::max(scale, 1e-300);
      }
      ritz = top3(th);
      est.iterations += 1;
      if (ok || b <= 1e-14 * std::max(scale, 1.0)) {
        converged = true;
        break;
      }
      beta.push_back(b);
      basis.push_back(w / b);
    }
    if (!converged) throw NonConvergence(est.iterations, 1.0);
    est.top_eigenvalues.push_back(ritz);
    est.sup_ratio.push_back(ritz.front());
  }
}

}  // namespace

BetaEstimate beta_estimate(const Grid& grid, const BetaOptions& options) {
  if (!grid.has_walls()) throw ValidationError("beta estimation needs a domain with walls");
  if (options.c_values.empty()) throw ValidationError("c_values must not be empty");
  for (double c : options.c_values)
    if (!(c >= 0.0)) throw ValidationError("penalty constants must be non-negative");
  BetaEstimate est;
  est.nx = grid.nx();
  est.ny = grid.ny();
  est.c_values = options.c_values;
  if (options.method == BetaMethod::Dense)
    beta_dense(grid, options, est);
  else
    beta_lanczos(grid, options, est);
  est.beta_emp = std::max(0.0, *std::min_element(est.sup_ratio.begin(), est.sup_ratio.end()));
  return est;
}

namespace {

Eigen::VectorXd line_spectrum(int n, double h, LineKind kind) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(-second_difference_matrix(n, h, kind),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace

double dirichlet_laplacian_min(const Grid& grid) {
  double best = std::numeric_limits<double>::infinity();
  for (Location loc : {Location::XFace, Location::YFace}) {
    const StencilKinds k = velocity_kinds(grid, loc, VelocityBc::NoSlip);
    const double lx = line_spectrum(grid.extent_x(loc), grid.dx(), k.x).minCoeff();
    const double ly = line_spectrum(grid.extent_y(loc), grid.dy(), k.y).minCoeff();
    best = std::min(best, lx + ly);
  }
  return best;
}

double neumann_laplacian_min_nonzero(const Grid& grid) {
  const StencilKinds k = scalar_kinds(grid, ScalarBc::Neumann0);
  const Eigen::VectorXd ex = line_spectrum(grid.nx(), grid.dx(), k.x);
  const Eigen::VectorXd ey = line_spectrum(grid.ny(), grid.dy(), k.y);
  const double tiny = 1e-9 * (ex.maxCoeff() + ey.maxCoeff());
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < ex.size(); ++i)
    for (Eigen::Index j = 0; j < ey.size(); ++j) {
      const double s = ex[i] + ey[j];
      if (s > tiny) best = std::min(best, s);
    }
  return best;
}

SpectrumReport spectrum(const Grid& grid, SolverOptions options) {
  const Eigen::MatrixXd b = assemble_dense(DenseOperator::UnconstrainedStokesB, grid, options);
  Eigen::EigenSolver<Eigen::MatrixXd> es(b, false);
  if (es.info() != Eigen::Success) throw NonConvergence(0, 1.0);
  SpectrumReport rep;
  rep.nx = grid.nx();
  rep.ny = grid.ny();
  rep.length_scale_sq = grid.ly() * grid.ly();
  const auto& ev = es.eigenvalues();
  rep.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
            [](const auto& a, const auto& c) {
              return a.real() < c.real() || (a.real() == c.real() && a.imag() < c.imag());
            });
  rep.min_real_part = rep.eigenvalues.front().real();
  rep.min_abs = std::abs(rep.eigenvalues.front());
  for (const auto& z : rep.eigenvalues) rep.min_abs = std::min(rep.min_abs, std::abs(z));
  rep.dirichlet_min = dirichlet_laplacian_min(grid);
  rep.neumann_min = neumann_laplacian_min_nonzero(grid);
  return rep;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw ValidationError("slope fit needs at least two matching points");
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw DegenerateSeries("slope fit needs positive data");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw DegenerateSeries("slope fit needs distinct abscissae");
  return (n * sxy - sx * sy) / den;
}

MmsTable mms_convergence(const MmsOptions& opt) {
  if (opt.resolutions.size() < 2 || opt.dts.size() < 3)
    throw ValidationError("mms needs >= 2 resolutions and >= 3 time steps");
  for (double dt : opt.dts) {
    const double steps = opt.t_end / dt;
    if (!(dt > 0.0) || std::abs(steps - std::round(steps)) > 1e-9 * steps)
      throw ValidationError("mms t_end must be a whole multiple of every dt");
  }
  MmsTable table;

  // spatial: march the steady problem to the scheme's (dt-independent) fixed point
  {
    std::vector<double> hs, errs;
    for (int n : opt.resolutions) {
      const Grid grid = Grid::channel(n, n);
      const ManufacturedFlow flow(grid.lx(), grid.ly(), opt.nu, 1.0, true);
      RunConfig cfg(grid);
      cfg.nu = opt.nu;
      cfg.dt = opt.steady_dt;
      cfg.t_end = opt.steady_dt * opt.steady_max_steps;
      cfg.u0 = flow.velocity(grid, 0.0);
      const VectorField f = flow.forcing(grid, 0.0);
      cfg.forcing.field = [f](const Grid&, double) { return f; };
      cfg.solver = opt.solver;
      const TimeStepper stepper(cfg);
      StepState s = stepper.initial_state();
      bool done = false;
      for (int k = 0; k < opt.steady_max_steps && !done; ++k) {
        StepState next = stepper.step(s);
        done = (next.u - s.u).max_abs() <= opt.steady_tol * next.u.max_abs();
        s = std::move(next);
      }
      if (!done) throw NonConvergence(opt.steady_max_steps, 1.0);
      const double err = norm(s.u - flow.sampled_velocity(grid, 0.0));
      table.spatial.push_back({n, opt.steady_dt, err});
      hs.push_back(grid.dx());
      errs.push_back(err);
    }
    table.spatial_order = log_log_slope(hs, errs);
  }

  // temporal: self-convergence on a fixed grid
  {
    const Grid grid = Grid::channel(opt.temporal_n, opt.temporal_n);
    const ManufacturedFlow flow(grid.lx(), grid.ly(), opt.nu, 1.0, false);
    std::vector<VectorField> finals;
    for (double dt : opt.dts) {
      RunConfig cfg(grid);
      cfg.nu = opt.nu;
      cfg.dt = dt;
      cfg.t_end = opt.t_end;
      cfg.u0 = flow.velocity(grid, 0.0);
      cfg.forcing.field = [flow](const Grid& g, double t) { return flow.forcing(g, t); };
      cfg.solver = opt.solver;
      RunResult r = run(cfg);
      table.temporal_exact.push_back(
          {opt.temporal_n, dt, norm(r.final_state.u - flow.velocity(grid, r.final_state.t))});
      finals.push_back(std::move(r.final_state.u));
    }
    std::vector<double> dts, diffs;
    for (std::size_t k = 0; k + 1 < finals.size(); ++k) {
      const double d = norm(finals[k] - finals[k + 1]);
      table.temporal.push_back({opt.temporal_n, opt.dts[k], d});
      dts.push_back(opt.dts[k]);
      diffs.push_back(d);
    }
    table.temporal_order = log_log_slope(dts, diffs);
  }
  return table;
}

double fit_decay_rate(const std::vector<double>& t, const std::vector<double>& q, double floor) {
  if (t.size() != q.size()) throw ValidationError("time and value series differ in length");
  if (t.size() < 10) throw DegenerateSeries("decay fit needs at least 10 samples");
  const std::size_t first = t.size() / 2;
  const std::size_t n = t.size() - first;
  double st = 0, sl = 0, stt = 0, stl = 0;
  for (std::size_t i = first; i < t.size(); ++i) {
    if (!(q[i] > floor) || !std::isfinite(q[i]))
      throw DegenerateSeries("decaying quantity fell below the fit floor at t = " +
                             std::to_string(t[i]));
    const double l = std::log(q[i]);
    st += t[i];
    sl += l;
    stt += t[i] * t[i];
    stl += t[i] * l;
  }
  const double den = n * stt - st * st;
  if (den == 0.0) throw DegenerateSeries("decay fit needs distinct times");
  return -(n * stl - st * sl) / den;
}

double decay_fit(const std::vector<DiagnosticsRecord>& series, DecayQuantity quantity,
                 double floor) {
  std::vector<double> t, q;
  t.reserve(series.size());
  q.reserve(series.size());
  for (const auto& d : series) {
    t.push_back(d.t);
    switch (quantity) {
      case DecayQuantity::DivNorm:
        q.push_back(std::sqrt(d.div_norm_sq));
        break;
      case DecayQuantity::Energy:
        q.push_back(d.energy);
        break;
      case DecayQuantity::GradNormSq:
        q.push_back(d.grad_norm_sq);
        break;
      case DecayQuantity::LapNormSq:
        q.push_back(d.lap_norm_sq);
        break;
      case DecayQuantity::StokesGradSq:
        q.push_back(d.stokes_grad_sq);
        break;
    }
  }
  return fit_decay_rate(t, q, floor);
}

VectorField divergence_mode(const Grid& grid) {
  const double ly = grid.ly();
  return VectorField::sample(
      grid, [](double, double) { return 0.0; },
      [ly](double, double y) { return ly / std::numbers::pi * std::sin(std::numbers::pi * y / ly); });
}

NonhomogeneousData static_divergence(double amplitude) {
  NonhomogeneousData nh;
  nh.h = [amplitude](const Grid& g, double) {
    const double k = 2.0 * std::numbers::pi / g.lx();
    return ScalarField::sample(g, [=](double x, double) { return amplitude * std::cos(k * x); });
  };
  return nh;
}

DecayResult decay_experiment(const DecayOptions& opt) {
  const Grid grid = Grid::channel(opt.nx, opt.ny, opt.lx, opt.ly);
  RunConfig cfg(grid);
  cfg.nu = opt.nu;
  cfg.dt = opt.dt;
  cfg.t_end = opt.t_end;
  cfg.u0 = divergence_mode(grid);
  cfg.advection = opt.advection;
  cfg.solver = opt.solver;
  if (opt.h_amplitude != 0.0) cfg.nonhomogeneous = static_divergence(opt.h_amplitude);
  DecayResult res{0.0, 0.0, 0.0, run(cfg)};
  res.rate = decay_fit(res.run.series, DecayQuantity::DivNorm);
  res.expected = opt.nu * std::numbers::pi * std::numbers::pi / (opt.ly * opt.ly);
  res.relative_error = std::abs(res.rate - res.expected) / res.expected;
  return res;
}

}  // namespace uncon
