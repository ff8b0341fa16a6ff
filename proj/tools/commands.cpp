#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "uncon/analysis.hpp"
#include "uncon/errors.hpp"
#include "uncon/io.hpp"
#include "uncon/operators.hpp"
#include "uncon/random.hpp"

namespace uncon::cli {

namespace {

RunMetadata metadata(const Context& ctx, const char* command, const Grid& grid) {
  RunMetadata m;
  m.command = command;
  m.grid = grid;
  m.solver_tol = ctx.config.solver_tol;
  m.max_iterations = ctx.config.max_iterations;
  m.preconditioner = ctx.config.preconditioner;
  m.seed = ctx.seed;
  m.config_text = ctx.config_text;
  return m;
}

Grid square(const Context& ctx, int n) {
  return Grid(ctx.config.topology, n, n, ctx.config.lx, ctx.config.ly);
}

}  // namespace

int run_command(const Context& ctx) {
  const RunConfig rc = make_run_config(ctx.config, ctx.seed);
  std::vector<DiagnosticsRecord> partial;
  RunMetadata meta = metadata(ctx, "run", rc.grid);
  try {
    RunResult r = run(rc, [&](const StepState& s) { partial.push_back(s.diagnostics); });
    write_csv(r.series, ctx.out / "diagnostics.csv");
    const ScalarField p = r.final_state.split.total(rc.nu);
    write_field(r.final_state.u, &p, ctx.out / "final_state.vtk");
    write_field(r.final_state.u.u, ctx.out / "final_u.csv");
    write_field(r.final_state.u.v, ctx.out / "final_v.csv");
    write_field(p.values, ctx.out / "final_p.csv");

    const auto& last = r.series.back();
    meta.results = {{"steps", double(last.step)},
                    {"t_final", last.t},
                    {"sup_grad_sq", r.aggregates.sup_grad_sq},
                    {"sum_lap_sq_dt", r.aggregates.sum_lap_sq_dt},
                    {"sum_rate_sq_dt", r.aggregates.sum_rate_sq_dt},
                    {"sum_adv_sq_dt", r.aggregates.sum_adv_sq_dt},
                    {"final_energy", last.energy},
                    {"final_div_norm", std::sqrt(last.div_norm_sq)}};
    write_metadata(meta, ctx.out / "metadata.json");
    std::printf("run: %ld steps to t = %.6g, sup |grad u|^2 = %.6g, final energy = %.6g\n",
                last.step, last.t, r.aggregates.sup_grad_sq, last.energy);
    return 0;
  } catch (const Blowup& b) {
    write_csv(partial, ctx.out / "diagnostics.csv");
    meta.results = {{"blowup_step", double(b.step())}};
    write_metadata(meta, ctx.out / "metadata.json");
    throw;
  }
}

int project_command(const Context& ctx) {
  const Grid grid = make_grid(ctx.config);
  const PressureSolver ps(grid, make_solver_options(ctx.config));
  Rng rng(ctx.seed);
  std::vector<std::vector<double>> rows;
  double worst[5] = {0, 0, 0, 0, 0};
  for (int k = 0; k < ctx.config.samples; ++k) {
    VectorField a = random_vector(grid, rng);
    VectorField b = random_vector(grid, rng);
    const Projection pa = ps.project(a);
    const VectorField pb = ps.project(b).pa;
    const double na = norm(a);
    const double idem = norm(ps.project(pa.pa).pa - pa.pa) / na;
    const double pyth =
        std::abs(inner(pa.pa, pa.pa) + inner(a - pa.pa, a - pa.pa) - inner(a, a)) / (na * na);
    const double sym = std::abs(inner(pa.pa, b) - inner(a, pb)) / (na * norm(b));
    const ScalarField phi = random_scalar(grid, rng);
    const VectorField gphi = grad(phi);
    const double orth = std::abs(inner(pa.pa, gphi)) / (na * norm(gphi));
    double ipq = std::nan("");
    if (!grid.has_walls()) {
      a.u.subtract_mean();
      a.v.subtract_mean();
      ipq = norm(a - ps.project(a).pa - ps.q_operator(a)) / norm(a);
    }
    const double vals[5] = {idem, pyth, sym, orth, ipq};
    for (int i = 0; i < 5; ++i)
      if (!std::isnan(vals[i])) worst[i] = std::max(worst[i], vals[i]);
    rows.push_back({double(k), idem, pyth, sym, orth, ipq});
    if (k == 0) write_field(pa.pa, &pa.q, ctx.out / "projected_sample.vtk");
  }
  write_csv({"sample", "idempotence", "pythagoras", "symmetry", "orthogonality", "i_minus_p_minus_q"},
            rows, ctx.out / "project.csv");
  RunMetadata meta = metadata(ctx, "project", grid);
  meta.results = {{"max_idempotence", worst[0]},
                  {"max_pythagoras", worst[1]},
                  {"max_symmetry", worst[2]},
                  {"max_orthogonality", worst[3]}};
  if (!grid.has_walls()) meta.results["max_i_minus_p_minus_q"] = worst[4];
  write_metadata(meta, ctx.out / "metadata.json");
  std::printf("project (%d samples): idempotence %.3e, pythagoras %.3e, symmetry %.3e, orthogonality %.3e",
              ctx.config.samples, worst[0], worst[1], worst[2], worst[3]);
  if (grid.has_walls())
    std::printf(", I-P-Q n/a (walls present)\n");
  else
    std::printf(", I-P-Q %.3e\n", worst[4]);
  return 0;
}

int beta_command(const Context& ctx) {
  BetaOptions opt;
  opt.method = ctx.config.beta_method == "lanczos" ? BetaMethod::Lanczos : BetaMethod::Dense;
  opt.c_values = ctx.config.c_values;
  opt.seed = ctx.seed;
  opt.solver = make_solver_options(ctx.config);
  std::vector<std::vector<double>> rows, summary;
  RunMetadata meta = metadata(ctx, "beta", make_grid(ctx.config));
  for (int n : ctx.config.sizes) {
    const BetaEstimate est = beta_estimate(square(ctx, n), opt);
    for (std::size_t k = 0; k < est.c_values.size(); ++k) {
      std::vector<double> row = {double(n), est.c_values[k], est.sup_ratio[k]};
      for (std::size_t i = 0; i < 3; ++i)
        row.push_back(i < est.top_eigenvalues[k].size() ? est.top_eigenvalues[k][i] : std::nan(""));
      rows.push_back(row);
    }
    summary.push_back({double(n), est.beta_emp, est.sup_ratio.front(), double(est.iterations)});
    meta.results["beta_emp_" + std::to_string(n)] = est.beta_emp;
    meta.results["sup_ratio_c0_" + std::to_string(n)] = est.sup_ratio.front();
    std::printf("beta %dx%d: beta_emp = %.6f, sup ratio at c = %g: %.6f\n", n, n, est.beta_emp,
                est.c_values.front(), est.sup_ratio.front());
  }
  write_csv({"n", "c", "sup_ratio", "eig1", "eig2", "eig3"}, rows, ctx.out / "beta.csv");
  write_csv({"n", "beta_emp", "sup_ratio_first_c", "iterations"}, summary,
            ctx.out / "beta_summary.csv");
  write_metadata(meta, ctx.out / "metadata.json");
  return 0;
}

int spectrum_command(const Context& ctx) {
  RunMetadata meta = metadata(ctx, "spectrum", make_grid(ctx.config));
  std::vector<std::vector<double>> summary;
  for (int n : ctx.config.sizes) {
    const SpectrumReport rep = spectrum(square(ctx, n), make_solver_options(ctx.config));
    std::vector<std::vector<double>> rows;
    for (const auto& z : rep.eigenvalues) rows.push_back({z.real(), z.imag()});
    write_csv({"re", "im"}, rows, ctx.out / ("spectrum_" + std::to_string(n) + ".csv"));
    summary.push_back({double(n), rep.min_real_part, rep.min_abs, rep.dirichlet_min,
                       rep.neumann_min});
    meta.results["min_real_" + std::to_string(n)] = rep.min_real_part;
    meta.results["min_abs_" + std::to_string(n)] = rep.min_abs;
    std::printf("spectrum %dx%d: min Re = %.6f, min |lambda| = %.6f, Dirichlet min = %.6f, "
                "Neumann min = %.6f\n",
                n, n, rep.min_real_part, rep.min_abs, rep.dirichlet_min, rep.neumann_min);
  }
  write_csv({"n", "min_real", "min_abs", "dirichlet_min", "neumann_min"}, summary,
            ctx.out / "spectrum_summary.csv");
  write_metadata(meta, ctx.out / "metadata.json");
  return 0;
}

int mms_command(const Context& ctx) {
  if (ctx.config.topology != Topology::PeriodicChannel)
    throw ValidationError("mms runs on topology = channel");
  MmsOptions opt;
  opt.resolutions = ctx.config.resolutions;
  opt.dts = ctx.config.dts;
  opt.nu = ctx.config.nu;
  opt.temporal_n = ctx.config.nx;
  opt.solver = make_solver_options(ctx.config);
  const MmsTable t = mms_convergence(opt);
  auto rows = [](const std::vector<MmsRow>& v) {
    std::vector<std::vector<double>> r;
    for (const auto& x : v) r.push_back({double(x.n), x.dt, x.error});
    return r;
  };
  write_csv({"n", "dt", "error"}, rows(t.spatial), ctx.out / "mms_spatial.csv");
  write_csv({"n", "dt", "difference"}, rows(t.temporal), ctx.out / "mms_temporal.csv");
  write_csv({"n", "dt", "error"}, rows(t.temporal_exact), ctx.out / "mms_temporal_exact.csv");
  RunMetadata meta = metadata(ctx, "mms", make_grid(ctx.config));
  meta.results = {{"spatial_order", t.spatial_order}, {"temporal_order", t.temporal_order}};
  write_metadata(meta, ctx.out / "metadata.json");
  std::printf("mms: spatial order %.4f, temporal order %.4f\n", t.spatial_order, t.temporal_order);
  return 0;
}

int decay_command(const Context& ctx) {
  if (ctx.config.topology != Topology::PeriodicChannel)
    throw ValidationError("decay runs on topology = channel");
  DecayOptions opt;
  opt.nx = ctx.config.nx;
  opt.ny = ctx.config.ny;
  opt.nu = ctx.config.nu;
  opt.lx = ctx.config.lx;
  opt.ly = ctx.config.ly;
  opt.dt = ctx.config.dt;
  opt.t_end = ctx.config.t_end;
  opt.h_amplitude = ctx.config.h_amplitude;
  opt.advection = ctx.config.advection;
  opt.solver = make_solver_options(ctx.config);
  const DecayResult r = decay_experiment(opt);
  write_csv(r.run.series, ctx.out / "diagnostics.csv");
  write_csv({"rate", "expected", "relative_error"}, {{r.rate, r.expected, r.relative_error}},
            ctx.out / "decay.csv");
  RunMetadata meta = metadata(ctx, "decay", make_grid(ctx.config));
  meta.results = {{"rate", r.rate}, {"expected", r.expected}, {"relative_error", r.relative_error}};
  write_metadata(meta, ctx.out / "metadata.json");
  std::printf("decay: rate %.6f, nu pi^2/ly^2 = %.6f, relative error %.3e\n", r.rate, r.expected,
              r.relative_error);
  return 0;
}

}  // namespace uncon::cli
