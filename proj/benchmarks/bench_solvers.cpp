#include <benchmark/benchmark.h>

#include "uncon/elliptic.hpp"
#include "uncon/manufactured.hpp"
#include "uncon/pressure.hpp"
#include "uncon/random.hpp"
#include "uncon/timestepper.hpp"

using namespace uncon;

namespace {

SolverOptions with_preconditioner(Preconditioner pc) {
  SolverOptions o;
  o.preconditioner = pc;
  return o;
}

void BM_NeumannPoisson(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto pc = static_cast<Preconditioner>(state.range(1));
  const Grid g = Grid::channel(n, n);
  Rng rng(1);
  ScalarField rhs = random_scalar(g, rng);
  const EllipticSolver solver(g, Location::Cell, EllipticProblem::poisson_neumann(), with_preconditioner(pc));
  for (auto _ : state) benchmark::DoNotOptimize(solver.solve(rhs.values));
}

void BM_Projection(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g = Grid::channel(n, n);
  Rng rng(2);
  const VectorField a = random_vector(g, rng);
  const PressureSolver ps(g);
  for (auto _ : state) benchmark::DoNotOptimize(ps.project(a));
}

void BM_TimeStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g = Grid::channel(n, n);
  RunConfig cfg(g);
  cfg.nu = 0.05;
  cfg.dt = 1e-3;
  cfg.u0 = ManufacturedFlow(1.0, 1.0, cfg.nu).normalised(g, 1.0).velocity(g, 0.0);
  const TimeStepper ts(cfg);
  const StepState s0 = ts.initial_state();
  for (auto _ : state) benchmark::DoNotOptimize(ts.step(s0));
}

}  // namespace

BENCHMARK(BM_NeumannPoisson)
    ->ArgsProduct({{32, 64, 128},
                   {static_cast<int>(Preconditioner::FastDiagonalization),
                    static_cast<int>(Preconditioner::LineRelaxation)}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Projection)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TimeStep)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
