#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "uncon/elliptic.hpp"
#include "uncon/grid.hpp"
#include "uncon/timestepper.hpp"

namespace uncon {

/// Every configurable parameter, grouped as in the config file sections.
/// Defaults describe a small manufactured channel run.
struct Config {
  // [grid]
  Topology topology = Topology::PeriodicChannel;
  int nx = 32;
  int ny = 32;
  double lx = 1.0;
  double ly = 1.0;
  // [physics]
  double nu = 0.05;
  bool advection = true;
  // [time]
  double dt = 1e-3;
  double t_end = 0.5;
  bool smooth_init = false;
  bool exact_forcing_average = false;
  // [forcing]
  std::string forcing = "none";  ///< none | constant | manufactured
  double fx = 0.0;
  double fy = 0.0;
  // [experiment]
  std::string initial = "manufactured";  ///< zero | manufactured | divergence | random
  double amplitude = 1.0;  ///< |grad u0| for manufactured/random, scale for divergence
  double h_amplitude = 0.0;  ///< nonzero: static divergence h = h_amplitude cos(2 pi x / lx)
  double solver_tol = 1e-10;
  int max_iterations = 0;
  std::string preconditioner = "fd";  ///< fd | line | none
  std::string beta_method = "dense";  ///< dense | lanczos
  std::vector<int> sizes = {16, 24, 32};
  std::vector<double> c_values = {0.0, 1.0, 10.0, 100.0, 1000.0, 10000.0};
  std::vector<int> resolutions = {16, 32, 64};
  std::vector<double> dts = {0.04, 0.02, 0.01, 0.005};
  int samples = 100;
};

/// Parses `[section]` / `key = value` text ('#' and ';' start comments),
/// fills defaults and validates. Unknown sections and keys are rejected.
Config parse_config(std::string_view text);

/// Applies one `section.key=value` override. Validation is left to the caller
/// so that interdependent overrides can be applied in any order.
void apply_override(Config& cfg, std::string_view assignment);

/// Canonical text form; parse_config(serialize(c)) reproduces c exactly.
std::string serialize(const Config& cfg);

/// Throws ValidationError naming the first violated invariant.
void validate(const Config& cfg);

Grid make_grid(const Config& cfg);
SolverOptions make_solver_options(const Config& cfg);
/// Builds the time-stepping configuration, drawing random data from `seed`.
RunConfig make_run_config(const Config& cfg, std::uint64_t seed);

enum class Command { Run, Project, Beta, Spectrum, Mms, Decay };

std::string_view to_string(Command c);
Command command_from_string(std::string_view s);

/// What the CLI was asked to do.
struct ExperimentSpec {
  Command command = Command::Run;
  std::string config_path;  ///< empty: defaults only
  std::string out_dir;
  std::vector<std::string> overrides;
  std::uint64_t seed = 20240601;
};

}  // namespace uncon
