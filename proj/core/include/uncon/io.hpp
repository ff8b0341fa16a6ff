#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "uncon/field.hpp"
#include "uncon/timestepper.hpp"

namespace uncon {

/// git-describe-style version baked in at configure time.
std::string version_string();

/// "%.17g": enough digits for an exact double round trip.
std::string format_real(double v);

inline const std::vector<std::string> kDiagnosticsColumns = {
    "step",        "t",           "energy",         "grad_norm_sq",
    "lap_norm_sq", "div_norm_sq", "stokes_grad_sq", "dissipation_residual"};

std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& series);
void write_csv(const std::vector<DiagnosticsRecord>& series, const std::filesystem::path& path);

/// Generic numeric table with a header row.
void write_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows,
               const std::filesystem::path& path);

/// Flat CSV with columns i, j, x, y, value.
void write_field(const GridArray& a, const std::filesystem::path& path);
GridArray read_field(const std::filesystem::path& path, const Grid& grid, Location loc);

/// Legacy ASCII STRUCTURED_POINTS at cell centres with point data u, v, div_u
/// and, when given, p. Face velocities are averaged to the centres.
void write_field(const VectorField& u, const ScalarField* p, const std::filesystem::path& path);

struct RunMetadata {
  std::string command;
  Grid grid = Grid::channel(4, 4);
  double solver_tol = 1e-10;
  int max_iterations = 0;
  std::string preconditioner = "fd";
  std::uint64_t seed = 0;
  std::string config_text;
  std::map<std::string, double> results;
};

void write_metadata(const RunMetadata& meta, const std::filesystem::path& path);

}  // namespace uncon
