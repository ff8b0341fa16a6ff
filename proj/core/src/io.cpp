#include "uncon/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "uncon/errors.hpp"
#include "uncon/operators.hpp"

#ifndef UNCON_VERSION_STRING
#define UNCON_VERSION_STRING "unknown"
#endif

namespace uncon {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

std::string version_string() { return UNCON_VERSION_STRING; }

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& series) {
  std::string out;
  for (std::size_t k = 0; k < kDiagnosticsColumns.size(); ++k)
    out += (k ? "," : "") + kDiagnosticsColumns[k];
  out += "\n";
  for (const auto& d : series) {
    out += std::to_string(d.step);
    for (double v : {d.t, d.energy, d.grad_norm_sq, d.lap_norm_sq, d.div_norm_sq,
                     d.stokes_grad_sq, d.dissipation_residual})
      out += "," + format_real(v);
    out += "\n";
  }
  return out;
}

void write_csv(const std::vector<DiagnosticsRecord>& series, const fs::path& path) {
  auto out = open_out(path);
  out << diagnostics_csv(series);
  finish(out, path);
}

void write_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows,
               const fs::path& path) {
  auto out = open_out(path);
  for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
  out << "\n";
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw IoError("table row width does not match header");
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_real(row[k]);
    out << "\n";
  }
  finish(out, path);
}

void write_field(const GridArray& a, const fs::path& path) {
  auto out = open_out(path);
  out << "i,j,x,y,value\n";
  const Grid& g = a.grid();
  for (int j = 0; j < a.ny(); ++j)
    for (int i = 0; i < a.nx(); ++i)
      out << i << ',' << j << ',' << format_real(g.x_at(a.location(), i)) << ','
          << format_real(g.y_at(a.location(), j)) << ',' << format_real(a(i, j)) << '\n';
  finish(out, path);
}

GridArray read_field(const fs::path& path, const Grid& grid, Location loc) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != "i,j,x,y,value")
    throw IoError("'" + path.string() + "' lacks the field CSV header");
  GridArray a(grid, loc);
  std::vector<char> filled(static_cast<std::size_t>(a.size()), 0);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell[5];
    for (auto& c : cell)
      if (!std::getline(ss, c, ',')) throw IoError("short row at line " + std::to_string(line_no));
    int i = 0, j = 0;
    double value = 0.0;
    try {
      std::size_t used = 0;
      i = std::stoi(cell[0]);
      j = std::stoi(cell[1]);
      value = std::stod(cell[4], &used);
      if (used != cell[4].size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw IoError("malformed number at line " + std::to_string(line_no));
    }
    if (i < 0 || j < 0 || i >= a.nx() || j >= a.ny())
      throw IoError("index out of range at line " + std::to_string(line_no));
    a(i, j) = value;
    filled[static_cast<std::size_t>(j * a.nx() + i)] = 1;
  }
  for (char f : filled)
    if (!f) throw IoError("'" + path.string() + "' does not cover every grid point");
  return a;
}

void write_field(const VectorField& w, const ScalarField* p, const fs::path& path) {
  const Grid& g = w.grid();
  const int nx = g.nx(), ny = g.ny();
  // face values to cell centres; wall-normal faces hold zero
  auto u_face = [&](int f, int j) {
    if (g.periodic_x()) return w.u((f % nx + nx) % nx, j);
    return (f <= 0 || f >= nx) ? 0.0 : w.u(f - 1, j);
  };
  auto v_face = [&](int i, int f) {
    if (g.periodic_y()) return w.v(i, (f % ny + ny) % ny);
    return (f <= 0 || f >= ny) ? 0.0 : w.v(i, f - 1);
  };
  const ScalarField d = div(w);

  auto out = open_out(path);
  out << "# vtk DataFile Version 3.0\n"
      << "uncon velocity/pressure snapshot\n"
      << "ASCII\n"
      << "DATASET STRUCTURED_POINTS\n"
      << "DIMENSIONS " << nx << ' ' << ny << " 1\n"
      << "ORIGIN " << format_real(0.5 * g.dx()) << ' ' << format_real(0.5 * g.dy()) << " 0\n"
      << "SPACING " << format_real(g.dx()) << ' ' << format_real(g.dy()) << " 1\n"
      << "POINT_DATA " << nx * ny << '\n';
  auto block = [&](const char* name, auto&& value) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) out << format_real(value(i, j)) << '\n';
  };
  block("u", [&](int i, int j) { return 0.5 * (u_face(i, j) + u_face(i + 1, j)); });
  block("v", [&](int i, int j) { return 0.5 * (v_face(i, j) + v_face(i, j + 1)); });
  if (p) block("p", [&](int i, int j) { return (*p)(i, j); });
  block("div_u", [&](int i, int j) { return d(i, j); });
  finish(out, path);
}

void write_metadata(const RunMetadata& m, const fs::path& path) {
  nlohmann::ordered_json j;
  j["command"] = m.command;
  j["version"] = version_string();
  j["grid"] = {{"topology", std::string(to_string(m.grid.topology()))},
               {"nx", m.grid.nx()},
               {"ny", m.grid.ny()},
               {"lx", m.grid.lx()},
               {"ly", m.grid.ly()},
               {"corner_flag", m.grid.corner_flag()},
               {"corners", m.grid.corner_flag() ? "C3 boundary assumption violated" : "none"}};
  j["solver"] = {{"tol", m.solver_tol},
                 {"max_iterations", m.max_iterations},
                 {"preconditioner", m.preconditioner}};
  j["seed"] = m.seed;
  j["config"] = m.config_text;
  j["results"] = m.results;
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  finish(out, path);
}

}  // namespace uncon
