#include "uncon/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>

#include "uncon/analysis.hpp"
#include "uncon/errors.hpp"
#include "uncon/manufactured.hpp"
#include "uncon/operators.hpp"
#include "uncon/random.hpp"

namespace uncon {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Conversion failures carry only the message; the caller attaches line and key.
struct BadValue {
  std::string what;
};

double to_double(const std::string& s) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
    throw BadValue{"expected a real number, got '" + s + "'"};
  return v;
}

int to_int(const std::string& s) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw BadValue{"expected an integer, got '" + s + "'"};
  return v;
}

bool to_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw BadValue{"expected true or false, got '" + s + "'"};
}

std::string fmt_double(double v) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

template <class T, class F>
std::vector<T> to_list(const std::string& s, F&& conv) {
  std::vector<T> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(conv(trim(item)));
  if (out.empty()) throw BadValue{"expected a comma-separated list"};
  return out;
}

template <class T, class F>
std::string fmt_list(const std::vector<T>& v, F&& f) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += f(v[i]);
  }
  return out;
}

struct Entry {
  std::string section;
  std::string key;
  std::function<void(Config&, const std::string&)> set;
  std::function<std::string(const Config&)> get;
};

#define UNCON_REAL(sec, name) \
  Entry{sec, #name, [](Config& c, const std::string& s) { c.name = to_double(s); }, \
        [](const Config& c) { return fmt_double(c.name); }}
#define UNCON_INT(sec, name) \
  Entry{sec, #name, [](Config& c, const std::string& s) { c.name = to_int(s); }, \
        [](const Config& c) { return std::to_string(c.name); }}
#define UNCON_BOOL(sec, name) \
  Entry{sec, #name, [](Config& c, const std::string& s) { c.name = to_bool(s); }, \
        [](const Config& c) { return std::string(c.name ? "true" : "false"); }}
#define UNCON_WORD(sec, name) \
  Entry{sec, #name, [](Config& c, const std::string& s) { c.name = s; }, \
        [](const Config& c) { return c.name; }}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      Entry{"grid", "topology",
            [](Config& c, const std::string& s) {
              try {
                c.topology = topology_from_string(s);
              } catch (const ValidationError& e) {
                throw BadValue{e.what()};
              }
            },
            [](const Config& c) { return std::string(to_string(c.topology)); }},
      UNCON_INT("grid", nx),
      UNCON_INT("grid", ny),
      UNCON_REAL("grid", lx),
      UNCON_REAL("grid", ly),
      UNCON_REAL("physics", nu),
      UNCON_BOOL("physics", advection),
      UNCON_REAL("time", dt),
      UNCON_REAL("time", t_end),
      UNCON_BOOL("time", smooth_init),
      UNCON_BOOL("time", exact_forcing_average),
      Entry{"forcing", "kind", [](Config& c, const std::string& s) { c.forcing = s; },
            [](const Config& c) { return c.forcing; }},
      UNCON_REAL("forcing", fx),
      UNCON_REAL("forcing", fy),
      UNCON_WORD("experiment", initial),
      UNCON_REAL("experiment", amplitude),
      UNCON_REAL("experiment", h_amplitude),
      UNCON_REAL("experiment", solver_tol),
      UNCON_INT("experiment", max_iterations),
      UNCON_WORD("experiment", preconditioner),
      UNCON_WORD("experiment", beta_method),
      Entry{"experiment", "sizes",
            [](Config& c, const std::string& s) { c.sizes = to_list<int>(s, to_int); },
            [](const Config& c) { return fmt_list(c.sizes, [](int v) { return std::to_string(v); }); }},
      Entry{"experiment", "c_values",
            [](Config& c, const std::string& s) { c.c_values = to_list<double>(s, to_double); },
            [](const Config& c) { return fmt_list(c.c_values, fmt_double); }},
      Entry{"experiment", "resolutions",
            [](Config& c, const std::string& s) { c.resolutions = to_list<int>(s, to_int); },
            [](const Config& c) {
              return fmt_list(c.resolutions, [](int v) { return std::to_string(v); });
            }},
      Entry{"experiment", "dts",
            [](Config& c, const std::string& s) { c.dts = to_list<double>(s, to_double); },
            [](const Config& c) { return fmt_list(c.dts, fmt_double); }},
      UNCON_INT("experiment", samples),
  };
  return table;
}

#undef UNCON_REAL
#undef UNCON_INT
#undef UNCON_BOOL
#undef UNCON_WORD

const Entry* find_entry(const std::string& section, const std::string& key) {
  for (const auto& e : entries())
    if (e.section == section && e.key == key) return &e;
  return nullptr;
}

bool known_section(const std::string& s) {
  return s == "grid" || s == "physics" || s == "time" || s == "forcing" || s == "experiment";
}

void assign(Config& cfg, const std::string& section, const std::string& key,
            const std::string& value, std::size_t line) {
  const Entry* e = find_entry(section, key);
  const std::string full = section + "." + key;
  if (!e) throw ParseError("unknown key", line, full);
  try {
    e->set(cfg, value);
  } catch (const BadValue& b) {
    throw ParseError(b.what, line, full);
  }
}

}  // namespace

void validate(const Config& c) {
  auto need = [](bool ok, const char* msg) {
    if (!ok) throw ValidationError(msg);
  };
  need(c.nx >= 4, "nx must be >= 4");
  need(c.ny >= 4, "ny must be >= 4");
  need(c.lx > 0.0, "lx must be positive");
  need(c.ly > 0.0, "ly must be positive");
  need(c.nu > 0.0, "nu must be positive");
  need(c.dt > 0.0, "dt must be positive");
  need(c.t_end > 0.0, "t_end must be positive");
  need(c.dt <= c.t_end, "dt must not exceed t_end");
  need(c.forcing == "none" || c.forcing == "constant" || c.forcing == "manufactured",
       "forcing.kind must be none, constant or manufactured");
  need(c.initial == "zero" || c.initial == "manufactured" || c.initial == "divergence" ||
           c.initial == "random",
       "experiment.initial must be zero, manufactured, divergence or random");
  need(c.amplitude >= 0.0, "amplitude must be non-negative");
  need(c.solver_tol > 0.0, "solver_tol must be positive");
  need(c.max_iterations >= 0, "max_iterations must be non-negative");
  need(c.preconditioner == "fd" || c.preconditioner == "line" || c.preconditioner == "none",
       "preconditioner must be fd, line or none");
  need(c.beta_method == "dense" || c.beta_method == "lanczos",
       "beta_method must be dense or lanczos");
  need(!c.sizes.empty() && std::all_of(c.sizes.begin(), c.sizes.end(), [](int n) { return n >= 4; }),
       "sizes must be grid edges >= 4");
  need(std::all_of(c.c_values.begin(), c.c_values.end(), [](double v) { return v >= 0.0; }),
       "c_values must be non-negative");
  need(c.resolutions.size() >= 2 &&
           std::all_of(c.resolutions.begin(), c.resolutions.end(), [](int n) { return n >= 4; }),
       "resolutions needs at least two grid edges >= 4");
  need(c.dts.size() >= 3 &&
           std::all_of(c.dts.begin(), c.dts.end(), [](double v) { return v > 0.0; }),
       "dts needs at least three positive steps");
  need(c.samples >= 1, "samples must be positive");
  const bool channel_only = c.forcing == "manufactured" || c.initial == "manufactured" ||
                            c.h_amplitude != 0.0;
  need(!channel_only || c.topology == Topology::PeriodicChannel,
       "manufactured data and prescribed divergence require topology = channel");
}

Config parse_config(std::string_view text) {
  Config cfg;
  std::string section;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    std::string line(raw);
    if (const auto c = line.find_first_of("#;"); c != std::string::npos) line.erase(c);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", line_no, "");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!known_section(section)) throw ParseError("unknown section", line_no, section);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", line_no, "");
    if (section.empty()) throw ParseError("key outside of any section", line_no, "");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", line_no, "");
    const std::string full = section + "." + key;
    if (!seen.insert(full).second) throw ParseError("duplicate key", line_no, full);
    assign(cfg, section, key, value, line_no);
  }
  validate(cfg);
  return cfg;
}

void apply_override(Config& cfg, std::string_view assignment) {
  const std::string a(assignment);
  const auto eq = a.find('=');
  const auto dot = a.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq)
    throw ParseError("override must look like section.key=value", 0, a);
  const std::string section = trim(std::string_view(a).substr(0, dot));
  const std::string key = trim(std::string_view(a).substr(dot + 1, eq - dot - 1));
  if (!known_section(section)) throw ParseError("unknown section", 0, section);
  assign(cfg, section, key, trim(std::string_view(a).substr(eq + 1)), 0);
}

std::string serialize(const Config& cfg) {
  std::string out;
  std::string section;
  for (const auto& e : entries()) {
    if (e.section != section) {
      if (!section.empty()) out += "\n";
      section = e.section;
      out += "[" + section + "]\n";
    }
    out += e.key + " = " + e.get(cfg) + "\n";
  }
  return out;
}

Grid make_grid(const Config& cfg) { return Grid(cfg.topology, cfg.nx, cfg.ny, cfg.lx, cfg.ly); }

SolverOptions make_solver_options(const Config& cfg) {
  SolverOptions o;
  o.tol = cfg.solver_tol;
  o.max_iterations = cfg.max_iterations;
  if (cfg.preconditioner == "line")
    o.preconditioner = Preconditioner::LineRelaxation;
  else if (cfg.preconditioner == "none")
    o.preconditioner = Preconditioner::None;
  return o;
}

RunConfig make_run_config(const Config& cfg, std::uint64_t seed) {
  validate(cfg);
  const Grid grid = make_grid(cfg);
  RunConfig rc(grid);
  rc.nu = cfg.nu;
  rc.dt = cfg.dt;
  rc.t_end = cfg.t_end;
  rc.smooth_init = cfg.smooth_init;
  rc.advection = cfg.advection;
  rc.solver = make_solver_options(cfg);
  rc.forcing.exact_average = cfg.exact_forcing_average;

  std::optional<ManufacturedFlow> flow;
  if (grid.topology() == Topology::PeriodicChannel) {
    flow.emplace(grid.lx(), grid.ly(), cfg.nu, 1.0, false);
    if (cfg.amplitude > 0.0) flow = flow->normalised(grid, cfg.amplitude);
  }

  if (cfg.initial == "manufactured") {
    rc.u0 = flow->velocity(grid, 0.0);
  } else if (cfg.initial == "divergence") {
    rc.u0 = cfg.amplitude * divergence_mode(grid);
  } else if (cfg.initial == "random") {
    Rng rng(seed);
    VectorField u = random_smooth_noslip(grid, rng);
    const double g = norms(u).h1_semi;
    if (g > 0.0) u *= cfg.amplitude / g;
    rc.u0 = std::move(u);
  }

  if (cfg.forcing == "constant") {
    rc.forcing.field = ForcingSpec::constant(cfg.fx, cfg.fy).field;
  } else if (cfg.forcing == "manufactured") {
    const ManufacturedFlow f = *flow;
    rc.forcing.field = [f](const Grid& g, double t) { return f.forcing(g, t); };
  }
  if (cfg.h_amplitude != 0.0) rc.nonhomogeneous = static_divergence(cfg.h_amplitude);
  rc.validate();
  return rc;
}

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Run: return "run";
    case Command::Project: return "project";
    case Command::Beta: return "beta";
    case Command::Spectrum: return "spectrum";
    case Command::Mms: return "mms";
    case Command::Decay: return "decay";
  }
  return "run";
}

Command command_from_string(std::string_view s) {
  for (Command c : {Command::Run, Command::Project, Command::Beta, Command::Spectrum,
                    Command::Mms, Command::Decay})
    if (to_string(c) == s) return c;
  throw ValidationError("unknown command '" + std::string(s) + "'");
}

}  // namespace uncon
