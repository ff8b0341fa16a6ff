// Command-line driver: parses options, loads the config, dispatches to a
// subcommand and maps library errors onto exit codes (1 input, 2 numerics).
#include <cstdio>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "uncon/errors.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw uncon::IoError("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace uncon;
  CLI::App app{"uncon: unconstrained Navier-Stokes solver and verification harness"};
  app.require_subcommand(1);

  ExperimentSpec spec;
  spec.out_dir = "uncon_out";
  app.add_option("--config", spec.config_path, "INI-style config file")->check(CLI::ExistingFile);
  app.add_option("--out", spec.out_dir, "output directory")
      ->envname("UNCON_OUT_DIR")
      ->capture_default_str();
  app.add_option("--set", spec.overrides, "override as section.key=value (repeatable)");
  app.add_option("--seed", spec.seed, "seed for random fields")->capture_default_str();

  const std::pair<Command, const char*> subs[] = {
      {Command::Run, "time-step the configured flow"},
      {Command::Project, "check Helmholtz projection identities on random fields"},
      {Command::Beta, "estimate the Stokes-pressure domination constant"},
      {Command::Spectrum, "eigenvalues of the assembled unconstrained Stokes operator"},
      {Command::Mms, "manufactured-solution convergence study"},
      {Command::Decay, "fit the decay rate of the divergence"},
  };
  for (const auto& [cmd, help] : subs) {
    CLI::App* sub = app.add_subcommand(std::string(to_string(cmd)), help);
    sub->fallthrough();
    sub->callback([&spec, cmd = cmd] { spec.command = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    cli::Context ctx;
    ctx.config = spec.config_path.empty() ? Config{} : parse_config(read_file(spec.config_path));
    for (const auto& o : spec.overrides) apply_override(ctx.config, o);
    validate(ctx.config);
    ctx.config_text = serialize(ctx.config);
    ctx.out = spec.out_dir;
    ctx.seed = spec.seed;
    std::error_code ec;
    std::filesystem::create_directories(ctx.out, ec);
    if (ec) throw IoError("cannot create output directory '" + spec.out_dir + "': " + ec.message());

    switch (spec.command) {
      case Command::Run: return cli::run_command(ctx);
      case Command::Project: return cli::project_command(ctx);
      case Command::Beta: return cli::beta_command(ctx);
      case Command::Spectrum: return cli::spectrum_command(ctx);
      case Command::Mms: return cli::mms_command(ctx);
      case Command::Decay: return cli::decay_command(ctx);
    }
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return 1;
  } catch (const IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
