#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "uncon/config.hpp"
#include "uncon/errors.hpp"
#include "uncon/io.hpp"
#include "uncon/random.hpp"

using namespace uncon;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() / (std::string("uncon_test_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

int cli(const std::string& args) {
  const std::string cmd = std::string(UNCON_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, MinimalFileUsesDefaultsElsewhere) {
  const Config c = parse_config("[grid]\nnx = 16\nny = 8\n\n# comment\n[physics]\nnu = 0.2\n");
  EXPECT_EQ(c.nx, 16);
  EXPECT_EQ(c.ny, 8);
  EXPECT_DOUBLE_EQ(c.nu, 0.2);
  EXPECT_DOUBLE_EQ(c.dt, Config{}.dt);
  EXPECT_EQ(c.topology, Topology::PeriodicChannel);
}

TEST(Config, NegativeTimeStepIsRejectedByName) {
  try {
    parse_config("[time]\ndt = -1\n");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("dt must be positive"), std::string::npos) << e.what();
  }
}

TEST(Config, UnknownKeyReportsLine) {
  try {
    parse_config("[grid]\nnx = 16\nbogus = 3\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("bogus"), std::string::npos) << msg;
  }
  EXPECT_THROW(parse_config("[grid]\nnx = 16\nnx = 8\n"), ParseError);
  EXPECT_THROW(parse_config("[grid]\nnx = sixteen\n"), ParseError);
  EXPECT_THROW(parse_config("nx = 16\n"), ParseError);
}

TEST(Config, OverrideBeatsFile) {
  Config c = parse_config("[grid]\nnx = 16\n");
  apply_override(c, "grid.nx=24");
  apply_override(c, "experiment.sizes=8,12");
  EXPECT_EQ(c.nx, 24);
  EXPECT_EQ(c.sizes, (std::vector<int>{8, 12}));
  EXPECT_THROW(apply_override(c, "grid.nx"), ParseError);
  EXPECT_THROW(apply_override(c, "nope.key=1"), ParseError);
}

TEST(Config, SerializeRoundTripsExactly) {
  Config c;
  c.nu = 0.1 + 0.2;
  c.dt = 1.0 / 3.0;
  c.t_end = 1.0;
  c.topology = Topology::ClosedBox;
  c.initial = "random";
  c.c_values = {0.0, 0.7};
  const std::string text = serialize(c);
  const Config back = parse_config(text);
  EXPECT_EQ(serialize(back), text);
  EXPECT_EQ(back.nu, c.nu);
  EXPECT_EQ(back.dt, c.dt);
  EXPECT_EQ(back.topology, Topology::ClosedBox);
}

TEST(Config, CommandNames) {
  for (Command c : {Command::Run, Command::Project, Command::Beta, Command::Spectrum, Command::Mms, Command::Decay})
    EXPECT_EQ(command_from_string(to_string(c)), c);
  EXPECT_THROW(command_from_string("fly"), ValidationError);
}

TEST(Io, EmptySeriesWritesHeaderOnly) {
  const std::string csv = diagnostics_csv({});
  EXPECT_EQ(csv, "step,t,energy,grad_norm_sq,lap_norm_sq,div_norm_sq,stokes_grad_sq,dissipation_residual\n");
}

TEST(Io, FieldCsvRoundTripIsBitwise) {
  TempDir tmp;
  const Grid g = Grid::channel(6, 5, 2.0, 1.0);
  Rng rng(11);
  const VectorField w = random_vector(g, rng);
  write_field(w.u, tmp.path() / "u.csv");
  const GridArray back = read_field(tmp.path() / "u.csv", g, Location::XFace);
  ASSERT_EQ(back.size(), w.u.size());
  for (int k = 0; k < back.size(); ++k) EXPECT_EQ(back[k], w.u[k]);
  EXPECT_THROW(read_field(tmp.path() / "missing.csv", g, Location::XFace), IoError);
}

TEST(Io, VtkHeaderAndBlocks) {
  TempDir tmp;
  const Grid g = Grid::channel(5, 4);
  ScalarField p(g);
  write_field(VectorField(g), &p, tmp.path() / "f.vtk");
  const std::string text = slurp(tmp.path() / "f.vtk");
  EXPECT_EQ(text.rfind("# vtk DataFile Version", 0), 0u);
  EXPECT_NE(text.find("DATASET STRUCTURED_POINTS"), std::string::npos);
  EXPECT_NE(text.find("DIMENSIONS 5 4 1"), std::string::npos);
  for (const char* name : {"SCALARS u", "SCALARS v", "SCALARS p", "SCALARS div_u"})
    EXPECT_NE(text.find(name), std::string::npos) << name;
}

TEST(Io, MetadataContainsProvenanceFields) {
  TempDir tmp;
  RunMetadata m;
  m.command = "run";
  m.grid = Grid::channel(8, 4);
  m.seed = 99;
  m.config_text = serialize(Config{});
  m.results["rate"] = 1.5;
  write_metadata(m, tmp.path() / "metadata.json");
  const auto j = nlohmann::json::parse(slurp(tmp.path() / "metadata.json"));
  EXPECT_EQ(j["command"], "run");
  EXPECT_EQ(j["seed"], 99);
  EXPECT_EQ(j["results"]["rate"], 1.5);
  EXPECT_TRUE(j.contains("version"));
  EXPECT_TRUE(j.contains("grid"));
}

TEST(Io, RunsAreDeterministic) {
  TempDir tmp;
  const std::string common = " --set grid.nx=8 --set grid.ny=8 --set time.t_end=0.01 --set experiment.initial=random --seed 5 run";
  ASSERT_EQ(cli("--out " + (tmp.path() / "a").string() + common), 0);
  ASSERT_EQ(cli("--out " + (tmp.path() / "b").string() + common), 0);
  EXPECT_EQ(slurp(tmp.path() / "a" / "diagnostics.csv"), slurp(tmp.path() / "b" / "diagnostics.csv"));
  EXPECT_FALSE(slurp(tmp.path() / "a" / "diagnostics.csv").empty());
}

TEST(Cli, ExitCodes) {
  TempDir tmp;
  const std::string out = " --out " + tmp.path().string();
  EXPECT_EQ(cli(out + " --set grid.nx=8 --set grid.ny=8 project"), 0);
  EXPECT_TRUE(fs::exists(tmp.path() / "project.csv"));
  EXPECT_EQ(cli(out + " --set time.dt=-1 run"), 1);
  EXPECT_EQ(cli(out + " --set grid.bogus=1 run"), 1);
  EXPECT_EQ(cli(out + " --frobnicate run"), 1);
  EXPECT_EQ(cli(out + " --config /nonexistent/file.ini run"), 1);
  // dense spectra refuse grids beyond the assembly cap: numerical failure
  EXPECT_EQ(cli(out + " --set experiment.sizes=64 spectrum"), 2);
  EXPECT_EQ(cli("--help"), 0);
}

TEST(Cli, ConfigFileAndOverrides) {
  TempDir tmp;
  {
    std::ofstream f(tmp.path() / "c.ini");
    f << "[grid]\nnx = 8\nny = 8\n[time]\ndt = 0.01\nt_end = 0.02\n";
  }
  ASSERT_EQ(cli("--config " + (tmp.path() / "c.ini").string() + " --out " + (tmp.path() / "o").string() +
                " --set time.t_end=0.03 run"),
            0);
  const auto j = nlohmann::json::parse(slurp(tmp.path() / "o" / "metadata.json"));
  EXPECT_NE(j["config"].get<std::string>().find("t_end = 0.03"), std::string::npos);
  const std::string csv = slurp(tmp.path() / "o" / "diagnostics.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}
