#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "boxtherm/cli.hpp"
#include "boxtherm/errors.hpp"
#include "boxtherm/mesh.hpp"

using namespace boxtherm;

namespace {

int call_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "boxtherm");
  std::vector<char*> argv;
  argv.reserve(args.size());
  for (std::string& a : args) argv.push_back(a.data());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("level ranges parse as a..b or as an upper bound") {
  CHECK(parse_level_range("3") == std::pair{1, 3});
  CHECK(parse_level_range("2..5") == std::pair{2, 5});
  CHECK(parse_level_range("4..4") == std::pair{4, 4});
  CHECK_THROWS_AS(parse_level_range("0..2"), ConfigError);
  CHECK_THROWS_AS(parse_level_range("5..2"), ConfigError);
  CHECK_THROWS_AS(parse_level_range("abc"), ConfigError);
  CHECK_THROWS_AS(parse_level_range("2..x"), ConfigError);
}

TEST_CASE("mesh subcommand writes a loadable mesh") {
  const std::string out = "cli_mesh_out.txt";
  CHECK(call_cli({"mesh", "--mesh-n", "3", "--out", out}) == 0);
  const Mesh m = load_mesh_file(out);
  CHECK(m.vertex_count() == 16);
  CHECK(m.triangle_count() == 18);
  std::remove(out.c_str());
}

TEST_CASE("solve subcommand writes a trajectory") {
  const std::string out = "cli_traj_out.csv";
  CHECK(call_cli({"solve", "--mesh-n", "2", "--tf", "0.02", "--dt", "0.01",
                  "--out", out}) == 0);
  std::ifstream in(out);
  CHECK(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,vertex_index,x,y,value");
  in.close();
  std::remove(out.c_str());
}

TEST_CASE("config file values apply when flags are absent") {
  const std::string cfg = "cli_cfg_a.txt";
  const std::string out = "cli_mesh_cfg.txt";
  write_file(cfg, "# sample config\nmesh-n = 4\n");
  CHECK(call_cli({"mesh", "--config", cfg, "--out", out}) == 0);
  CHECK(load_mesh_file(out).vertex_count() == 25);
  std::remove(cfg.c_str());
  std::remove(out.c_str());
}

TEST_CASE("command-line flags beat config file values") {
  const std::string cfg = "cli_cfg_b.txt";
  const std::string out = "cli_mesh_cfg2.txt";
  write_file(cfg, "mesh-n = 4\n");
  CHECK(call_cli({"mesh", "--mesh-n", "2", "--config", cfg, "--out", out}) == 0);
  CHECK(load_mesh_file(out).vertex_count() == 9);
  std::remove(cfg.c_str());
  std::remove(out.c_str());
}

TEST_CASE("unknown config keys are rejected") {
  const std::string cfg = "cli_cfg_c.txt";
  write_file(cfg, "bogus = 1\n");
  CHECK(call_cli({"mesh", "--config", cfg, "--out", "unused.txt"}) == 1);
  std::remove(cfg.c_str());
}

TEST_CASE("malformed config lines are rejected") {
  const std::string cfg = "cli_cfg_d.txt";
  write_file(cfg, "mesh-n 4\n");
  CHECK(call_cli({"mesh", "--config", cfg, "--out", "unused.txt"}) == 1);
  std::remove(cfg.c_str());
}

TEST_CASE("invalid coefficient presets exit with a config error") {
  CHECK(call_cli({"solve", "--mesh-n", "2", "--k", "const:-1"}) == 1);
  CHECK(call_cli({"solve", "--mesh-n", "2", "--f", "mystery:1"}) == 1);
}

TEST_CASE("usage errors exit with status 1") {
  CHECK(call_cli({}) == 1);                       // missing subcommand
  CHECK(call_cli({"frobnicate"}) == 1);           // unknown subcommand
  CHECK(call_cli({"solve", "--dt", "abc"}) == 1); // unparsable value
  CHECK(call_cli({"mesh", "--no-such-flag"}) == 1);
  CHECK(call_cli({"solve", "--mesh-n", "2", "--integral-rule", "bogus"}) == 1);
  CHECK(call_cli({"converge", "--benchmark", "bogus"}) == 1);
  CHECK(call_cli({"mesh", "--mesh-file", "no_such_mesh.txt"}) == 1);
}

TEST_CASE("help exits cleanly") {
  CHECK(call_cli({"--help"}) == 0);
  CHECK(call_cli({"solve", "--help"}) == 0);
}

TEST_CASE("verify subcommand passes on small levels") {
  CHECK(call_cli({"verify", "--levels", "1..2"}) == 0);
}

TEST_CASE("solve accepts the centroid integral rule and vtk output") {
  const std::string out = "cli_traj_vtk.csv";
  CHECK(call_cli({"solve", "--mesh-n", "2", "--tf", "0.02", "--dt", "0.01",
                  "--integral-rule", "centroid", "--vtk", "--out", out}) == 0);
  std::ifstream vtk("cli_traj_vtk_0000.vtk");
  CHECK(vtk.good());
  vtk.close();
  std::remove(out.c_str());
  for (int i = 0; i < 4; ++i) {
    char name[40];
    std::snprintf(name, sizeof name, "cli_traj_vtk_%04d.vtk", i);
    std::remove(name);
  }
}

TEST_CASE("solve can dump the initial flux matrix") {
  const std::string out = "cli_traj_dump.csv";
  const std::string matrix = "cli_matrix.txt";
  CHECK(call_cli({"solve", "--mesh-n", "2", "--tf", "0.01", "--dt", "0.01",
                  "--out", out, "--dump-matrix", matrix}) == 0);
  std::ifstream in(matrix);
  REQUIRE(in.good());
  int r = 0, c = 0;
  double v = 0.0;
  in >> r >> c >> v;
  CHECK(r == 0);
  CHECK(c == 0);
  CHECK(v == doctest::Approx(4.0).epsilon(1e-12)); // lone interior vertex
  in.close();
  std::remove(out.c_str());
  std::remove(matrix.c_str());
}

} // TEST_SUITE
