#pragma once

#include <string>
#include <utility>

namespace boxtherm {

struct RunSpec {
  std::string command; // mesh | solve | converge | verify

  int mesh_n = 8;
  std::string mesh_file; // overrides mesh_n when set

  std::string k_spec = "const:1";
  std::string f_spec = "const:1";
  double lambda = 1.0;
  double t_final = 1.0;
  double tau = 0.01;
  double picard_tol = 1e-10;
  int snapshot_stride = 1;
  std::string integral_rule = "box"; // box | centroid

  std::string levels;   // "N" or "a..b"; command-specific default when empty
  std::string benchmark = "standard"; // standard | standard-vark | richardson

  std::string out;
  std::string dump_matrix; // COO dump path (solve)
  bool vtk = false;
  bool reproducible = false;
};

// Parses "N" or "a..b" into an inclusive level range.
std::pair<int, int> parse_level_range(const std::string& text);

// Runs the full command-line program. Returns the process exit status:
// 0 success, 1 usage or config error, 2 numerical failure,
// 3 verification failure.
int run_cli(int argc, char** argv);

} // namespace boxtherm
