#include "boxtherm/cli.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "CLI11.hpp"

#include "boxtherm/benchmarks.hpp"
#include "boxtherm/coefficients.hpp"
#include "boxtherm/dual_mesh.hpp"
#include "boxtherm/errors.hpp"
#include "boxtherm/io.hpp"
#include "boxtherm/mesh.hpp"
#include "boxtherm/operators.hpp"
#include "boxtherm/parallel.hpp"
#include "boxtherm/solver.hpp"
#include "boxtherm/verification.hpp"

namespace boxtherm {

namespace {

int to_int(const std::string& s, const std::string& key) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw ConfigError("config key '" + key + "': expected integer, got '" + s +
                      "'");
  return v;
}

double to_double(const std::string& s, const std::string& key) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw ConfigError("config key '" + key + "': expected number, got '" + s +
                      "'");
  return v;
}

bool to_bool(const std::string& s, const std::string& key) {
  if (s == "1" || s == "true" || s == "on" || s == "yes") return true;
  if (s == "0" || s == "false" || s == "off" || s == "no") return false;
  throw ConfigError("config key '" + key + "': expected boolean, got '" + s +
                    "'");
}

struct KeyBinding {
  std::string key;
  CLI::Option* option;
  std::function<void(const std::string&)> set;
};

// key=value lines with '#' comments and blank lines.
std::vector<std::pair<std::string, std::string>> read_config(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  long lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key=value, got '" + line + "'");
    entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return entries;
}

void merge_config(const std::string& path,
                  const std::vector<KeyBinding>& bindings) {
  if (path.empty()) return;
  for (const auto& [key, value] : read_config(path)) {
    const KeyBinding* found = nullptr;
    for (const KeyBinding& b : bindings)
      if (b.key == key) found = &b;
    if (!found) throw ConfigError("unknown config key '" + key + "'");
    if (found->option->count() == 0) found->set(value);
  }
}

Coefficient checked_coefficient(const std::string& spec, const char* what) {
  Coefficient c = parse_coefficient(spec);
  const CoefficientCheck chk = check_coefficient(c);
  if (!chk.ok)
    throw ConfigError(std::string(what) + " '" + spec + "': " + chk.message);
  return c;
}

IntegralRule parse_integral_rule(const std::string& s) {
  if (s == "box") return IntegralRule::BoxLumped;
  if (s == "centroid") return IntegralRule::TriangleCentroid;
  throw ConfigError("integral-rule must be 'box' or 'centroid', got '" + s +
                    "'");
}

std::vector<int> level_list(const std::string& text,
                            std::pair<int, int> fallback) {
  const auto [lo, hi] =
      text.empty() ? fallback : parse_level_range(text);
  std::vector<int> levels;
  for (int l = lo; l <= hi; ++l) levels.push_back(l);
  return levels;
}

std::string path_stem(const std::string& path) {
  const size_t dot = path.find_last_of('.');
  const size_t slash = path.find_last_of('/');
  if (dot == std::string::npos ||
      (slash != std::string::npos && dot < slash))
    return path;
  return path.substr(0, dot);
}

Mesh make_run_mesh(const RunSpec& spec) {
  if (!spec.mesh_file.empty()) return load_mesh_file(spec.mesh_file);
  return generate_structured_mesh(spec.mesh_n);
}

void print_error_report(const ErrorReport& report) {
  std::printf("level  h            err_linf_l2    err_l2_h1      err_linf_h1\n");
  for (const LevelErrors& l : report.levels)
    std::printf("%5d  %-11.5g  %-13.6g  %-13.6g  %-13.6g\n", l.level, l.h,
                l.err_linf_l2, l.err_l2_h1, l.err_linf_h1);
  std::printf("rates: linf_l2 %.3f, l2_h1 %.3f, linf_h1 %.3f\n",
              report.rate_linf_l2, report.rate_l2_h1, report.rate_linf_h1);
}

int run_mesh(const RunSpec& spec) {
  const Mesh mesh = make_run_mesh(spec);
  const MeshReport report = validate_mesh(mesh);
  std::fputs(format_report(report).c_str(), stdout);
  const std::string out = spec.out.empty() ? "mesh.txt" : spec.out;
  save_mesh_file(mesh, out);
  std::printf("mesh written to %s\n", out.c_str());
  if (spec.vtk) {
    const DualMesh dual = build_dual_mesh(mesh);
    const std::string stem = path_stem(out);
    write_vtk_mesh(stem + ".vtk", mesh);
    write_vtk_boxes(stem + "_boxes.vtk", mesh, dual);
    std::printf("vtk written to %s.vtk and %s_boxes.vtk\n", stem.c_str(),
                stem.c_str());
  }
  return report.valid() ? 0 : 3;
}

int run_solve(const RunSpec& spec) {
  Problem problem;
  problem.k = checked_coefficient(spec.k_spec, "coefficient k");
  problem.f = checked_coefficient(spec.f_spec, "coefficient f");
  problem.lambda = spec.lambda;

  const Mesh mesh = make_run_mesh(spec);
  const DualMesh dual = build_dual_mesh(mesh);

  SolverConfig cfg;
  cfg.tau = spec.tau;
  cfg.t_final = spec.t_final;
  cfg.picard_tol = spec.picard_tol;
  cfg.snapshot_stride = spec.snapshot_stride;
  cfg.integral_rule = parse_integral_rule(spec.integral_rule);
  cfg.reduction = Reduction::ordered;

  const BoxSchemeSolver solver(mesh, dual, problem, cfg);

  if (!spec.dump_matrix.empty()) {
    const NodalField u0 = solver.initial_state();
    const std::vector<double> kbar =
        edge_coefficients(solver.plan(), problem.k, u0);
    write_matrix_coo(spec.dump_matrix,
                     assemble_flux_matrix_reduced(solver.plan(), kbar));
    std::printf("flux matrix dumped to %s\n", spec.dump_matrix.c_str());
  }

  const Trajectory traj = solver.solve_transient();

  const std::string out = spec.out.empty() ? "trajectory.csv" : spec.out;
  write_trajectory_csv(out, mesh, traj);

  int max_picard = 0;
  long total_cg = 0;
  for (const StepDiagnostics& s : traj.steps) {
    max_picard = std::max(max_picard, s.picard_iters);
    total_cg += s.cg_iters;
  }
  std::printf("%zu steps to t = %.17g, max picard iters %d, cg iters %ld\n",
              traj.steps.size(), traj.times.back(), max_picard, total_cg);
  std::printf("final nonlocal integral %.17g\n",
              traj.steps.empty() ? 0.0 : traj.steps.back().integral);
  std::printf("trajectory written to %s\n", out.c_str());

  if (spec.vtk) {
    const std::string stem = path_stem(out);
    for (size_t n = 0; n < traj.snapshots.size(); ++n) {
      char name[32];
      std::snprintf(name, sizeof name, "_%04zu.vtk", n);
      write_vtk_mesh(stem + name, mesh, {{"u", traj.snapshots[n].values}});
    }
    std::printf("%zu vtk snapshots written to %s_*.vtk\n",
                traj.snapshots.size(), stem.c_str());
  }
  return 0;
}

int run_converge(const RunSpec& spec) {
  const std::string out = spec.out.empty() ? "convergence.csv" : spec.out;
  const std::vector<int> levels = level_list(spec.levels, {2, 5});
  if (levels.size() < 2)
    throw ConfigError("converge needs at least two levels to fit a rate");

  if (spec.benchmark == "richardson") {
    const RichardsonReport rr =
        run_richardson_study(richardson_problem(), levels);
    write_error_report_csv(out, rr.report);
    print_error_report(rr.report);
    std::printf("steady center: %.8g (level %d) vs %.8g (level %d), "
                "rel diff %.3g\n",
                rr.steady_center_coarse, levels.back(),
                rr.steady_center_reference, rr.reference_level,
                rr.steady_rel_diff);
    std::printf("report written to %s\n", out.c_str());
    const bool pass =
        rr.report.rate_linf_l2 >= 0.9 && rr.steady_rel_diff <= 0.01;
    std::printf("%s\n", pass ? "PASS" : "FAIL");
    return pass ? 0 : 3;
  }

  if (spec.benchmark != "standard" && spec.benchmark != "standard-vark")
    throw ConfigError("unknown benchmark '" + spec.benchmark +
                      "' (expected standard, standard-vark, or richardson)");
  const ManufacturedCase bench =
      standard_benchmark(spec.benchmark == "standard-vark");
  const ErrorReport report = run_convergence_study(bench, levels);
  write_error_report_csv(out, report);
  print_error_report(report);
  std::printf("report written to %s\n", out.c_str());
  const bool pass = report.pass(0.9);
  std::printf("%s\n", pass ? "PASS" : "FAIL");
  return pass ? 0 : 3;
}

int run_verify(const RunSpec& spec) {
  const std::vector<int> levels = level_list(spec.levels, {1, 4});
  const InvariantReport report = invariant_suite(levels.back());
  std::fputs(format_invariant_report(report).c_str(), stdout);
  std::printf("%s\n", report.all_pass() ? "PASS" : "FAIL");
  return report.all_pass() ? 0 : 3;
}

} // namespace

std::pair<int, int> parse_level_range(const std::string& text) {
  const size_t dots = text.find("..");
  int lo = 1, hi = 1;
  if (dots == std::string::npos) {
    hi = to_int(text, "levels");
  } else {
    lo = to_int(text.substr(0, dots), "levels");
    hi = to_int(text.substr(dots + 2), "levels");
  }
  if (lo < 1 || hi < lo)
    throw ConfigError("invalid level range '" + text + "'");
  return {lo, hi};
}

int run_cli(int argc, char** argv) {
  apply_thread_cap();
  RunSpec spec;
  std::string config_path;

  CLI::App app{"boxtherm: finite volume box scheme for the nonlocal "
               "thermistor equation"};
  app.require_subcommand(1);

  std::map<std::string, std::vector<KeyBinding>> bindings;
  auto bind_int = [&](CLI::App* sub, const char* key, int& field,
                      const char* help) {
    CLI::Option* opt = sub->add_option(std::string("--") + key, field, help);
    bindings[sub->get_name()].push_back(
        {key, opt, [&field, key](const std::string& v) {
           field = to_int(v, key);
         }});
  };
  auto bind_double = [&](CLI::App* sub, const char* key, double& field,
                         const char* help) {
    CLI::Option* opt = sub->add_option(std::string("--") + key, field, help);
    bindings[sub->get_name()].push_back(
        {key, opt, [&field, key](const std::string& v) {
           field = to_double(v, key);
         }});
  };
  auto bind_string = [&](CLI::App* sub, const char* key, std::string& field,
                         const char* help) {
    CLI::Option* opt = sub->add_option(std::string("--") + key, field, help);
    bindings[sub->get_name()].push_back(
        {key, opt, [&field](const std::string& v) { field = v; }});
  };
  auto bind_flag = [&](CLI::App* sub, const char* key, bool& field,
                       const char* help) {
    CLI::Option* opt = sub->add_flag(std::string("--") + key, field, help);
    bindings[sub->get_name()].push_back(
        {key, opt, [&field, key](const std::string& v) {
           field = to_bool(v, key);
         }});
  };
  auto bind_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path,
                    "key=value config file ('#' comments); command line wins");
  };

  CLI::App* mesh = app.add_subcommand("mesh", "generate or inspect a mesh");
  bind_int(mesh, "mesh-n", spec.mesh_n, "structured unit-square subdivisions");
  bind_string(mesh, "mesh-file", spec.mesh_file, "mesh file to load instead");
  bind_string(mesh, "out", spec.out, "output mesh path (default mesh.txt)");
  bind_flag(mesh, "vtk", spec.vtk, "also write vtk views");
  bind_config(mesh);

  CLI::App* solve = app.add_subcommand("solve", "run the transient solver");
  bind_int(solve, "mesh-n", spec.mesh_n, "structured unit-square subdivisions");
  bind_string(solve, "mesh-file", spec.mesh_file, "mesh file to load instead");
  bind_string(solve, "k", spec.k_spec, "diffusion coefficient preset");
  bind_string(solve, "f", spec.f_spec, "source coefficient preset");
  bind_double(solve, "lambda", spec.lambda, "source strength (> 0)");
  bind_double(solve, "tf", spec.t_final, "final time");
  bind_double(solve, "dt", spec.tau, "time step");
  bind_double(solve, "picard-tol", spec.picard_tol,
              "fixed-point increment tolerance");
  bind_int(solve, "snapshot-stride", spec.snapshot_stride,
           "record every n-th step (0: endpoints only)");
  bind_string(solve, "integral-rule", spec.integral_rule,
              "nonlocal integral rule: box | centroid");
  bind_string(solve, "out", spec.out,
              "trajectory csv path (default trajectory.csv)");
  bind_string(solve, "dump-matrix", spec.dump_matrix,
              "write the initial flux matrix as 'row col value'");
  bind_flag(solve, "vtk", spec.vtk, "write per-snapshot vtk files");
  bind_flag(solve, "reproducible", spec.reproducible,
            "force deterministic reductions (already the default)");
  bind_config(solve);

  CLI::App* converge =
      app.add_subcommand("converge", "run a refinement study");
  bind_string(converge, "benchmark", spec.benchmark,
              "standard | standard-vark | richardson");
  bind_string(converge, "levels", spec.levels,
              "level range 'a..b' or 'N' (default 2..5)");
  bind_string(converge, "out", spec.out,
              "report csv path (default convergence.csv)");
  bind_flag(converge, "reproducible", spec.reproducible,
            "force deterministic reductions (already the default)");
  bind_config(converge);

  CLI::App* verify =
      app.add_subcommand("verify", "run the mesh/operator invariant suite");
  bind_string(verify, "levels", spec.levels,
              "level range 'a..b' or 'N' (default 1..4)");
  bind_config(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    CLI::App* chosen = app.get_subcommands().front();
    spec.command = chosen->get_name();
    merge_config(config_path, bindings[spec.command]);

    if (spec.command == "mesh") return run_mesh(spec);
    if (spec.command == "solve") return run_solve(spec);
    if (spec.command == "converge") return run_converge(spec);
    return run_verify(spec);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 1;
  } catch (const HypothesisViolation& e) {
    std::fprintf(stderr, "hypothesis violation: %s\n", e.what());
    return 2;
  } catch (const SolverFailure& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

} // namespace boxtherm
