#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"

#include "boxtherm/benchmarks.hpp"
#include "boxtherm/dual_mesh.hpp"
#include "boxtherm/errors.hpp"
#include "boxtherm/solver.hpp"
#include "boxtherm/sparse.hpp"
#include "boxtherm/verification.hpp"

using namespace boxtherm;

TEST_SUITE("verification") {

TEST_CASE("level meshes follow the 2^level ladder") {
  const Mesh m = level_mesh(2);
  CHECK(m.vertex_count() == 25);
  CHECK(m.triangle_count() == 32);
  CHECK_THROWS_AS(level_mesh(0), Error);
  CHECK_THROWS_AS(level_mesh(13), Error);
}

TEST_CASE("fit_rate recovers exact power laws") {
  const std::vector<double> h{0.5, 0.25, 0.125, 0.0625};
  std::vector<double> e1, e2;
  for (double x : h) {
    e1.push_back(3.0 * x);
    e2.push_back(0.2 * x * x);
  }
  CHECK(fit_rate(h, e1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit_rate(h, e2) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_rate({0.5}, {1.0}), Error);
  CHECK_THROWS_AS(fit_rate({0.5, 0.25}, {1.0, 0.0}), Error);
}

TEST_CASE("dense oracles on a 2x2 system") {
  const SparseMatrix m = SparseMatrix::from_triplets(
      2, 2, {{0, 0, 2.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 2.0}});
  CHECK(dense_min_eigenvalue(m) == doctest::Approx(1.0).epsilon(1e-12));
  const std::vector<double> x = dense_solve(m, {3.0, 3.0});
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("max_entry_difference sees both patterns") {
  const SparseMatrix a = SparseMatrix::from_triplets(2, 2, {{0, 0, 1.0}});
  const SparseMatrix b = SparseMatrix::from_triplets(2, 2, {{1, 1, 4.0}});
  CHECK(max_entry_difference(a, b) == doctest::Approx(4.0));
  CHECK(max_entry_difference(a, a) == 0.0);
}

TEST_CASE("random fields are zero on the boundary and depend on the seed") {
  const Mesh mesh = level_mesh(2);
  const NodalField a = random_zero_boundary_field(mesh, 1);
  const NodalField b = random_zero_boundary_field(mesh, 1);
  const NodalField c = random_zero_boundary_field(mesh, 2);
  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
  for (int v = 0; v < mesh.vertex_count(); ++v)
    if (mesh.boundary[static_cast<size_t>(v)]) CHECK(a[v] == 0.0);
}

TEST_CASE("jump identity holds for piecewise-linear fields") {
  const Mesh mesh = level_mesh(3);
  const DualMesh dual = build_dual_mesh(mesh);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const NodalField v = random_zero_boundary_field(mesh, seed);
    CHECK(jump_identity_residual(mesh, dual, v) <= 1e-12);
  }
}

TEST_CASE("dual pieces are orthogonal to their edges") {
  const Mesh mesh = level_mesh(3);
  const DualMesh dual = build_dual_mesh(mesh);
  CHECK(piece_orthogonality_residual(dual) <= 1e-12);
}

TEST_CASE("invariant suite passes on small levels") {
  const InvariantReport report = invariant_suite(2);
  CHECK(report.all_pass());
  const std::string text = format_invariant_report(report);
  CHECK(text.find("PASS") != std::string::npos);
  CHECK(text.find("FAIL") == std::string::npos);
  CHECK(text.find("box partition") != std::string::npos);
  CHECK(text.find("stiffness equivalence") != std::string::npos);
}

TEST_CASE("convergence study carries levels, h and tau") {
  const ManufacturedCase bench = standard_benchmark(false);
  SolverConfig cfg;
  const ErrorReport report = run_convergence_study(bench, {2, 3}, cfg);
  REQUIRE(report.levels.size() == 2);
  CHECK(report.levels[0].level == 2);
  CHECK(report.levels[1].level == 3);
  CHECK(report.levels[0].h == doctest::Approx(std::sqrt(2.0) / 4.0));
  CHECK(report.levels[0].tau ==
        doctest::Approx(0.1 * report.levels[0].h).epsilon(1e-12));
  CHECK(report.levels[1].err_linf_l2 < report.levels[0].err_linf_l2);
  CHECK(report.levels[1].err_linf_h1 < report.levels[0].err_linf_h1);
  CHECK(report.rate_linf_l2 > 0.5);
}

TEST_CASE("errors include the initial snapshot") {
  // A deliberately wrong initial state must show up in the max-in-time L2
  // error even if it decays immediately.
  ManufacturedCase bench = standard_benchmark(false);
  bench.problem.initial = [](Vec2) { return 0.0; }; // exact solution is not 0
  bench.t_final = 0.05;
  const ErrorReport report = run_convergence_study(bench, {2, 3});
  for (const LevelErrors& l : report.levels)
    CHECK(l.err_linf_l2 >= 0.45); // |sin sin|_L2 = 0.5 at t = 0
}

} // TEST_SUITE
