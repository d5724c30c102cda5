#include <cmath>
#include <vector>

#include "doctest.h"

#include "boxtherm/assembly.hpp"
#include "boxtherm/dual_mesh.hpp"
#include "boxtherm/errors.hpp"
#include "boxtherm/field.hpp"
#include "boxtherm/kernels.hpp"
#include "boxtherm/mesh.hpp"
#include "boxtherm/verification.hpp"

using namespace boxtherm;

namespace {

double entry(const SparseMatrix& m, int r, int c) {
  for (int k = m.row_offsets[static_cast<size_t>(r)];
       k < m.row_offsets[static_cast<size_t>(r) + 1]; ++k)
    if (m.col_index[static_cast<size_t>(k)] == c)
      return m.values[static_cast<size_t>(k)];
  return 0.0;
}

Coefficient handmade(double lower, double upper, double lipschitz,
                     std::function<double(double)> fn) {
  Coefficient c;
  c.spec = "handmade";
  c.lower = lower;
  c.upper = upper;
  c.lipschitz = lipschitz;
  c.fn = std::move(fn);
  return c;
}

} // namespace

TEST_SUITE("assembly") {

TEST_CASE("P1 mass matrix of one right triangle") {
  const Mesh mesh = build_mesh({{0, 0}, {1, 0}, {0, 1}}, {{{0, 1, 2}}});
  const SparseMatrix m = assemble_p1_mass(mesh);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(entry(m, i, j) ==
            doctest::Approx(i == j ? 1.0 / 12.0 : 1.0 / 24.0).epsilon(1e-14));
}

TEST_CASE("box mass diagonal is the box area") {
  const Mesh mesh = generate_structured_mesh(4);
  const DualMesh dual = build_dual_mesh(mesh);
  const DiagonalMatrix d = assemble_box_mass(dual);
  REQUIRE(d.size() == mesh.vertex_count());
  for (int v = 0; v < mesh.vertex_count(); ++v)
    CHECK(d.diag[static_cast<size_t>(v)] == dual.box_area[static_cast<size_t>(v)]);
}

TEST_CASE("flux matrix with unit coefficient reproduces the 5-point stencil") {
  const int n = 4;
  const Mesh mesh = generate_structured_mesh(n);
  const DualMesh dual = build_dual_mesh(mesh);
  const FluxPlan plan = make_flux_plan(mesh, dual);
  const std::vector<double> ones(plan.edges.size(), 1.0);
  const SparseMatrix a = assemble_flux_matrix(plan, ones);

  auto id = [&](int i, int j) { return j * (n + 1) + i; };
  const int p = id(2, 2);
  CHECK(entry(a, p, p) == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(entry(a, p, id(1, 2)) == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(entry(a, p, id(3, 2)) == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(entry(a, p, id(2, 1)) == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(entry(a, p, id(2, 3)) == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(std::abs(entry(a, p, id(3, 3))) <= 1e-13);
  CHECK(std::abs(entry(a, p, id(1, 1))) <= 1e-13);
}

TEST_CASE("flux matrix with unit coefficient equals the element stiffness oracle") {
  for (int level = 1; level <= 3; ++level) {
    const Mesh mesh = level_mesh(level);
    const DualMesh dual = build_dual_mesh(mesh);
    const FluxPlan plan = make_flux_plan(mesh, dual);
    const std::vector<double> ones(plan.edges.size(), 1.0);
    const SparseMatrix flux = assemble_flux_matrix(plan, ones);
    const SparseMatrix fem = fem_stiffness_oracle(mesh);
    CHECK(max_entry_difference(flux, fem) <= 1e-12);
  }
}

TEST_CASE("flux matrix is symmetric") {
  const Mesh mesh = level_mesh(3);
  const DualMesh dual = build_dual_mesh(mesh);
  const FluxPlan plan = make_flux_plan(mesh, dual);
  const NodalField u = random_zero_boundary_field(mesh, 99);
  const Coefficient k = parse_coefficient("sigmoid:0.5,2.0");
  const SparseMatrix a =
      assemble_flux_matrix(plan, edge_coefficients(plan, k, u));
  const NodalField v = random_zero_boundary_field(mesh, 100);
  const NodalField w = random_zero_boundary_field(mesh, 101);
  std::vector<double> av(v.values.size()), aw(w.values.size());
  kernels::spmv(a, v.values, av);
  kernels::spmv(a, w.values, aw);
  const double vaw = kernels::dot(v.values, aw);
  const double wav = kernels::dot(w.values, av);
  CHECK(vaw == doctest::Approx(wav).epsilon(1e-12));
}

TEST_CASE("affine fields have zero box flux on interior rows") {
  const Mesh mesh = level_mesh(3);
  const DualMesh dual = build_dual_mesh(mesh);
  const FluxPlan plan = make_flux_plan(mesh, dual);
  const std::vector<double> ones(plan.edges.size(), 1.0);
  const SparseMatrix a = assemble_flux_matrix(plan, ones);
  const NodalField v =
      interpolate(mesh, [](Vec2 p) { return 0.3 + 1.7 * p.x - 0.9 * p.y; });
  std::vector<double> av(v.values.size());
  kernels::spmv(a, v.values, av);
  for (int p = 0; p < mesh.vertex_count(); ++p)
    if (!mesh.boundary[static_cast<size_t>(p)])
      CHECK(std::abs(av[static_cast<size_t>(p)]) <= 1e-12);
}

TEST_CASE("reduced flux matrix keeps boundary-edge diagonal contributions") {
  const Mesh mesh = generate_structured_mesh(2);
  const DualMesh dual = build_dual_mesh(mesh);
  const FluxPlan plan = make_flux_plan(mesh, dual);
  const std::vector<double> ones(plan.edges.size(), 1.0);
  const SparseMatrix r = assemble_flux_matrix_reduced(plan, ones);
  REQUIRE(r.rows == 1);
  CHECK(entry(r, 0, 0) == doctest::Approx(4.0).epsilon(1e-13));

  const SparseMatrix full = assemble_flux_matrix(plan, ones);
  const SparseMatrix restricted = restrict_matrix(full, plan.interior);
  CHECK(max_entry_difference(r, restricted) <= 1e-14);
}

TEST_CASE("position-dependent assembly with a = 1 matches the edge path") {
  const Mesh mesh = level_mesh(2);
  const DualMesh dual = build_dual_mesh(mesh);
  const FluxPlan plan = make_flux_plan(mesh, dual);
  const std::vector<double> ones(plan.edges.size(), 1.0);
  const SparseMatrix a = assemble_flux_matrix(plan, ones);
  const SparseMatrix b =
      assemble_flux_matrix_xy(mesh, dual, [](Vec2) { return 1.0; });
  CHECK(max_entry_difference(a, b) <= 1e-12);
}

TEST_CASE("edge coefficient samples k at the edge mean value") {
  const Mesh mesh = generate_structured_mesh(2);
  const DualMesh dual = build_dual_mesh(mesh);
  const FluxPlan plan = make_flux_plan(mesh, dual);
  const Coefficient k = parse_coefficient("sigmoid:0.5,2.0");
  NodalField u = make_field(mesh);
  for (int v = 0; v < mesh.vertex_count(); ++v)
    u[v] = 0.1 * static_cast<double>(v);
  const std::vector<double> kbar = edge_coefficients(plan, k, u);
  REQUIRE(kbar.size() == plan.edges.size());
  for (size_t e = 0; e < plan.edges.size(); ++e) {
    const double mean = 0.5 * (u[plan.edges[e].p] + u[plan.edges[e].pstar]);
    CHECK(kbar[e] == k(mean));
  }
}

TEST_CASE("nonpositive edge coefficients are a hypothesis violation") {
  const Mesh mesh = generate_structured_mesh(2);
  const DualMesh dual = build_dual_mesh(mesh);
  const FluxPlan plan = make_flux_plan(mesh, dual);
  const Coefficient bad = handmade(1.0, 1.0, 0.0, [](double) { return -1.0; });
  const NodalField u = make_field(mesh);
  CHECK_THROWS_AS(edge_coefficients(plan, bad, u), HypothesisViolation);
}

TEST_CASE("lumped nonlocal integral matches a direct loop") {
  const Mesh mesh = generate_structured_mesh(2);
  const DualMesh dual = build_dual_mesh(mesh);
  const Coefficient f = parse_coefficient("bounded-quadratic:1,1,2");
  const NodalField u = random_zero_boundary_field(mesh, 5);
  double expected = 0.0;
  for (int p = 0; p < mesh.vertex_count(); ++p)
    expected += dual.box_area[static_cast<size_t>(p)] * f(u[p]);
  const double got = nonlocal_integral(mesh, dual, f, u);
  CHECK(got == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("centroid nonlocal integral agrees for constant f") {
  const Mesh mesh = generate_structured_mesh(3);
  const DualMesh dual = build_dual_mesh(mesh);
  const Coefficient f = parse_coefficient("const:2");
  const NodalField u = random_zero_boundary_field(mesh, 6);
  const double lumped =
      nonlocal_integral(mesh, dual, f, u, IntegralRule::BoxLumped);
  const double centroid =
      nonlocal_integral(mesh, dual, f, u, IntegralRule::TriangleCentroid);
  CHECK(lumped == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(centroid == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("source for u = 0 is lambda f(0) box / I^2 on interior vertices") {
  const Mesh mesh = generate_structured_mesh(4);
  const DualMesh dual = build_dual_mesh(mesh);
  const Coefficient f = parse_coefficient("const:2");
  const NodalField u = make_field(mesh);
  const NonlocalSource src = assemble_nonlocal_source(mesh, dual, f, u, 3.0);
  CHECK(src.integral == doctest::Approx(2.0).epsilon(1e-13));
  for (int p = 0; p < mesh.vertex_count(); ++p) {
    const double expected =
        mesh.boundary[static_cast<size_t>(p)]
            ? 0.0
            : 3.0 * 2.0 * dual.box_area[static_cast<size_t>(p)] / 4.0;
    CHECK(src.values[static_cast<size_t>(p)] ==
          doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("doubling a constant f halves the source") {
  const Mesh mesh = generate_structured_mesh(4);
  const DualMesh dual = build_dual_mesh(mesh);
  const NodalField u = make_field(mesh);
  const NonlocalSource one = assemble_nonlocal_source(
      mesh, dual, parse_coefficient("const:1"), u, 1.0);
  const NonlocalSource two = assemble_nonlocal_source(
      mesh, dual, parse_coefficient("const:2"), u, 1.0);
  for (int p = 0; p < mesh.vertex_count(); ++p)
    CHECK(two.values[static_cast<size_t>(p)] ==
          doctest::Approx(0.5 * one.values[static_cast<size_t>(p)])
              .epsilon(1e-13));
}

TEST_CASE("an integral below the declared floor is a hypothesis violation") {
  const Mesh mesh = generate_structured_mesh(2);
  const DualMesh dual = build_dual_mesh(mesh);
  const Coefficient lying = handmade(10.0, 10.0, 0.0, [](double) { return 1.0; });
  const NodalField u = make_field(mesh);
  CHECK_THROWS_AS(assemble_nonlocal_source(mesh, dual, lying, u, 1.0),
                  HypothesisViolation);
}

TEST_CASE("an integral at the floor passes") {
  const Mesh mesh = generate_structured_mesh(2);
  const DualMesh dual = build_dual_mesh(mesh);
  const Coefficient f = parse_coefficient("const:1");
  const NodalField u = make_field(mesh);
  const NonlocalSource src = assemble_nonlocal_source(mesh, dual, f, u, 1.0);
  CHECK(src.integral == doctest::Approx(1.0).epsilon(1e-13));
}

} // TEST_SUITE
