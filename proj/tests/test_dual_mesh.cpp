#include <cmath>
#include <vector>

#include "doctest.h"

#include "boxtherm/dual_mesh.hpp"
#include "boxtherm/geometry.hpp"
#include "boxtherm/mesh.hpp"

using namespace boxtherm;

TEST_SUITE("dual") {

TEST_CASE("n=1: both circumcenters sit at the square center") {
  const Mesh mesh = generate_structured_mesh(1);
  const DualMesh dual = build_dual_mesh(mesh);
  REQUIRE(dual.circumcenters.size() == 2);
  for (const Vec2& q : dual.circumcenters) {
    CHECK(q.x == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(q.y == doctest::Approx(0.5).epsilon(1e-14));
  }
  // Each corner box is one quarter of the square.
  for (double a : dual.box_area) CHECK(a == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(std::abs(dual.box_area_sum() - mesh.domain_area) <= 1e-12);
}

TEST_CASE("n=1: the diagonal contributes a zero-length dual piece") {
  const Mesh mesh = generate_structured_mesh(1);
  const DualMesh dual = build_dual_mesh(mesh);
  int diagonal = -1;
  for (size_t s = 0; s < dual.segments.size(); ++s)
    if (dual.segments[s].tri_count == 2) diagonal = static_cast<int>(s);
  REQUIRE(diagonal >= 0);
  const DualSegment& d = dual.segments[static_cast<size_t>(diagonal)];
  CHECK(d.dual_length <= 1e-14);
  CHECK(d.geom_weight <= 1e-14);
  CHECK(d.seg_len == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("n=2 box areas: corners 1/16, edge midpoints 1/8, center 1/4") {
  const Mesh mesh = generate_structured_mesh(2);
  const DualMesh dual = build_dual_mesh(mesh);
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    const Vec2 p = mesh.point(v);
    const bool corner = (p.x == 0.0 || p.x == 1.0) && (p.y == 0.0 || p.y == 1.0);
    const double expected = corner ? 1.0 / 16.0
                            : mesh.boundary[static_cast<size_t>(v)] ? 1.0 / 8.0
                                                                    : 0.25;
    CHECK(dual.box_area[static_cast<size_t>(v)] ==
          doctest::Approx(expected).epsilon(1e-13));
  }
  CHECK(std::abs(dual.box_area_sum() - 1.0) <= 1e-12);
}

TEST_CASE("boxes partition the domain across refinement levels") {
  for (int n : {1, 2, 4, 8, 16}) {
    const Mesh mesh = generate_structured_mesh(n);
    const DualMesh dual = build_dual_mesh(mesh);
    CHECK(std::abs(dual.box_area_sum() - mesh.domain_area) <=
          1e-12 * mesh.domain_area);
    for (double a : dual.box_area) CHECK(a > 0.0);
  }
}

TEST_CASE("dual pieces are perpendicular to their primal edge") {
  const Mesh mesh = generate_structured_mesh(3);
  const DualMesh dual = build_dual_mesh(mesh);
  for (const DualSegment& s : dual.segments) {
    CHECK(s.seg_len > 0.0);
    CHECK(norm(s.unit_normal) == doctest::Approx(1.0).epsilon(1e-14));
    for (int i = 0; i < s.tri_count; ++i) {
      const Vec2 q = dual.circumcenters[static_cast<size_t>(s.tri[i])];
      CHECK(std::abs(dot(q - s.mid, s.unit_normal)) <= 1e-13);
    }
  }
}

TEST_CASE("segment list is sorted by endpoint pair") {
  const Mesh mesh = generate_structured_mesh(3);
  const DualMesh dual = build_dual_mesh(mesh);
  for (size_t s = 1; s < dual.segments.size(); ++s) {
    const auto a = std::pair{dual.segments[s - 1].p, dual.segments[s - 1].pstar};
    const auto b = std::pair{dual.segments[s].p, dual.segments[s].pstar};
    CHECK(a < b);
  }
  for (const DualSegment& s : dual.segments) CHECK(s.p < s.pstar);
}

TEST_CASE("box polygons trace the box boundary with the right area") {
  const Mesh mesh = generate_structured_mesh(2);
  const DualMesh dual = build_dual_mesh(mesh);
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    const std::vector<Vec2> poly = box_polygon(mesh, dual, v);
    REQUIRE(poly.size() >= 3);
    CHECK(polygon_area(poly) ==
          doctest::Approx(dual.box_area[static_cast<size_t>(v)]).epsilon(1e-12));
  }
}

TEST_CASE("box polygon of an interior vertex omits the vertex itself") {
  const Mesh mesh = generate_structured_mesh(4);
  const DualMesh dual = build_dual_mesh(mesh);
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    if (mesh.boundary[static_cast<size_t>(v)]) continue;
    for (const Vec2& q : box_polygon(mesh, dual, v))
      CHECK(norm(q - mesh.point(v)) > 1e-12);
  }
}

} // TEST_SUITE
