#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"

#include "boxtherm/errors.hpp"
#include "boxtherm/mesh.hpp"

using namespace boxtherm;

namespace {

bool message_contains(const std::exception& e, const std::string& needle) {
  return std::string(e.what()).find(needle) != std::string::npos;
}

std::vector<std::pair<double, double>> sorted_points(const Mesh& m) {
  std::vector<std::pair<double, double>> pts;
  for (const Vec2& v : m.vertices) pts.push_back({v.x, v.y});
  std::sort(pts.begin(), pts.end());
  return pts;
}

} // namespace

TEST_SUITE("mesh") {

TEST_CASE("structured n=1 is two triangles over the unit square") {
  const Mesh m = generate_structured_mesh(1);
  CHECK(m.vertex_count() == 4);
  CHECK(m.triangle_count() == 2);
  CHECK(m.h == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(m.domain_area == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m.interior_count() == 0);
  for (char b : m.boundary) CHECK(b == 1);
}

TEST_CASE("structured n=2 has a single interior vertex at the center") {
  const Mesh m = generate_structured_mesh(2);
  CHECK(m.vertex_count() == 9);
  CHECK(m.triangle_count() == 8);
  CHECK(m.interior_count() == 1);
  int interior = -1;
  for (int v = 0; v < m.vertex_count(); ++v)
    if (!m.boundary[static_cast<size_t>(v)]) interior = v;
  REQUIRE(interior >= 0);
  CHECK(m.point(interior).x == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m.point(interior).y == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m.h == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
}

TEST_CASE("structured n=4 tiles the unit square") {
  const Mesh m = generate_structured_mesh(4);
  CHECK(m.triangle_count() == 32);
  CHECK(std::abs(m.domain_area - 1.0) <= 1e-12);
  const MeshReport report = validate_mesh(m);
  CHECK(report.valid());
  CHECK(report.min_angle_deg == doctest::Approx(45.0).epsilon(1e-12));
  CHECK(report.max_angle_deg == doctest::Approx(90.0).epsilon(1e-12));
}

TEST_CASE("edges of n=1: four boundary edges and one shared diagonal") {
  const Mesh m = generate_structured_mesh(1);
  const auto edges = collect_edges(m);
  CHECK(edges.size() == 5);
  int shared = 0;
  for (const MeshEdge& e : edges) {
    CHECK(e.a < e.b);
    if (e.tri_count == 2) ++shared;
  }
  CHECK(shared == 1);
  CHECK(std::is_sorted(edges.begin(), edges.end(),
                       [](const MeshEdge& x, const MeshEdge& y) {
                         return std::pair{x.a, x.b} < std::pair{y.a, y.b};
                       }));
}

TEST_CASE("serialize then parse round-trips exactly") {
  const Mesh m = generate_structured_mesh(3);
  const Mesh back = parse_mesh(serialize_mesh(m));
  REQUIRE(back.vertex_count() == m.vertex_count());
  REQUIRE(back.triangle_count() == m.triangle_count());
  for (int v = 0; v < m.vertex_count(); ++v) {
    CHECK(back.point(v).x == m.point(v).x);
    CHECK(back.point(v).y == m.point(v).y);
    CHECK(back.boundary[static_cast<size_t>(v)] ==
          m.boundary[static_cast<size_t>(v)]);
  }
  CHECK(back.triangles == m.triangles);
  CHECK(back.h == m.h);
}

TEST_CASE("parser accepts comments and mixed whitespace") {
  const Mesh m = parse_mesh("# unit square\n"
                            "4 2\n"
                            "0 0 1\n1 0 1   # corner\n1 1 1\n0 1 1\n"
                            "0 1 2\n"
                            "0 2 3\n");
  CHECK(m.vertex_count() == 4);
  CHECK(m.triangle_count() == 2);
}

TEST_CASE("refining twice matches the finer structured mesh") {
  Mesh m = generate_structured_mesh(1);
  m = refine_uniform(m);
  m = refine_uniform(m);
  const Mesh ref = generate_structured_mesh(4);
  CHECK(m.vertex_count() == ref.vertex_count());
  CHECK(m.triangle_count() == ref.triangle_count());
  CHECK(m.h == doctest::Approx(ref.h).epsilon(1e-14));
  CHECK(m.domain_area == doctest::Approx(ref.domain_area).epsilon(1e-14));
  const auto a = sorted_points(m);
  const auto b = sorted_points(ref);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].first == doctest::Approx(b[i].first).epsilon(1e-14));
    CHECK(a[i].second == doctest::Approx(b[i].second).epsilon(1e-14));
  }
}

TEST_CASE("build_mesh rejects an obtuse triangle") {
  try {
    build_mesh({{0, 0}, {1, 0}, {0.2, 0.05}}, {{{0, 1, 2}}});
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(message_contains(e, "obtuse"));
  }
}

TEST_CASE("build_mesh rejects clockwise triangles") {
  try {
    build_mesh({{0, 0}, {1, 0}, {0, 1}}, {{{0, 2, 1}}});
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(message_contains(e, "non-positive area"));
  }
}

TEST_CASE("build_mesh rejects an isolated vertex") {
  try {
    build_mesh({{0, 0}, {1, 0}, {0, 1}, {5, 5}}, {{{0, 1, 2}}});
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(message_contains(e, "isolated vertex"));
  }
}

TEST_CASE("parse rejects an obtuse triangle with its line number") {
  const std::string text = "3 1\n0 0 1\n1 0 1\n0.2 0.05 1\n0 1 2\n";
  try {
    parse_mesh(text);
    FAIL("expected a throw");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
    CHECK(message_contains(e, "obtuse"));
  }
}

TEST_CASE("parse rejects a vertex index out of range") {
  const std::string text = "3 1\n0 0 1\n1 0 1\n0 1 1\n0 1 7\n";
  try {
    parse_mesh(text);
    FAIL("expected a throw");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
    CHECK(message_contains(e, "out of range"));
  }
}

TEST_CASE("parse rejects trailing data") {
  const std::string text = "3 1\n0 0 1\n1 0 1\n0 1 1\n0 1 2\n9 9 9\n";
  CHECK_THROWS_AS(parse_mesh(text), ParseError);
}

TEST_CASE("parse rejects truncated input") {
  try {
    parse_mesh("3 1\n0 0 1\n1 0 1\n");
    FAIL("expected a throw");
  } catch (const ParseError& e) {
    CHECK(message_contains(e, "unexpected end of file"));
  }
}

TEST_CASE("parse rejects a non-conforming third triangle on an edge") {
  // three triangles sharing the edge (0,1)
  const std::string text = "4 3\n"
                           "0 0 1\n1 0 1\n0.5 0.5 1\n0.5 -0.5 1\n"
                           "0 1 2\n"
                           "0 3 1\n"
                           "0 1 2\n";
  try {
    parse_mesh(text);
    FAIL("expected a throw");
  } catch (const ParseError& e) {
    CHECK(message_contains(e, "third triangle"));
  }
}

TEST_CASE("parse rejects boundary flags that disagree with incidence") {
  const std::string text = "4 2\n"
                           "0 0 1\n1 0 1\n1 1 0\n0 1 1\n" // vertex 2 mislabeled
                           "0 1 2\n"
                           "0 2 3\n";
  try {
    parse_mesh(text);
    FAIL("expected a throw");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(message_contains(e, "boundary flag"));
  }
}

TEST_CASE("meshes get distinct ids") {
  const Mesh a = generate_structured_mesh(2);
  const Mesh b = generate_structured_mesh(2);
  CHECK(a.id != b.id);
}

TEST_CASE("validate_mesh summarizes quality") {
  const MeshReport r = validate_mesh(generate_structured_mesh(2));
  CHECK(r.valid());
  CHECK(r.edge_ratio == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  const std::string formatted = format_report(r);
  CHECK(formatted.find("angle") != std::string::npos);
}

} // TEST_SUITE
