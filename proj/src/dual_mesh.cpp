#include "boxtherm/dual_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "boxtherm/errors.hpp"

namespace boxtherm {

namespace {

double quad_area(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  return 0.5 * (cross(a, b) + cross(b, c) + cross(c, d) + cross(d, a));
}

} // namespace

DualMesh build_dual_mesh(const Mesh& mesh) {
  DualMesh dual;
  dual.mesh_id = mesh.id;

  const int nt = mesh.triangle_count();
  dual.circumcenters.resize(static_cast<size_t>(nt));
  for (int t = 0; t < nt; ++t) {
    const auto& tri = mesh.triangles[static_cast<size_t>(t)];
    dual.circumcenters[static_cast<size_t>(t)] =
        circumcenter(mesh.point(tri[0]), mesh.point(tri[1]), mesh.point(tri[2]));
  }

  const std::vector<MeshEdge> edges = collect_edges(mesh);
  dual.segments.reserve(edges.size());
  for (const MeshEdge& e : edges) {
    DualSegment s;
    s.p = e.a;
    s.pstar = e.b;
    s.tri_count = e.tri_count;
    const Vec2 pa = mesh.point(e.a);
    const Vec2 pb = mesh.point(e.b);
    s.mid = midpoint(pa, pb);
    s.seg_len = norm(pb - pa);
    if (s.seg_len <= 0.0)
      throw Error("degenerate edge (" + std::to_string(e.a) + "," +
                  std::to_string(e.b) + ")");
    s.unit_normal = (1.0 / s.seg_len) * (pb - pa);
    for (int i = 0; i < e.tri_count; ++i) {
      s.tri[i] = e.tri[i];
      s.part_length[i] =
          norm(dual.circumcenters[static_cast<size_t>(e.tri[i])] - s.mid);
    }
    s.dual_length = s.part_length[0] + s.part_length[1];
    s.geom_weight = s.dual_length / s.seg_len;
    dual.segments.push_back(s);
  }

  dual.box_area.assign(mesh.vertices.size(), 0.0);
  for (int t = 0; t < nt; ++t) {
    const auto& tri = mesh.triangles[static_cast<size_t>(t)];
    const Vec2 v0 = mesh.point(tri[0]);
    const Vec2 v1 = mesh.point(tri[1]);
    const Vec2 v2 = mesh.point(tri[2]);
    const Vec2 m01 = midpoint(v0, v1);
    const Vec2 m12 = midpoint(v1, v2);
    const Vec2 m02 = midpoint(v0, v2);
    const Vec2 q = dual.circumcenters[static_cast<size_t>(t)];
    dual.box_area[static_cast<size_t>(tri[0])] += quad_area(v0, m01, q, m02);
    dual.box_area[static_cast<size_t>(tri[1])] += quad_area(v1, m12, q, m01);
    dual.box_area[static_cast<size_t>(tri[2])] += quad_area(v2, m02, q, m12);
  }
  return dual;
}

std::vector<Vec2> box_polygon(const Mesh& mesh, const DualMesh& dual,
                              int vertex) {
  if (vertex < 0 || vertex >= mesh.vertex_count())
    throw Error("box_polygon: vertex index out of range");

  // Directed dual arcs inside the star of the vertex: within each incident
  // triangle the box boundary runs midpoint -> circumcenter -> midpoint,
  // oriented so the vertex stays on the left (triangles are CCW).
  struct Arc {
    Vec2 entry, q, exit;
    int entry_other, exit_other; // opposite endpoints of the crossed edges
  };
  std::vector<Arc> arcs;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles[static_cast<size_t>(t)];
    int c = -1;
    for (int i = 0; i < 3; ++i)
      if (tri[static_cast<size_t>(i)] == vertex) c = i;
    if (c < 0) continue;
    const int next = tri[static_cast<size_t>((c + 1) % 3)];
    const int prev = tri[static_cast<size_t>((c + 2) % 3)];
    Arc a;
    a.entry = midpoint(mesh.point(vertex), mesh.point(next));
    a.q = dual.circumcenters[static_cast<size_t>(t)];
    a.exit = midpoint(mesh.point(vertex), mesh.point(prev));
    a.entry_other = next;
    a.exit_other = prev;
    arcs.push_back(a);
  }
  if (arcs.empty()) throw Error("box_polygon: vertex has no incident triangle");

  // Chain arcs: the exit edge of one arc is the entry edge of the next.
  std::map<int, size_t> by_entry;
  for (size_t i = 0; i < arcs.size(); ++i) {
    if (by_entry.count(arcs[i].entry_other))
      throw Error("box_polygon: vertex star is not a fan");
    by_entry[arcs[i].entry_other] = i;
  }
  size_t start = 0;
  bool on_boundary = mesh.boundary[static_cast<size_t>(vertex)] != 0;
  if (on_boundary) {
    // Start at the arc whose entry edge is a boundary edge (no predecessor).
    std::vector<char> has_pred(arcs.size(), 0);
    for (const Arc& a : arcs) {
      auto it = by_entry.find(a.exit_other);
      if (it != by_entry.end()) has_pred[it->second] = 1;
    }
    for (size_t i = 0; i < arcs.size(); ++i)
      if (!has_pred[i]) start = i;
  }

  std::vector<Vec2> poly;
  if (on_boundary) poly.push_back(mesh.point(vertex));
  size_t i = start;
  for (size_t used = 0; used < arcs.size(); ++used) {
    poly.push_back(arcs[i].entry);
    poly.push_back(arcs[i].q);
    const auto it = by_entry.find(arcs[i].exit_other);
    if (it == by_entry.end()) {
      poly.push_back(arcs[i].exit);
      break;
    }
    i = it->second;
  }

  std::vector<Vec2> out;
  for (const Vec2& p : poly) {
    if (!out.empty() && norm(p - out.back()) < 1e-14) continue;
    out.push_back(p);
  }
  while (out.size() > 2 && norm(out.front() - out.back()) < 1e-14)
    out.pop_back();
  return out;
}

} // namespace boxtherm
