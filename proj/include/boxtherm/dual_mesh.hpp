#pragma once

#include <cstdint>
#include <vector>

#include "boxtherm/geometry.hpp"
#include "boxtherm/mesh.hpp"

namespace boxtherm {

// One primal edge (p, pstar) together with the dual-boundary pieces that
// cross it. Each incident triangle contributes the straight piece from the
// edge midpoint to its circumcenter; both lie on the perpendicular bisector
// of the edge, so every piece is orthogonal to the edge.
struct DualSegment {
  int p = -1;
  int pstar = -1;
  int tri[2] = {-1, -1};
  int tri_count = 0;
  double part_length[2] = {0.0, 0.0}; // |circumcenter(tri[i]) - mid|
  Vec2 mid{};                         // midpoint of (p, pstar)
  double seg_len = 0.0;               // |pstar - p|
  double dual_length = 0.0;           // sum of part lengths
  Vec2 unit_normal{};                 // (pstar - p) / seg_len
  double geom_weight = 0.0;           // dual_length / seg_len
};

// Circumcenter dual of a non-obtuse triangulation. Boxes partition the
// domain: every triangle splits into three corner quads
// (vertex, edge midpoint, circumcenter, edge midpoint), one per corner.
struct DualMesh {
  std::uint64_t mesh_id = 0;
  std::vector<Vec2> circumcenters;   // one per triangle
  std::vector<DualSegment> segments; // one per primal edge, sorted by (p, pstar)
  std::vector<double> box_area;      // one per vertex

  double box_area_sum() const { return pairwise_sum(box_area); }
};

DualMesh build_dual_mesh(const Mesh& mesh);

// Boundary polygon of the box around a vertex, counterclockwise. Boundary
// vertices get a box closed along the domain boundary through the vertex
// itself. Consecutive duplicate points (right triangles put the
// circumcenter on an edge midpoint) are removed.
std::vector<Vec2> box_polygon(const Mesh& mesh, const DualMesh& dual, int vertex);

} // namespace boxtherm
