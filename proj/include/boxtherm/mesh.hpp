#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "boxtherm/geometry.hpp"

namespace boxtherm {

/// Conforming triangulation of a convex polygonal domain.
///
/// Invariants (enforced on construction and on parse):
///   - every triangle is counterclockwise with positive area;
///   - every edge belongs to one triangle (boundary) or two (interior);
///   - every triangle is non-obtuse, so its circumcenter stays inside the
///     closed triangle and the dual boxes form a true partition;
///   - boundary flags agree with edge incidence;
///   - triangle areas sum to the domain area.
/// Immutable after construction; safe to share across threads.
struct Mesh {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles; // counterclockwise
  std::vector<char> boundary;                // per-vertex flag
  double h = 0.0;                            // max edge length
  double domain_area = 0.0;
  std::uint64_t id = 0; // identity token fields are checked against

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int triangle_count() const { return static_cast<int>(triangles.size()); }
  int interior_count() const;
  Vec2 point(int v) const { return vertices[static_cast<size_t>(v)]; }
};

/// Unique mesh edge with its incident triangles, canonically ordered a < b.
struct MeshEdge {
  int a = -1;
  int b = -1;
  int tri[2] = {-1, -1}; // second slot -1 on the boundary
  int tri_count = 0;
};

/// All unique edges sorted by (a, b). The order is the segment order used by
/// the dual mesh and by assembly.
std::vector<MeshEdge> collect_edges(const Mesh& mesh);

/// Builds a mesh from raw vertex/triangle data, deriving the boundary flags
/// and validating every invariant. Throws Error on violation.
Mesh build_mesh(std::vector<Vec2> vertices,
                std::vector<std::array<int, 3>> triangles);

/// Unit square split into n x n cells, two right isoceles triangles per cell
/// along the (i,j) -> (i+1,j+1) diagonal. (n+1)^2 vertices, 2 n^2 triangles,
/// h = sqrt(2)/n.
Mesh generate_structured_mesh(int n);

/// Splits every triangle into 4 congruent children by edge midpoints.
/// Halves h and preserves non-obtuseness.
Mesh refine_uniform(const Mesh& mesh);

/// Mesh text format:
///   line 1:        "nv nt"
///   next nv lines: "x y b"   (b in {0,1}: boundary flag)
///   next nt lines: "i j k"   (0-based, counterclockwise)
/// Whitespace separated; '#' begins a comment that runs to end of line.
Mesh parse_mesh(const std::string& text);
std::string serialize_mesh(const Mesh& mesh);

Mesh load_mesh_file(const std::string& path);
void save_mesh_file(const Mesh& mesh, const std::string& path);

/// Quality/validity summary. Reports, never throws.
struct MeshReport {
  double min_angle_deg = 0.0;
  double max_angle_deg = 0.0;
  double min_edge = 0.0;
  double max_edge = 0.0;
  double h = 0.0;
  double edge_ratio = 0.0; // max edge / min edge (quasi-uniformity measure)
  double triangle_area_sum = 0.0;
  double domain_area = 0.0;
  bool conforming = false;
  bool non_obtuse = false;
  bool boundary_flags_consistent = false;
  bool area_consistent = false; // |sum - domain| <= 1e-12 relative

  bool valid() const {
    return conforming && non_obtuse && boundary_flags_consistent &&
           area_consistent;
  }
};

MeshReport validate_mesh(const Mesh& mesh);
std::string format_report(const MeshReport& report);

} // namespace boxtherm
