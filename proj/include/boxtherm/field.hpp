#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "boxtherm/errors.hpp"
#include "boxtherm/mesh.hpp"

namespace boxtherm {

// Vertex values of a continuous piecewise-linear function. Tagged with the
// id of the mesh it lives on so mismatched meshes fail loudly.
struct NodalField {
  std::vector<double> values;
  std::uint64_t mesh_id = 0;

  int size() const { return static_cast<int>(values.size()); }
  double& operator[](int i) { return values[static_cast<size_t>(i)]; }
  double operator[](int i) const { return values[static_cast<size_t>(i)]; }
};

inline NodalField make_field(const Mesh& mesh, double fill = 0.0) {
  return {std::vector<double>(mesh.vertices.size(), fill), mesh.id};
}

inline void require_on_mesh(const NodalField& f, const Mesh& mesh,
                            const char* what) {
  if (f.mesh_id != mesh.id || f.size() != mesh.vertex_count())
    throw Error(std::string(what) + ": field does not belong to this mesh");
}

// Vertex interpolant i_h g.
inline NodalField interpolate(const Mesh& mesh,
                              const std::function<double(Vec2)>& g) {
  NodalField f = make_field(mesh);
  for (int v = 0; v < mesh.vertex_count(); ++v) f[v] = g(mesh.point(v));
  return f;
}

inline void zero_boundary(const Mesh& mesh, NodalField& f) {
  require_on_mesh(f, mesh, "zero_boundary");
  for (int v = 0; v < mesh.vertex_count(); ++v)
    if (mesh.boundary[static_cast<size_t>(v)]) f[v] = 0.0;
}

} // namespace boxtherm
