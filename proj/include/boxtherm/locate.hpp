#pragma once

#include <array>
#include <vector>

#include "boxtherm/field.hpp"
#include "boxtherm/mesh.hpp"

namespace boxtherm {

// Point-in-triangle queries over a uniform bin grid.
class TriangleLocator {
public:
  explicit TriangleLocator(const Mesh& mesh);

  // Index of a triangle containing x (boundary inclusive). Fills bary with
  // the barycentric coordinates when given. Throws when x lies outside the
  // mesh beyond tolerance.
  int locate(Vec2 x, std::array<double, 3>* bary = nullptr) const;

  // Value of the piecewise-linear field at x.
  double eval(const NodalField& v, Vec2 x) const;

private:
  const Mesh& mesh_;
  Vec2 lo_{}, hi_{};
  double cell_ = 1.0;
  int nx_ = 1, ny_ = 1;
  std::vector<std::vector<int>> bins_;
};

// Re-expresses a piecewise-linear field on another mesh of the same domain
// by evaluating it at the target mesh vertices. Exact (up to rounding) when
// the target vertices resolve the source function, e.g. on nested meshes.
NodalField inject_field(const Mesh& source, const NodalField& v,
                        const Mesh& target);

} // namespace boxtherm
