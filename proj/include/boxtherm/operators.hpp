#pragma once

#include <functional>

#include "boxtherm/dual_mesh.hpp"
#include "boxtherm/field.hpp"
#include "boxtherm/mesh.hpp"

namespace boxtherm {

struct NormBundle {
  double l2 = 0.0;      // exact L2 norm of the piecewise-linear field
  double h1_semi = 0.0; // exact H1 seminorm
  double norm_0h = 0.0; // lumped: sqrt(sum_p box_area(p) v(p)^2)
  double norm_1h = 0.0; // jump norm: sqrt(sum over edges of (v(pstar)-v(p))^2)
};

// Constant gradient of the piecewise-linear field on one triangle.
Vec2 triangle_gradient(const Mesh& mesh, const NodalField& v, int t);

NormBundle compute_norms(const Mesh& mesh, const DualMesh& dual,
                         const NodalField& v);

// max(|values|) and max over triangles of |gradient|.
double w1inf_norm(const Mesh& mesh, const NodalField& v);

// Exact L2 distance between the field and its box-wise constant
// interpolant (value v(p) on the box of p).
double box_interpolant_gap(const Mesh& mesh, const DualMesh& dual,
                           const NodalField& v);

// L2 projection onto the piecewise-linear space: solves the consistent-mass
// system with right side integrated by a quadrature rule of the given
// degree. With constrain_boundary the projection is onto the subspace with
// zero boundary values.
NodalField l2_project(const Mesh& mesh, const std::function<double(Vec2)>& u,
                      int quad_degree = 2, bool constrain_boundary = false);

// Flux projection: the field matching the boundary values of the vertex
// interpolant whose box fluxes of a(x) grad(.) agree with those of the
// exact u on every interior box. Dual-piece line integrals use a composite
// midpoint rule with points_per_piece points.
NodalField flux_projection(const Mesh& mesh, const DualMesh& dual,
                           const std::function<double(Vec2)>& a,
                           const std::function<double(Vec2)>& u,
                           const std::function<Vec2(Vec2)>& grad_u,
                           int points_per_piece = 4);

// Errors of a piecewise-linear field against an analytic function by
// elementwise quadrature.
double l2_error(const Mesh& mesh, const NodalField& v,
                const std::function<double(Vec2)>& u, int quad_degree = 5);
double h1_semi_error(const Mesh& mesh, const NodalField& v,
                     const std::function<Vec2(Vec2)>& grad_u,
                     int quad_degree = 5);

// Full H1 error sqrt(l2^2 + seminorm^2).
double h1_error(const Mesh& mesh, const NodalField& v,
                const std::function<double(Vec2)>& u,
                const std::function<Vec2(Vec2)>& grad_u, int quad_degree = 5);

} // namespace boxtherm
