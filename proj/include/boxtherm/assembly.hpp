#pragma once

#include <functional>
#include <vector>

#include "boxtherm/coefficients.hpp"
#include "boxtherm/dual_mesh.hpp"
#include "boxtherm/field.hpp"
#include "boxtherm/parallel.hpp"
#include "boxtherm/sparse.hpp"

namespace boxtherm {

// Precomputed assembly data for the box-scheme flux matrix. The matrix row
// for a vertex p discretizes the outward flux through the box boundary:
// each primal edge e = (p, pstar) carries the weight
//   w_e = coeff_e * dual_length(e) / |pstar - p|
// contributing +w_e at (p,p) and (pstar,pstar), -w_e at (p,pstar) and
// (pstar,p). Rows are filled independently from per-edge weights, so
// assembly parallelizes over rows without atomics and is deterministic.
struct FluxPlan {
  std::uint64_t mesh_id = 0;
  SparseMatrix pattern;        // full pattern over all vertices, zero values
  SparseMatrix pattern_reduced; // interior rows/columns only
  IndexMap interior;

  struct Edge {
    int p, pstar;
    double geom_weight; // dual_length / seg_len
  };
  std::vector<Edge> edges;

  struct Slot {
    int value_index; // into pattern.values (or pattern_reduced.values)
    int edge;
    double sign;
  };
  // Per-row scatter lists for the full and the reduced matrix.
  std::vector<int> scatter_offsets;
  std::vector<Slot> scatter;
  std::vector<int> scatter_offsets_reduced;
  std::vector<Slot> scatter_reduced;
};

FluxPlan make_flux_plan(const Mesh& mesh, const DualMesh& dual);

// Edge coefficient k((u_p + u_pstar) / 2). Throws HypothesisViolation if any
// edge coefficient is not strictly positive.
std::vector<double> edge_coefficients(const FluxPlan& plan,
                                      const Coefficient& k,
                                      const NodalField& state);

SparseMatrix assemble_flux_matrix(const FluxPlan& plan,
                                  const std::vector<double>& edge_coeff);
SparseMatrix assemble_flux_matrix_reduced(const FluxPlan& plan,
                                          const std::vector<double>& edge_coeff);

// Flux matrix for a position-dependent coefficient a(x), integrated along
// the dual pieces of every edge with a composite midpoint rule.
SparseMatrix assemble_flux_matrix_xy(const Mesh& mesh, const DualMesh& dual,
                                     const std::function<double(Vec2)>& a,
                                     int points_per_piece = 4);

// Box measure diag(|b_p|), the mass term of the scheme.
DiagonalMatrix assemble_box_mass(const DualMesh& dual);

// Piecewise-linear finite element mass matrix, used by the L2 projection.
SparseMatrix assemble_p1_mass(const Mesh& mesh);

// How the nonlocal denominator integral(f(u)) is evaluated.
enum class IntegralRule {
  BoxLumped,        // sum over vertices of box_area * f(u_p)
  TriangleCentroid, // sum over triangles of area * f(u at centroid)
};

double nonlocal_integral(const Mesh& mesh, const DualMesh& dual,
                         const Coefficient& f, const NodalField& u,
                         IntegralRule rule = IntegralRule::BoxLumped);

struct NonlocalSource {
  std::vector<double> values; // per vertex: lambda f(u_p) |b_p| / I^2, 0 on boundary
  double integral = 0.0;      // I = integral of f(u)
};

// Throws HypothesisViolation when I < f.lower * domain_area - tolerance
// (relative tolerance floor_tol absorbs roundoff only).
NonlocalSource assemble_nonlocal_source(const Mesh& mesh, const DualMesh& dual,
                                        const Coefficient& f,
                                        const NodalField& u, double lambda,
                                        IntegralRule rule = IntegralRule::BoxLumped,
                                        double floor_tol = 1e-12);

} // namespace boxtherm
