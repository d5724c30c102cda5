#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "boxtherm/benchmarks.hpp"
#include "boxtherm/mesh.hpp"
#include "boxtherm/solver.hpp"
#include "boxtherm/sparse.hpp"

namespace boxtherm {

// Structured-mesh refinement ladder: level L means n = 2^L cells per side.
Mesh level_mesh(int level);

// P1 stiffness matrix over all vertices by the cotangent formula per
// element, independent of the dual-mesh code path.
SparseMatrix fem_stiffness_oracle(const Mesh& mesh);

// Dense oracles (for small systems only).
double dense_min_eigenvalue(const SparseMatrix& m);
std::vector<double> dense_solve(const SparseMatrix& m,
                                const std::vector<double>& rhs);

// Largest |A_ij - B_ij| over the union of both sparsity patterns.
double max_entry_difference(const SparseMatrix& a, const SparseMatrix& b);

// Uniform [-1,1] vertex values, zero on the boundary. Deterministic per seed.
NodalField random_zero_boundary_field(const Mesh& mesh, std::uint64_t seed);

// Largest residual of v(pstar) - v(p) = (grad v . n) |pstar - p| over all
// segments and their owning triangles.
double jump_identity_residual(const Mesh& mesh, const DualMesh& dual,
                              const NodalField& v);

// Largest |piece direction . edge direction| over nonzero dual pieces.
double piece_orthogonality_residual(const DualMesh& dual);

// Least-squares slope of log(err) vs log(h).
double fit_rate(const std::vector<double>& h, const std::vector<double>& err);

struct LevelErrors {
  int level = 0;
  double h = 0.0;
  double tau = 0.0;
  double err_linf_l2 = 0.0;
  double err_l2_h1 = 0.0;
  double err_linf_h1 = 0.0;
};

struct ErrorReport {
  std::vector<LevelErrors> levels;
  double rate_linf_l2 = 0.0;
  double rate_l2_h1 = 0.0;
  double rate_linf_h1 = 0.0;

  void fit_rates();
  bool pass(double min_rate = 0.9) const {
    return rate_linf_l2 >= min_rate && rate_l2_h1 >= min_rate &&
           rate_linf_h1 >= min_rate;
  }
};

// Manufactured-solution study: solves the case on each level with
// tau = tau0 * h and measures errors against the exact solution in the
// space-time norms (max-in-time L2, time-integrated H1, max-in-time H1).
ErrorReport run_convergence_study(const ManufacturedCase& bench,
                                  const std::vector<int>& levels,
                                  const SolverConfig& base = {});

struct RichardsonReport {
  ErrorReport report;             // errors vs the fine-grid reference
  int reference_level = 7;
  double steady_center_coarse = 0.0; // transient long-run value at the center
  double steady_center_reference = 0.0;
  double steady_rel_diff = 0.0;
};

// Self-convergence of the unforced problem on a fixed time grid against a
// fine reference level, plus the steady-state center-value comparison.
RichardsonReport run_richardson_study(const Problem& problem,
                                      const std::vector<int>& levels,
                                      int reference_level = 7,
                                      double tau = 0.05, double t_final = 1.0,
                                      const SolverConfig& base = {});

struct InvariantCheck {
  std::string name;
  bool pass = false;
  double value = 0.0; // measured quantity
  double bound = 0.0; // threshold it is compared against
  std::string detail;
};

struct InvariantReport {
  std::vector<InvariantCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Mesh/operator identities on structured levels 1..max_level: box partition,
// piece orthogonality, jump identity, stiffness equivalence, SPD, norm
// equivalence bands, box-interpolant approximation band.
InvariantReport invariant_suite(int max_level);

std::string format_invariant_report(const InvariantReport& report);

} // namespace boxtherm
