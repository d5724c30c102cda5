#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "boxtherm/assembly.hpp"
#include "boxtherm/coefficients.hpp"
#include "boxtherm/dual_mesh.hpp"
#include "boxtherm/field.hpp"
#include "boxtherm/mesh.hpp"
#include "boxtherm/parallel.hpp"

namespace boxtherm {

struct SolverConfig {
  double tau = 0.01;
  double t_final = 1.0;
  double picard_tol = 1e-10; // on the lumped norm of Picard increments
  int picard_max_iters = 25;
  double cg_tol = 1e-12;
  int cg_max_iters = 20000;
  double tau_backoff = 0.5; // factor applied to tau when Picard fails
  int max_backoffs = 8;
  int snapshot_stride = 1; // record every n-th step; 0 keeps only endpoints
  IntegralRule integral_rule = IntegralRule::BoxLumped;
  Reduction reduction = Reduction::ordered;

  void validate() const; // throws ConfigError
};

// The continuous problem: du/dt - div(k(u) grad u) = lambda f(u)/I(u)^2 + g
// with I(u) the domain integral of f(u), zero boundary values, u(0) = u0.
// g is an optional extra forcing for manufactured-solution studies; without
// it the scheme is the plain nonlocal problem.
struct Problem {
  Coefficient k;
  Coefficient f;
  double lambda = 1.0;
  std::function<double(Vec2)> initial;         // null means u0 = 0
  std::function<double(Vec2, double)> forcing; // null means g = 0
};

struct StepDiagnostics {
  double t = 0.0;   // time reached by the step
  double tau = 0.0; // accepted step size
  int picard_iters = 0;
  double contraction = 0.0; // max ratio of consecutive increment norms
  int cg_iters = 0;         // summed over Picard iterations
  double integral = 0.0;    // nonlocal integral at the final iterate
  double source_max = 0.0;  // largest source entry magnitude
  int backoffs = 0;
};

struct Trajectory {
  std::uint64_t mesh_id = 0;
  std::vector<double> times; // snapshot times, starting at 0
  std::vector<NodalField> snapshots;
  std::vector<StepDiagnostics> steps; // one per accepted step
};

class BoxSchemeSolver {
public:
  BoxSchemeSolver(const Mesh& mesh, const DualMesh& dual, Problem problem,
                  SolverConfig config);

  // Initial state: L2 projection of u0 constrained to zero boundary values.
  NodalField initial_state() const;

  // One application of the frozen-coefficient step operator
  //   (D/tau + A(state)) w = (D/tau) u_prev + b(state) + lumped g(., t_next)
  // over interior vertices, w = 0 on the boundary. This is the map whose
  // fixed point the Picard iteration seeks.
  NodalField apply_step_operator(const NodalField& u_prev,
                                 const NodalField& state, double tau,
                                 double t_next,
                                 StepDiagnostics* diag = nullptr) const;

  // Picard iteration from state = u_prev until the increment norm drops
  // below picard_tol. Reported picard_iters excludes the converged
  // confirmation, so frozen (constant) coefficients report exactly 1.
  NodalField picard_solve(const NodalField& u_prev, double tau, double t_next,
                          StepDiagnostics& diag) const;

  // picard_solve with step-size backoff on nonconvergence.
  NodalField advance(const NodalField& u_prev, double t_prev, double tau,
                     StepDiagnostics& diag) const;

  Trajectory solve_transient() const;

  // Steady state A(w) w = b(w) by the same Picard iteration.
  NodalField steady_state(int picard_max_iters = 200) const;

  // Lumped norm of the difference on this solver's mesh.
  double increment_norm(const NodalField& a, const NodalField& b) const;

  const Mesh& mesh() const { return mesh_; }
  const DualMesh& dual() const { return dual_; }
  const Problem& problem() const { return problem_; }
  const SolverConfig& config() const { return config_; }
  const FluxPlan& plan() const { return plan_; }

private:
  const Mesh& mesh_;
  const DualMesh& dual_;
  Problem problem_;
  SolverConfig config_;
  FluxPlan plan_;
};

} // namespace boxtherm
