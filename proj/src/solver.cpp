#include "boxtherm/solver.hpp"

#include <algorithm>
#include <cmath>

#include "boxtherm/cg.hpp"
#include "boxtherm/errors.hpp"
#include "boxtherm/operators.hpp"

namespace boxtherm {

void SolverConfig::validate() const {
  if (!(tau > 0.0)) throw ConfigError("tau must be > 0");
  if (!(t_final > 0.0)) throw ConfigError("t_final must be > 0");
  if (!(picard_tol > 0.0)) throw ConfigError("picard_tol must be > 0");
  if (picard_max_iters < 1) throw ConfigError("picard_max_iters must be >= 1");
  if (!(cg_tol > 0.0)) throw ConfigError("cg_tol must be > 0");
  if (cg_max_iters < 1) throw ConfigError("cg_max_iters must be >= 1");
  if (!(tau_backoff > 0.0 && tau_backoff < 1.0))
    throw ConfigError("tau_backoff must be in (0, 1)");
  if (max_backoffs < 0) throw ConfigError("max_backoffs must be >= 0");
  if (snapshot_stride < 0) throw ConfigError("snapshot_stride must be >= 0");
}

BoxSchemeSolver::BoxSchemeSolver(const Mesh& mesh, const DualMesh& dual,
                                 Problem problem, SolverConfig config)
    : mesh_(mesh), dual_(dual), problem_(std::move(problem)),
      config_(config), plan_(make_flux_plan(mesh, dual)) {
  config_.validate();
  if (!(problem_.lambda > 0.0)) throw ConfigError("lambda must be > 0");
  if (!problem_.k.fn || !problem_.f.fn)
    throw ConfigError("problem needs both coefficients k and f");
}

NodalField BoxSchemeSolver::initial_state() const {
  if (!problem_.initial) return make_field(mesh_);
  return l2_project(mesh_, problem_.initial, 2, true);
}

double BoxSchemeSolver::increment_norm(const NodalField& a,
                                       const NodalField& b) const {
  require_on_mesh(a, mesh_, "increment_norm");
  require_on_mesh(b, mesh_, "increment_norm");
  std::vector<double> terms(dual_.box_area.size());
  for (size_t p = 0; p < terms.size(); ++p) {
    const double d = a.values[p] - b.values[p];
    terms[p] = dual_.box_area[p] * d * d;
  }
  return std::sqrt(pairwise_sum(terms));
}

NodalField BoxSchemeSolver::apply_step_operator(const NodalField& u_prev,
                                                const NodalField& state,
                                                double tau, double t_next,
                                                StepDiagnostics* diag) const {
  require_on_mesh(u_prev, mesh_, "apply_step_operator");
  require_on_mesh(state, mesh_, "apply_step_operator");

  const std::vector<double> kbar = edge_coefficients(plan_, problem_.k, state);
  const SparseMatrix flux = assemble_flux_matrix_reduced(plan_, kbar);
  const NonlocalSource src = assemble_nonlocal_source(
      mesh_, dual_, problem_.f, state, problem_.lambda, config_.integral_rule);

  const IndexMap& map = plan_.interior;
  const int ni = map.reduced_size();
  std::vector<double> mass_over_tau(static_cast<size_t>(ni));
  std::vector<double> rhs(static_cast<size_t>(ni));
  double source_max = 0.0;
  for (int i = 0; i < ni; ++i) {
    const size_t p = static_cast<size_t>(map.reduced_to_full[static_cast<size_t>(i)]);
    mass_over_tau[static_cast<size_t>(i)] = dual_.box_area[p] / tau;
    double r = mass_over_tau[static_cast<size_t>(i)] * u_prev.values[p] +
               src.values[p];
    if (problem_.forcing)
      r += dual_.box_area[p] * problem_.forcing(mesh_.point(static_cast<int>(p)), t_next);
    rhs[static_cast<size_t>(i)] = r;
    source_max = std::max(source_max, std::abs(src.values[p]));
  }

  CgConfig cg;
  cg.tol = config_.cg_tol;
  cg.max_iters = config_.cg_max_iters;
  cg.reduction = config_.reduction;
  const CgResult res = cg_solve(
      ni,
      [&](std::span<const double> x, std::span<double> y) {
        kernels::spmv(flux, x, y);
        for (int i = 0; i < ni; ++i)
          y[static_cast<size_t>(i)] +=
              mass_over_tau[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
      },
      rhs, cg);

  if (diag) {
    diag->cg_iters += res.iterations;
    diag->integral = src.integral;
    diag->source_max = source_max;
  }

  NodalField w = make_field(mesh_);
  w.values = map.scatter(res.x);
  return w;
}

NodalField BoxSchemeSolver::picard_solve(const NodalField& u_prev, double tau,
                                         double t_next,
                                         StepDiagnostics& diag) const {
  NodalField iterate = u_prev;
  double delta_prev = -1.0;
  diag.picard_iters = 0;
  diag.contraction = 0.0;
  for (int m = 1; m <= config_.picard_max_iters; ++m) {
    NodalField next = apply_step_operator(u_prev, iterate, tau, t_next, &diag);
    const double delta = increment_norm(next, iterate);
    iterate = std::move(next);
    if (delta_prev > 0.0)
      diag.contraction = std::max(diag.contraction, delta / delta_prev);
    delta_prev = delta;
    if (delta <= config_.picard_tol) {
      diag.picard_iters = m - 1;
      return iterate;
    }
  }
  throw SolverFailure("picard iteration did not converge (tau " +
                          std::to_string(tau) + ")",
                      delta_prev, config_.picard_max_iters);
}

NodalField BoxSchemeSolver::advance(const NodalField& u_prev, double t_prev,
                                    double tau, StepDiagnostics& diag) const {
  diag = StepDiagnostics{};
  double try_tau = tau;
  for (int attempt = 0;; ++attempt) {
    try {
      NodalField w = picard_solve(u_prev, try_tau, t_prev + try_tau, diag);
      diag.tau = try_tau;
      diag.t = t_prev + try_tau;
      return w;
    } catch (const SolverFailure&) {
      if (attempt >= config_.max_backoffs) throw;
      try_tau *= config_.tau_backoff;
      ++diag.backoffs;
      diag.cg_iters = 0;
    }
  }
}

Trajectory BoxSchemeSolver::solve_transient() const {
  Trajectory traj;
  traj.mesh_id = mesh_.id;
  NodalField u = initial_state();
  traj.times.push_back(0.0);
  traj.snapshots.push_back(u);

  const double horizon = config_.t_final * (1.0 - 1e-12);
  double t = 0.0;
  long step = 0;
  while (t < horizon) {
    const double tau = std::min(config_.tau, config_.t_final - t);
    StepDiagnostics diag;
    NodalField w = advance(u, t, tau, diag);
    t = diag.t;
    u = std::move(w);
    traj.steps.push_back(diag);
    ++step;
    const bool record =
        config_.snapshot_stride > 0 && step % config_.snapshot_stride == 0;
    if (record || t >= horizon) {
      if (traj.times.empty() || traj.times.back() < t) {
        traj.times.push_back(t);
        traj.snapshots.push_back(u);
      }
    }
  }
  return traj;
}

NodalField BoxSchemeSolver::steady_state(int picard_max_iters) const {
  NodalField iterate = make_field(mesh_);
  const IndexMap& map = plan_.interior;
  CgConfig cg;
  cg.tol = config_.cg_tol;
  cg.max_iters = config_.cg_max_iters;
  cg.reduction = config_.reduction;

  double delta_prev = -1.0;
  for (int m = 1; m <= picard_max_iters; ++m) {
    const std::vector<double> kbar =
        edge_coefficients(plan_, problem_.k, iterate);
    const SparseMatrix flux = assemble_flux_matrix_reduced(plan_, kbar);
    const NonlocalSource src =
        assemble_nonlocal_source(mesh_, dual_, problem_.f, iterate,
                                 problem_.lambda, config_.integral_rule);
    const std::vector<double> rhs = map.extract(src.values);
    const CgResult res = cg_solve(flux, rhs, cg);

    NodalField next = make_field(mesh_);
    next.values = map.scatter(res.x);
    const double delta = increment_norm(next, iterate);
    iterate = std::move(next);
    if (delta <= config_.picard_tol) return iterate;
    delta_prev = delta;
  }
  throw SolverFailure("steady state iteration did not converge", delta_prev,
                      picard_max_iters);
}

} // namespace boxtherm
