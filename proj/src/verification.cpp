#include "boxtherm/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include <Eigen/Dense>

#include "boxtherm/assembly.hpp"
#include "boxtherm/dual_mesh.hpp"
#include "boxtherm/errors.hpp"
#include "boxtherm/kernels.hpp"
#include "boxtherm/locate.hpp"
#include "boxtherm/operators.hpp"

namespace boxtherm {

namespace {

double cot(Vec2 at, Vec2 u, Vec2 v) {
  const Vec2 a = u - at;
  const Vec2 b = v - at;
  return dot(a, b) / cross(a, b);
}

Eigen::MatrixXd to_dense(const SparseMatrix& m) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m.rows, m.cols);
  for (int r = 0; r < m.rows; ++r)
    for (int k = m.row_offsets[static_cast<size_t>(r)];
         k < m.row_offsets[static_cast<size_t>(r) + 1]; ++k)
      d(r, m.col_index[static_cast<size_t>(k)]) =
          m.values[static_cast<size_t>(k)];
  return d;
}

// P1 L2 norm of a field without needing a dual mesh.
double p1_l2(const Mesh& mesh, const NodalField& v) {
  std::vector<double> terms(mesh.triangles.size());
  for (size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    const double area = signed_area(mesh.point(tri[0]), mesh.point(tri[1]),
                                    mesh.point(tri[2]));
    const double v0 = v[tri[0]], v1 = v[tri[1]], v2 = v[tri[2]];
    terms[t] = area / 6.0 *
               (v0 * v0 + v1 * v1 + v2 * v2 + v0 * v1 + v0 * v2 + v1 * v2);
  }
  return std::sqrt(pairwise_sum(terms));
}

double p1_h1_semi(const Mesh& mesh, const NodalField& v) {
  std::vector<double> terms(mesh.triangles.size());
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles[static_cast<size_t>(t)];
    const double area = signed_area(mesh.point(tri[0]), mesh.point(tri[1]),
                                    mesh.point(tri[2]));
    const Vec2 g = triangle_gradient(mesh, v, t);
    terms[static_cast<size_t>(t)] = area * dot(g, g);
  }
  return std::sqrt(pairwise_sum(terms));
}

} // namespace

Mesh level_mesh(int level) {
  if (level < 1 || level > 12) throw Error("level must be in 1..12");
  return generate_structured_mesh(1 << level);
}

SparseMatrix fem_stiffness_oracle(const Mesh& mesh) {
  std::vector<SparseMatrix::Triplet> triplets;
  triplets.reserve(9 * mesh.triangles.size());
  for (const auto& t : mesh.triangles) {
    const Vec2 p[3] = {mesh.point(t[0]), mesh.point(t[1]), mesh.point(t[2])};
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3;
      const int k = (i + 2) % 3;
      const double w = 0.5 * cot(p[k], p[i], p[j]);
      triplets.push_back({t[static_cast<size_t>(i)], t[static_cast<size_t>(j)], -w});
      triplets.push_back({t[static_cast<size_t>(j)], t[static_cast<size_t>(i)], -w});
      triplets.push_back({t[static_cast<size_t>(i)], t[static_cast<size_t>(i)], w});
      triplets.push_back({t[static_cast<size_t>(j)], t[static_cast<size_t>(j)], w});
    }
  }
  const int nv = mesh.vertex_count();
  return SparseMatrix::from_triplets(nv, nv, std::move(triplets));
}

double dense_min_eigenvalue(const SparseMatrix& m) {
  if (m.rows != m.cols) throw Error("dense_min_eigenvalue: square matrix only");
  if (m.rows > 2000) throw Error("dense_min_eigenvalue: matrix too large");
  const Eigen::MatrixXd d = to_dense(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d);
  return es.eigenvalues().minCoeff();
}

std::vector<double> dense_solve(const SparseMatrix& m,
                                const std::vector<double>& rhs) {
  if (m.rows != m.cols || static_cast<int>(rhs.size()) != m.rows)
    throw Error("dense_solve: size mismatch");
  const Eigen::MatrixXd d = to_dense(m);
  Eigen::VectorXd b(m.rows);
  for (int i = 0; i < m.rows; ++i) b(i) = rhs[static_cast<size_t>(i)];
  const Eigen::VectorXd x = d.ldlt().solve(b);
  return std::vector<double>(x.data(), x.data() + x.size());
}

double max_entry_difference(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw Error("max_entry_difference: shape mismatch");
  double worst = 0.0;
  for (int r = 0; r < a.rows; ++r) {
    int ia = a.row_offsets[static_cast<size_t>(r)];
    int ib = b.row_offsets[static_cast<size_t>(r)];
    const int ea = a.row_offsets[static_cast<size_t>(r) + 1];
    const int eb = b.row_offsets[static_cast<size_t>(r) + 1];
    while (ia < ea || ib < eb) {
      const int ca = ia < ea ? a.col_index[static_cast<size_t>(ia)] : a.cols;
      const int cb = ib < eb ? b.col_index[static_cast<size_t>(ib)] : b.cols;
      double va = 0.0, vb = 0.0;
      if (ca <= cb) va = a.values[static_cast<size_t>(ia++)];
      if (cb <= ca) vb = b.values[static_cast<size_t>(ib++)];
      worst = std::max(worst, std::abs(va - vb));
    }
  }
  return worst;
}

NodalField random_zero_boundary_field(const Mesh& mesh, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  NodalField v = make_field(mesh);
  for (int p = 0; p < mesh.vertex_count(); ++p)
    if (!mesh.boundary[static_cast<size_t>(p)]) v[p] = dist(rng);
  return v;
}

double jump_identity_residual(const Mesh& mesh, const DualMesh& dual,
                              const NodalField& v) {
  require_on_mesh(v, mesh, "jump_identity_residual");
  double worst = 0.0;
  for (const DualSegment& s : dual.segments) {
    const double jump = v[s.pstar] - v[s.p];
    for (int i = 0; i < s.tri_count; ++i) {
      const Vec2 g = triangle_gradient(mesh, v, s.tri[i]);
      const double predicted = dot(g, s.unit_normal) * s.seg_len;
      worst = std::max(worst, std::abs(jump - predicted));
    }
  }
  return worst;
}

double piece_orthogonality_residual(const DualMesh& dual) {
  double worst = 0.0;
  for (const DualSegment& s : dual.segments) {
    for (int i = 0; i < s.tri_count; ++i) {
      if (s.part_length[i] < 1e-14) continue;
      const Vec2 q = dual.circumcenters[static_cast<size_t>(s.tri[i])];
      const Vec2 dir = (1.0 / s.part_length[i]) * (q - s.mid);
      worst = std::max(worst, std::abs(dot(dir, s.unit_normal)));
    }
  }
  return worst;
}

double fit_rate(const std::vector<double>& h, const std::vector<double>& err) {
  if (h.size() != err.size() || h.size() < 2)
    throw Error("fit_rate: need at least two matching samples");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(h.size());
  for (size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0) || !(err[i] > 0.0))
      throw Error("fit_rate: nonpositive sample");
    const double x = std::log(h[i]);
    const double y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void ErrorReport::fit_rates() {
  std::vector<double> h, e1, e2, e3;
  for (const LevelErrors& l : levels) {
    h.push_back(l.h);
    e1.push_back(l.err_linf_l2);
    e2.push_back(l.err_l2_h1);
    e3.push_back(l.err_linf_h1);
  }
  rate_linf_l2 = fit_rate(h, e1);
  rate_l2_h1 = fit_rate(h, e2);
  rate_linf_h1 = fit_rate(h, e3);
}

ErrorReport run_convergence_study(const ManufacturedCase& bench,
                                  const std::vector<int>& levels,
                                  const SolverConfig& base) {
  ErrorReport report;
  for (int level : levels) {
    const Mesh mesh = level_mesh(level);
    const DualMesh dual = build_dual_mesh(mesh);
    SolverConfig cfg = base;
    cfg.t_final = bench.t_final;
    cfg.tau = bench.tau0 * mesh.h;
    cfg.snapshot_stride = 1;
    const BoxSchemeSolver solver(mesh, dual, bench.problem, cfg);
    const Trajectory traj = solver.solve_transient();

    LevelErrors le;
    le.level = level;
    le.h = mesh.h;
    le.tau = cfg.tau;
    double l2h1_sq = 0.0;
    for (size_t n = 0; n < traj.times.size(); ++n) {
      const double t = traj.times[n];
      auto u_t = [&](Vec2 p) { return bench.exact(p, t); };
      auto gu_t = [&](Vec2 p) { return bench.exact_grad(p, t); };
      const double el2 = l2_error(mesh, traj.snapshots[n], u_t);
      const double eh1 = h1_error(mesh, traj.snapshots[n], u_t, gu_t);
      le.err_linf_l2 = std::max(le.err_linf_l2, el2);
      le.err_linf_h1 = std::max(le.err_linf_h1, eh1);
      if (n > 0) l2h1_sq += traj.steps[n - 1].tau * eh1 * eh1;
    }
    le.err_l2_h1 = std::sqrt(l2h1_sq);
    report.levels.push_back(le);
  }
  report.fit_rates();
  return report;
}

RichardsonReport run_richardson_study(const Problem& problem,
                                      const std::vector<int>& levels,
                                      int reference_level, double tau,
                                      double t_final,
                                      const SolverConfig& base) {
  RichardsonReport out;
  out.reference_level = reference_level;

  SolverConfig cfg = base;
  cfg.tau = tau;
  cfg.t_final = t_final;
  cfg.snapshot_stride = 1;

  const Mesh ref_mesh = level_mesh(reference_level);
  const DualMesh ref_dual = build_dual_mesh(ref_mesh);
  const BoxSchemeSolver ref_solver(ref_mesh, ref_dual, problem, cfg);
  const Trajectory ref = ref_solver.solve_transient();

  for (int level : levels) {
    const Mesh mesh = level_mesh(level);
    const DualMesh dual = build_dual_mesh(mesh);
    const BoxSchemeSolver solver(mesh, dual, problem, cfg);
    const Trajectory traj = solver.solve_transient();
    if (traj.times.size() != ref.times.size())
      throw Error("richardson study: time grids do not match");

    LevelErrors le;
    le.level = level;
    le.h = mesh.h;
    le.tau = tau;
    double l2h1_sq = 0.0;
    for (size_t n = 0; n < traj.times.size(); ++n) {
      if (std::abs(traj.times[n] - ref.times[n]) > 1e-12)
        throw Error("richardson study: time grids do not match");
      NodalField diff = inject_field(mesh, traj.snapshots[n], ref_mesh);
      for (int p = 0; p < ref_mesh.vertex_count(); ++p)
        diff[p] -= ref.snapshots[n][p];
      const double el2 = p1_l2(ref_mesh, diff);
      const double esemi = p1_h1_semi(ref_mesh, diff);
      const double eh1 = std::sqrt(el2 * el2 + esemi * esemi);
      le.err_linf_l2 = std::max(le.err_linf_l2, el2);
      le.err_linf_h1 = std::max(le.err_linf_h1, eh1);
      if (n > 0) l2h1_sq += traj.steps[n - 1].tau * eh1 * eh1;
    }
    le.err_l2_h1 = std::sqrt(l2h1_sq);
    out.report.levels.push_back(le);
  }
  out.report.fit_rates();

  // Steady comparison: long transient on the finest study level against the
  // direct steady solve on the reference level, sampled at the center.
  {
    const int level = *std::max_element(levels.begin(), levels.end());
    const Mesh mesh = level_mesh(level);
    const DualMesh dual = build_dual_mesh(mesh);
    SolverConfig long_cfg = cfg;
    long_cfg.t_final = 2.0;
    long_cfg.snapshot_stride = 0;
    const BoxSchemeSolver solver(mesh, dual, problem, long_cfg);
    const Trajectory traj = solver.solve_transient();
    const TriangleLocator coarse_loc(mesh);
    out.steady_center_coarse =
        coarse_loc.eval(traj.snapshots.back(), {0.5, 0.5});

    const NodalField steady = ref_solver.steady_state();
    const TriangleLocator ref_loc(ref_mesh);
    out.steady_center_reference = ref_loc.eval(steady, {0.5, 0.5});
    out.steady_rel_diff =
        std::abs(out.steady_center_coarse - out.steady_center_reference) /
        std::abs(out.steady_center_reference);
  }
  return out;
}

InvariantReport invariant_suite(int max_level) {
  InvariantReport report;
  char buf[160];

  std::vector<double> band_0h, band_1h, gap_ratio, gap_h;
  for (int level = 1; level <= max_level; ++level) {
    const Mesh mesh = level_mesh(level);
    const DualMesh dual = build_dual_mesh(mesh);
    const std::string tag = "level " + std::to_string(level);

    {
      const double rel =
          std::abs(dual.box_area_sum() - mesh.domain_area) / mesh.domain_area;
      report.checks.push_back({"box partition (" + tag + ")", rel <= 1e-12,
                               rel, 1e-12, "relative area defect"});
    }
    {
      const double r = piece_orthogonality_residual(dual);
      report.checks.push_back({"piece orthogonality (" + tag + ")",
                               r <= 1e-12, r, 1e-12,
                               "max |piece dir . edge dir|"});
    }
    {
      double worst = 0.0;
      for (int s = 0; s < 10; ++s) {
        const NodalField v = random_zero_boundary_field(
            mesh, 1000ULL * static_cast<std::uint64_t>(level) +
                      static_cast<std::uint64_t>(s));
        worst = std::max(worst, jump_identity_residual(mesh, dual, v));
      }
      report.checks.push_back({"jump identity (" + tag + ")", worst <= 1e-12,
                               worst, 1e-12, "10 random fields"});
    }
    {
      const FluxPlan plan = make_flux_plan(mesh, dual);
      const std::vector<double> ones(plan.edges.size(), 1.0);
      const SparseMatrix flux = assemble_flux_matrix(plan, ones);
      const SparseMatrix fem = fem_stiffness_oracle(mesh);
      const double diff = max_entry_difference(flux, fem);
      report.checks.push_back({"stiffness equivalence (" + tag + ")",
                               diff <= 1e-12, diff, 1e-12,
                               "box flux vs element oracle, k = 1"});

      const SparseMatrix reduced = assemble_flux_matrix_reduced(plan, ones);
      if (reduced.rows <= 300) {
        const double lam = dense_min_eigenvalue(reduced);
        report.checks.push_back({"SPD smallest eigenvalue (" + tag + ")",
                                 lam > 0.0, lam, 0.0, "dense eigensolve"});
      } else {
        double qmin = std::numeric_limits<double>::max();
        std::mt19937_64 rng(42ULL + static_cast<std::uint64_t>(level));
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        std::vector<double> x(static_cast<size_t>(reduced.rows));
        std::vector<double> y(static_cast<size_t>(reduced.rows));
        for (int trial = 0; trial < 100; ++trial) {
          for (double& xi : x) xi = dist(rng);
          kernels::spmv(reduced, x, y);
          qmin = std::min(qmin, kernels::dot(x, y));
        }
        report.checks.push_back({"SPD quadratic form (" + tag + ")",
                                 qmin > 0.0, qmin, 0.0,
                                 "min x'Ax over 100 random x"});
      }
    }
    {
      for (int s = 0; s < 25; ++s) {
        const NodalField v = random_zero_boundary_field(
            mesh, 77ULL * static_cast<std::uint64_t>(level) +
                      static_cast<std::uint64_t>(s));
        const NormBundle nb = compute_norms(mesh, dual, v);
        if (nb.l2 > 0.0) band_0h.push_back(nb.norm_0h / nb.l2);
        if (nb.h1_semi > 0.0) band_1h.push_back(nb.norm_1h / nb.h1_semi);
      }
    }
    {
      const NodalField v = interpolate(mesh, [](Vec2 p) {
        return std::sin(3.14159265358979323846 * p.x) *
               std::sin(3.14159265358979323846 * p.y);
      });
      const double gap = box_interpolant_gap(mesh, dual, v);
      gap_ratio.push_back(gap / mesh.h);
      gap_h.push_back(mesh.h);
    }
  }

  auto band_check = [&](const char* name, const std::vector<double>& band) {
    const auto [lo, hi] = std::minmax_element(band.begin(), band.end());
    const double ratio = *hi / *lo;
    std::snprintf(buf, sizeof buf, "band [%.6g, %.6g] over %zu samples", *lo,
                  *hi, band.size());
    report.checks.push_back(
        {name, ratio <= 10.0, ratio, 10.0, buf});
  };
  band_check("lumped/exact L2 norm band (all levels)", band_0h);
  band_check("jump/exact H1 seminorm band (all levels)", band_1h);
  band_check("box interpolant gap / h band (all levels)", gap_ratio);

  return report;
}

std::string format_invariant_report(const InvariantReport& report) {
  std::string out;
  char buf[256];
  for (const InvariantCheck& c : report.checks) {
    std::snprintf(buf, sizeof buf, "%s  %-45s value %.6g  bound %.6g  (%s)\n",
                  c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value, c.bound,
                  c.detail.c_str());
    out += buf;
  }
  return out;
}

} // namespace boxtherm
