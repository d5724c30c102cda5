#include "boxtherm/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "boxtherm/errors.hpp"

namespace boxtherm {

namespace {

int find_slot(const SparseMatrix& m, int row, int col) {
  const int lo = m.row_offsets[static_cast<size_t>(row)];
  const int hi = m.row_offsets[static_cast<size_t>(row) + 1];
  const auto begin = m.col_index.begin() + lo;
  const auto end = m.col_index.begin() + hi;
  const auto it = std::lower_bound(begin, end, col);
  if (it == end || *it != col) throw Error("flux plan: missing matrix slot");
  return static_cast<int>(it - m.col_index.begin());
}

void flatten(std::vector<std::vector<FluxPlan::Slot>>& per_row,
             std::vector<int>& offsets, std::vector<FluxPlan::Slot>& flat) {
  offsets.assign(per_row.size() + 1, 0);
  size_t total = 0;
  for (size_t r = 0; r < per_row.size(); ++r) {
    total += per_row[r].size();
    offsets[r + 1] = static_cast<int>(total);
  }
  flat.clear();
  flat.reserve(total);
  for (auto& row : per_row)
    flat.insert(flat.end(), row.begin(), row.end());
}

SparseMatrix fill_from_plan(const SparseMatrix& pattern,
                            const std::vector<int>& offsets,
                            const std::vector<FluxPlan::Slot>& scatter,
                            const std::vector<double>& edge_weight) {
  SparseMatrix m = pattern;
  const int rows = m.rows;
#pragma omp parallel for schedule(static)
  for (int r = 0; r < rows; ++r) {
    for (int s = offsets[static_cast<size_t>(r)];
         s < offsets[static_cast<size_t>(r) + 1]; ++s) {
      const FluxPlan::Slot& slot = scatter[static_cast<size_t>(s)];
      m.values[static_cast<size_t>(slot.value_index)] +=
          slot.sign * edge_weight[static_cast<size_t>(slot.edge)];
    }
  }
  return m;
}

} // namespace

FluxPlan make_flux_plan(const Mesh& mesh, const DualMesh& dual) {
  if (dual.mesh_id != mesh.id)
    throw Error("make_flux_plan: dual mesh does not belong to this mesh");
  FluxPlan plan;
  plan.mesh_id = mesh.id;
  plan.interior = IndexMap::interior(mesh);

  const int nv = mesh.vertex_count();
  plan.edges.reserve(dual.segments.size());
  std::vector<SparseMatrix::Triplet> full, reduced;
  full.reserve(4 * dual.segments.size() + static_cast<size_t>(nv));
  for (int v = 0; v < nv; ++v) full.push_back({v, v, 0.0});
  for (int v : plan.interior.reduced_to_full) {
    const int rv = plan.interior.full_to_reduced[static_cast<size_t>(v)];
    reduced.push_back({rv, rv, 0.0});
  }
  for (const DualSegment& s : dual.segments) {
    plan.edges.push_back({s.p, s.pstar, s.geom_weight});
    full.push_back({s.p, s.pstar, 0.0});
    full.push_back({s.pstar, s.p, 0.0});
    const int rp = plan.interior.full_to_reduced[static_cast<size_t>(s.p)];
    const int rq = plan.interior.full_to_reduced[static_cast<size_t>(s.pstar)];
    if (rp >= 0 && rq >= 0) {
      reduced.push_back({rp, rq, 0.0});
      reduced.push_back({rq, rp, 0.0});
    }
  }
  plan.pattern = SparseMatrix::from_triplets(nv, nv, std::move(full));
  const int ni = plan.interior.reduced_size();
  plan.pattern_reduced =
      SparseMatrix::from_triplets(ni, ni, std::move(reduced));

  std::vector<std::vector<FluxPlan::Slot>> rows(static_cast<size_t>(nv));
  std::vector<std::vector<FluxPlan::Slot>> rows_reduced(static_cast<size_t>(ni));
  for (size_t e = 0; e < plan.edges.size(); ++e) {
    const int p = plan.edges[e].p;
    const int q = plan.edges[e].pstar;
    const int ei = static_cast<int>(e);
    rows[static_cast<size_t>(p)].push_back(
        {find_slot(plan.pattern, p, p), ei, +1.0});
    rows[static_cast<size_t>(p)].push_back(
        {find_slot(plan.pattern, p, q), ei, -1.0});
    rows[static_cast<size_t>(q)].push_back(
        {find_slot(plan.pattern, q, q), ei, +1.0});
    rows[static_cast<size_t>(q)].push_back(
        {find_slot(plan.pattern, q, p), ei, -1.0});
    const int rp = plan.interior.full_to_reduced[static_cast<size_t>(p)];
    const int rq = plan.interior.full_to_reduced[static_cast<size_t>(q)];
    if (rp >= 0) {
      rows_reduced[static_cast<size_t>(rp)].push_back(
          {find_slot(plan.pattern_reduced, rp, rp), ei, +1.0});
      if (rq >= 0)
        rows_reduced[static_cast<size_t>(rp)].push_back(
            {find_slot(plan.pattern_reduced, rp, rq), ei, -1.0});
    }
    if (rq >= 0) {
      rows_reduced[static_cast<size_t>(rq)].push_back(
          {find_slot(plan.pattern_reduced, rq, rq), ei, +1.0});
      if (rp >= 0)
        rows_reduced[static_cast<size_t>(rq)].push_back(
            {find_slot(plan.pattern_reduced, rq, rp), ei, -1.0});
    }
  }
  flatten(rows, plan.scatter_offsets, plan.scatter);
  flatten(rows_reduced, plan.scatter_offsets_reduced, plan.scatter_reduced);
  return plan;
}

std::vector<double> edge_coefficients(const FluxPlan& plan,
                                      const Coefficient& k,
                                      const NodalField& state) {
  if (state.mesh_id != plan.mesh_id)
    throw Error("edge_coefficients: field does not belong to this mesh");
  const long ne = static_cast<long>(plan.edges.size());
  std::vector<double> kbar(static_cast<size_t>(ne));
  double kmin = std::numeric_limits<double>::max();
#pragma omp parallel for schedule(static) reduction(min : kmin)
  for (long e = 0; e < ne; ++e) {
    const FluxPlan::Edge& edge = plan.edges[static_cast<size_t>(e)];
    const double v = k(0.5 * (state[edge.p] + state[edge.pstar]));
    kbar[static_cast<size_t>(e)] = v;
    kmin = std::min(kmin, v);
  }
  if (!(kmin > 0.0)) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "edge coefficient %.9g is not positive (coefficient '%s')",
                  kmin, k.spec.c_str());
    throw HypothesisViolation(buf);
  }
  return kbar;
}

SparseMatrix assemble_flux_matrix(const FluxPlan& plan,
                                  const std::vector<double>& edge_coeff) {
  if (edge_coeff.size() != plan.edges.size())
    throw Error("assemble_flux_matrix: one coefficient per edge required");
  const long ne = static_cast<long>(plan.edges.size());
  std::vector<double> w(static_cast<size_t>(ne));
#pragma omp parallel for schedule(static)
  for (long e = 0; e < ne; ++e)
    w[static_cast<size_t>(e)] = edge_coeff[static_cast<size_t>(e)] *
                                plan.edges[static_cast<size_t>(e)].geom_weight;
  return fill_from_plan(plan.pattern, plan.scatter_offsets, plan.scatter, w);
}

SparseMatrix assemble_flux_matrix_reduced(const FluxPlan& plan,
                                          const std::vector<double>& edge_coeff) {
  if (edge_coeff.size() != plan.edges.size())
    throw Error("assemble_flux_matrix_reduced: one coefficient per edge required");
  const long ne = static_cast<long>(plan.edges.size());
  std::vector<double> w(static_cast<size_t>(ne));
#pragma omp parallel for schedule(static)
  for (long e = 0; e < ne; ++e)
    w[static_cast<size_t>(e)] = edge_coeff[static_cast<size_t>(e)] *
                                plan.edges[static_cast<size_t>(e)].geom_weight;
  return fill_from_plan(plan.pattern_reduced, plan.scatter_offsets_reduced,
                        plan.scatter_reduced, w);
}

SparseMatrix assemble_flux_matrix_xy(const Mesh& mesh, const DualMesh& dual,
                                     const std::function<double(Vec2)>& a,
                                     int points_per_piece) {
  if (points_per_piece < 1)
    throw Error("assemble_flux_matrix_xy: need at least one point per piece");
  std::vector<SparseMatrix::Triplet> triplets;
  triplets.reserve(4 * dual.segments.size());
  for (const DualSegment& s : dual.segments) {
    double integral = 0.0;
    for (int i = 0; i < s.tri_count; ++i) {
      const Vec2 q = dual.circumcenters[static_cast<size_t>(s.tri[i])];
      const Vec2 d = q - s.mid;
      const double step = s.part_length[i] / points_per_piece;
      for (int j = 0; j < points_per_piece; ++j) {
        const Vec2 x = s.mid + ((j + 0.5) / points_per_piece) * d;
        integral += a(x) * step;
      }
    }
    const double w = integral / s.seg_len;
    triplets.push_back({s.p, s.p, w});
    triplets.push_back({s.pstar, s.pstar, w});
    triplets.push_back({s.p, s.pstar, -w});
    triplets.push_back({s.pstar, s.p, -w});
  }
  const int nv = mesh.vertex_count();
  return SparseMatrix::from_triplets(nv, nv, std::move(triplets));
}

DiagonalMatrix assemble_box_mass(const DualMesh& dual) {
  return DiagonalMatrix{dual.box_area};
}

SparseMatrix assemble_p1_mass(const Mesh& mesh) {
  std::vector<SparseMatrix::Triplet> triplets;
  triplets.reserve(9 * mesh.triangles.size());
  for (const auto& t : mesh.triangles) {
    const double area = signed_area(mesh.point(t[0]), mesh.point(t[1]),
                                    mesh.point(t[2]));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        triplets.push_back({t[static_cast<size_t>(i)],
                            t[static_cast<size_t>(j)],
                            i == j ? area / 6.0 : area / 12.0});
  }
  const int nv = mesh.vertex_count();
  return SparseMatrix::from_triplets(nv, nv, std::move(triplets));
}

double nonlocal_integral(const Mesh& mesh, const DualMesh& dual,
                         const Coefficient& f, const NodalField& u,
                         IntegralRule rule) {
  require_on_mesh(u, mesh, "nonlocal_integral");
  std::vector<double> terms;
  if (rule == IntegralRule::BoxLumped) {
    terms.resize(dual.box_area.size());
    for (size_t p = 0; p < terms.size(); ++p)
      terms[p] = dual.box_area[p] * f(u.values[p]);
  } else {
    terms.resize(mesh.triangles.size());
    for (size_t t = 0; t < terms.size(); ++t) {
      const auto& tri = mesh.triangles[t];
      const double area = signed_area(mesh.point(tri[0]), mesh.point(tri[1]),
                                      mesh.point(tri[2]));
      const double uc =
          (u[tri[0]] + u[tri[1]] + u[tri[2]]) / 3.0;
      terms[t] = area * f(uc);
    }
  }
  return pairwise_sum(terms);
}

NonlocalSource assemble_nonlocal_source(const Mesh& mesh, const DualMesh& dual,
                                        const Coefficient& f,
                                        const NodalField& u, double lambda,
                                        IntegralRule rule, double floor_tol) {
  NonlocalSource src;
  src.integral = nonlocal_integral(mesh, dual, f, u, rule);
  const double floor = f.lower * mesh.domain_area;
  if (src.integral < floor - floor_tol * std::max(1.0, floor)) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "nonlocal integral %.9g below lower bound %.9g "
                  "(coefficient '%s')",
                  src.integral, floor, f.spec.c_str());
    throw HypothesisViolation(buf);
  }
  const double inv2 = lambda / (src.integral * src.integral);
  src.values.assign(u.values.size(), 0.0);
  for (int p = 0; p < mesh.vertex_count(); ++p) {
    if (mesh.boundary[static_cast<size_t>(p)]) continue;
    src.values[static_cast<size_t>(p)] =
        inv2 * f(u[p]) * dual.box_area[static_cast<size_t>(p)];
  }
  return src;
}

} // namespace boxtherm
