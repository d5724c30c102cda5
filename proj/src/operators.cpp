#include "boxtherm/operators.hpp"

#include <cmath>

#include "boxtherm/assembly.hpp"
#include "boxtherm/cg.hpp"
#include "boxtherm/errors.hpp"
#include "boxtherm/sparse.hpp"

namespace boxtherm {

namespace {

Vec2 perp(const Vec2& v) { return {-v.y, v.x}; }

// Exact integral of the squared difference between the linear function with
// corner values (va, vb, vc) and the constant va over the corner quad
// (a, mid(a,b), q, mid(a,c)). The quad splits into two triangles on which a
// degree-2 rule is exact for the quadratic integrand.
double corner_quad_gap(const Vec2& a, const Vec2& b, const Vec2& c,
                       const Vec2& q, double va, double vb, double vc,
                       const TriangleQuadrature& rule) {
  const Vec2 grad = (1.0 / (2.0 * signed_area(a, b, c))) *
                    (va * perp(c - b) + vb * perp(a - c) + vc * perp(b - a));
  const Vec2 mab = midpoint(a, b);
  const Vec2 mac = midpoint(a, c);
  auto sq = [&](Vec2 x) {
    const double d = dot(grad, x - a);
    return d * d;
  };
  return rule.integrate(a, mab, q, sq) + rule.integrate(a, q, mac, sq);
}

} // namespace

Vec2 triangle_gradient(const Mesh& mesh, const NodalField& v, int t) {
  const auto& tri = mesh.triangles[static_cast<size_t>(t)];
  const Vec2 a = mesh.point(tri[0]);
  const Vec2 b = mesh.point(tri[1]);
  const Vec2 c = mesh.point(tri[2]);
  const double inv = 1.0 / (2.0 * signed_area(a, b, c));
  return inv * (v[tri[0]] * perp(c - b) + v[tri[1]] * perp(a - c) +
                v[tri[2]] * perp(b - a));
}

NormBundle compute_norms(const Mesh& mesh, const DualMesh& dual,
                         const NodalField& v) {
  require_on_mesh(v, mesh, "compute_norms");
  NormBundle out;

  std::vector<double> l2_terms(mesh.triangles.size());
  std::vector<double> h1_terms(mesh.triangles.size());
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles[static_cast<size_t>(t)];
    const double area = signed_area(mesh.point(tri[0]), mesh.point(tri[1]),
                                    mesh.point(tri[2]));
    const double v0 = v[tri[0]], v1 = v[tri[1]], v2 = v[tri[2]];
    l2_terms[static_cast<size_t>(t)] =
        area / 6.0 *
        (v0 * v0 + v1 * v1 + v2 * v2 + v0 * v1 + v0 * v2 + v1 * v2);
    const Vec2 g = triangle_gradient(mesh, v, t);
    h1_terms[static_cast<size_t>(t)] = area * dot(g, g);
  }
  out.l2 = std::sqrt(pairwise_sum(l2_terms));
  out.h1_semi = std::sqrt(pairwise_sum(h1_terms));

  std::vector<double> lumped(dual.box_area.size());
  for (size_t p = 0; p < lumped.size(); ++p)
    lumped[p] = dual.box_area[p] * v.values[p] * v.values[p];
  out.norm_0h = std::sqrt(pairwise_sum(lumped));

  std::vector<double> jumps(dual.segments.size());
  for (size_t s = 0; s < dual.segments.size(); ++s) {
    const double d = v[dual.segments[s].pstar] - v[dual.segments[s].p];
    jumps[s] = d * d;
  }
  out.norm_1h = std::sqrt(pairwise_sum(jumps));
  return out;
}

double w1inf_norm(const Mesh& mesh, const NodalField& v) {
  require_on_mesh(v, mesh, "w1inf_norm");
  double m = 0.0;
  for (double x : v.values) m = std::max(m, std::abs(x));
  for (int t = 0; t < mesh.triangle_count(); ++t)
    m = std::max(m, norm(triangle_gradient(mesh, v, t)));
  return m;
}

double box_interpolant_gap(const Mesh& mesh, const DualMesh& dual,
                           const NodalField& v) {
  require_on_mesh(v, mesh, "box_interpolant_gap");
  const TriangleQuadrature rule = triangle_quadrature(2);
  std::vector<double> terms(mesh.triangles.size());
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles[static_cast<size_t>(t)];
    const Vec2 a = mesh.point(tri[0]);
    const Vec2 b = mesh.point(tri[1]);
    const Vec2 c = mesh.point(tri[2]);
    const Vec2 q = dual.circumcenters[static_cast<size_t>(t)];
    const double va = v[tri[0]], vb = v[tri[1]], vc = v[tri[2]];
    terms[static_cast<size_t>(t)] =
        corner_quad_gap(a, b, c, q, va, vb, vc, rule) +
        corner_quad_gap(b, c, a, q, vb, vc, va, rule) +
        corner_quad_gap(c, a, b, q, vc, va, vb, rule);
  }
  return std::sqrt(pairwise_sum(terms));
}

NodalField l2_project(const Mesh& mesh, const std::function<double(Vec2)>& u,
                      int quad_degree, bool constrain_boundary) {
  const SparseMatrix mass = assemble_p1_mass(mesh);
  const TriangleQuadrature rule = triangle_quadrature(quad_degree);

  std::vector<double> rhs(mesh.vertices.size(), 0.0);
  for (const auto& tri : mesh.triangles) {
    const Vec2 a = mesh.point(tri[0]);
    const Vec2 b = mesh.point(tri[1]);
    const Vec2 c = mesh.point(tri[2]);
    const double area = signed_area(a, b, c);
    for (const auto& pt : rule.points) {
      const Vec2 x = pt.bary[0] * a + pt.bary[1] * b + pt.bary[2] * c;
      const double w = pt.weight * area * u(x);
      for (int i = 0; i < 3; ++i)
        rhs[static_cast<size_t>(tri[static_cast<size_t>(i)])] +=
            w * pt.bary[i];
    }
  }

  NodalField out = make_field(mesh);
  CgConfig cfg;
  cfg.tol = 1e-13;
  if (constrain_boundary) {
    const IndexMap map = IndexMap::interior(mesh);
    const SparseMatrix mass_int = restrict_matrix(mass, map);
    const std::vector<double> rhs_int = map.extract(rhs);
    const CgResult res = cg_solve(mass_int, rhs_int, cfg);
    out.values = map.scatter(res.x);
  } else {
    const CgResult res = cg_solve(mass, rhs, cfg);
    out.values = res.x;
  }
  return out;
}

NodalField flux_projection(const Mesh& mesh, const DualMesh& dual,
                           const std::function<double(Vec2)>& a,
                           const std::function<double(Vec2)>& u,
                           const std::function<Vec2(Vec2)>& grad_u,
                           int points_per_piece) {
  const SparseMatrix flux = assemble_flux_matrix_xy(mesh, dual, a,
                                                    points_per_piece);

  // Exact flux of u across the dual pieces of every edge, scattered to the
  // two box equations with opposite signs.
  std::vector<double> rhs(mesh.vertices.size(), 0.0);
  for (const DualSegment& s : dual.segments) {
    double phi = 0.0;
    for (int i = 0; i < s.tri_count; ++i) {
      const Vec2 q = dual.circumcenters[static_cast<size_t>(s.tri[i])];
      const Vec2 d = q - s.mid;
      const double step = s.part_length[i] / points_per_piece;
      for (int j = 0; j < points_per_piece; ++j) {
        const Vec2 x = s.mid + ((j + 0.5) / points_per_piece) * d;
        phi += a(x) * dot(grad_u(x), s.unit_normal) * step;
      }
    }
    rhs[static_cast<size_t>(s.p)] -= phi;
    rhs[static_cast<size_t>(s.pstar)] += phi;
  }

  NodalField ih = interpolate(mesh, u);
  ih.mesh_id = mesh.id;

  std::vector<double> flux_ih(mesh.vertices.size());
  kernels::spmv(flux, ih.values, flux_ih);

  const IndexMap map = IndexMap::interior(mesh);
  std::vector<double> residual(map.reduced_to_full.size());
  for (size_t i = 0; i < map.reduced_to_full.size(); ++i) {
    const size_t p = static_cast<size_t>(map.reduced_to_full[i]);
    residual[i] = rhs[p] - flux_ih[p];
  }
  const SparseMatrix flux_int = restrict_matrix(flux, map);
  CgConfig cfg;
  cfg.tol = 1e-13;
  const CgResult res = cg_solve(flux_int, residual, cfg);

  NodalField out = ih;
  for (size_t i = 0; i < map.reduced_to_full.size(); ++i)
    out.values[static_cast<size_t>(map.reduced_to_full[i])] += res.x[i];
  return out;
}

double l2_error(const Mesh& mesh, const NodalField& v,
                const std::function<double(Vec2)>& u, int quad_degree) {
  require_on_mesh(v, mesh, "l2_error");
  const TriangleQuadrature rule = triangle_quadrature(quad_degree);
  std::vector<double> terms(mesh.triangles.size());
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles[static_cast<size_t>(t)];
    const Vec2 a = mesh.point(tri[0]);
    const Vec2 b = mesh.point(tri[1]);
    const Vec2 c = mesh.point(tri[2]);
    const double v0 = v[tri[0]], v1 = v[tri[1]], v2 = v[tri[2]];
    terms[static_cast<size_t>(t)] = rule.integrate(a, b, c, [&](Vec2 x) {
      // barycentric reconstruction of the linear field at x
      const double area = signed_area(a, b, c);
      const double l0 = signed_area(x, b, c) / area;
      const double l1 = signed_area(a, x, c) / area;
      const double l2c = 1.0 - l0 - l1;
      const double d = l0 * v0 + l1 * v1 + l2c * v2 - u(x);
      return d * d;
    });
  }
  return std::sqrt(pairwise_sum(terms));
}

double h1_semi_error(const Mesh& mesh, const NodalField& v,
                     const std::function<Vec2(Vec2)>& grad_u,
                     int quad_degree) {
  require_on_mesh(v, mesh, "h1_semi_error");
  const TriangleQuadrature rule = triangle_quadrature(quad_degree);
  std::vector<double> terms(mesh.triangles.size());
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles[static_cast<size_t>(t)];
    const Vec2 a = mesh.point(tri[0]);
    const Vec2 b = mesh.point(tri[1]);
    const Vec2 c = mesh.point(tri[2]);
    const Vec2 g = triangle_gradient(mesh, v, t);
    terms[static_cast<size_t>(t)] = rule.integrate(a, b, c, [&](Vec2 x) {
      const Vec2 d = g - grad_u(x);
      return dot(d, d);
    });
  }
  return std::sqrt(pairwise_sum(terms));
}

double h1_error(const Mesh& mesh, const NodalField& v,
                const std::function<double(Vec2)>& u,
                const std::function<Vec2(Vec2)>& grad_u, int quad_degree) {
  const double l2 = l2_error(mesh, v, u, quad_degree);
  const double h1 = h1_semi_error(mesh, v, grad_u, quad_degree);
  return std::sqrt(l2 * l2 + h1 * h1);
}

} // namespace boxtherm
