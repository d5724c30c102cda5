#include "boxtherm/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace boxtherm {

double polygon_area(std::span<const Vec2> pts) {
  const size_t n = pts.size();
  if (n < 3) return 0.0;
  std::vector<double> terms(n);
  for (size_t i = 0; i < n; ++i) {
    const Vec2 a = pts[i];
    const Vec2 b = pts[(i + 1) % n];
    terms[i] = cross(a, b);
  }
  return 0.5 * pairwise_sum(terms);
}

double corner_angle(Vec2 at, Vec2 u, Vec2 v) {
  const Vec2 e1 = u - at;
  const Vec2 e2 = v - at;
  const double d = norm(e1) * norm(e2);
  if (d == 0.0) return 0.0;
  const double c = std::clamp(dot(e1, e2) / d, -1.0, 1.0);
  return std::acos(c);
}

Vec2 circumcenter(Vec2 a, Vec2 b, Vec2 c) {
  // Translate a to the origin for conditioning.
  const Vec2 u = b - a;
  const Vec2 v = c - a;
  const double d = 2.0 * cross(u, v);
  const double u2 = dot(u, u);
  const double v2 = dot(v, v);
  const double qx = (v.y * u2 - u.y * v2) / d;
  const double qy = (u.x * v2 - v.x * u2) / d;
  return {a.x + qx, a.y + qy};
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 64) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

namespace {

TriangleQuadrature make_rule(int degree) {
  TriangleQuadrature q;
  q.degree = degree;
  switch (degree) {
    case 1:
      q.points = {{{1.0 / 3, 1.0 / 3, 1.0 / 3}, 1.0}};
      break;
    case 2:
      q.points = {{{0.5, 0.5, 0.0}, 1.0 / 3},
                  {{0.0, 0.5, 0.5}, 1.0 / 3},
                  {{0.5, 0.0, 0.5}, 1.0 / 3}};
      break;
    case 5: {
      const double s = std::sqrt(15.0);
      const double b1 = (6.0 + s) / 21.0, a1 = 1.0 - 2.0 * b1;
      const double w1 = (155.0 + s) / 1200.0;
      const double b2 = (6.0 - s) / 21.0, a2 = 1.0 - 2.0 * b2;
      const double w2 = (155.0 - s) / 1200.0;
      q.points = {{{1.0 / 3, 1.0 / 3, 1.0 / 3}, 9.0 / 40},
                  {{a1, b1, b1}, w1}, {{b1, a1, b1}, w1}, {{b1, b1, a1}, w1},
                  {{a2, b2, b2}, w2}, {{b2, a2, b2}, w2}, {{b2, b2, a2}, w2}};
      break;
    }
    default:
      throw std::invalid_argument("no triangle quadrature of degree " +
                                  std::to_string(degree));
  }
  return q;
}

} // namespace

const TriangleQuadrature& triangle_quadrature(int degree) {
  static const TriangleQuadrature d1 = make_rule(1);
  static const TriangleQuadrature d2 = make_rule(2);
  static const TriangleQuadrature d5 = make_rule(5);
  if (degree <= 1) return d1;
  if (degree <= 2) return d2;
  if (degree <= 5) return d5;
  throw std::invalid_argument("triangle quadrature degree capped at 5");
}

GaussRule gauss_legendre_01(int n) {
  // Nodes of P_n by Newton iteration from the Chebyshev initial guess,
  // then mapped from [-1, 1] to [0, 1].
  GaussRule g;
  g.nodes.resize(n);
  g.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    g.nodes[n - 1 - i] = 0.5 * (x + 1.0);
    g.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return g;
}

} // namespace boxtherm
