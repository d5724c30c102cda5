#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

namespace boxtherm {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 midpoint(Vec2 a, Vec2 b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

/// Signed area of triangle (a, b, c); positive when counterclockwise.
inline double signed_area(Vec2 a, Vec2 b, Vec2 c) {
  return 0.5 * cross(b - a, c - a);
}

/// Signed area of a polygon by the shoelace formula.
double polygon_area(std::span<const Vec2> pts);

/// Interior angle at vertex `at` of triangle (at, u, v), in radians.
double corner_angle(Vec2 at, Vec2 u, Vec2 v);

/// Circumcenter as the intersection of two perpendicular edge bisectors.
/// Valid for non-degenerate triangles (|signed area| > 0).
Vec2 circumcenter(Vec2 a, Vec2 b, Vec2 c);

/// Deterministic pairwise summation. Result is independent of thread count
/// and more accurate than a running sum for long arrays.
double pairwise_sum(std::span<const double> v);

/// Quadrature rule on the reference triangle in barycentric coordinates.
/// Weights sum to 1; integrals are weight-scaled by the triangle area.
struct TriangleQuadrature {
  struct Point {
    std::array<double, 3> bary;
    double weight;
  };
  std::vector<Point> points;
  int degree = 0;

  template <class F>
  double integrate(Vec2 a, Vec2 b, Vec2 c, F&& f) const {
    const double area = signed_area(a, b, c);
    double acc = 0.0;
    for (const Point& q : points) {
      const Vec2 x = q.bary[0] * a + q.bary[1] * b + q.bary[2] * c;
      acc += q.weight * f(x);
    }
    return area * acc;
  }
};

/// Rules exact for polynomials up to the requested degree.
/// Available exact degrees: 1 (centroid), 2 (edge midpoints), 5 (7-point).
/// A request in between is promoted to the next available rule.
const TriangleQuadrature& triangle_quadrature(int degree);

/// Gauss-Legendre nodes/weights on [0, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre_01(int n);

/// Tensor-product Gauss quadrature of f over the unit square.
template <class F>
double tensor_gauss_unit_square(F&& f, int n) {
  const GaussRule g = gauss_legendre_01(n);
  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      acc += g.weights[i] * g.weights[j] * f(Vec2{g.nodes[i], g.nodes[j]});
  return acc;
}

} // namespace boxtherm
