#include "boxtherm/benchmarks.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "boxtherm/geometry.hpp"

namespace boxtherm {

namespace {

constexpr double kPi = 3.14159265358979323846;

double exact_u(Vec2 p, double t) {
  return std::exp(-t) * std::sin(kPi * p.x) * std::sin(kPi * p.y);
}

Vec2 exact_grad_u(Vec2 p, double t) {
  const double e = std::exp(-t) * kPi;
  return {e * std::cos(kPi * p.x) * std::sin(kPi * p.y),
          e * std::sin(kPi * p.x) * std::cos(kPi * p.y)};
}

double sigmoid(double s) { return 1.0 / (1.0 + std::exp(-s)); }

// Nonlocal integral of f(u(., t)) over the unit square, memoized per time.
// Gauss order 24 integrates the smooth integrand to machine accuracy.
struct IntegralCache {
  Coefficient f;
  double t = std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;

  double operator()(double time) {
    if (time != t) {
      t = time;
      value = tensor_gauss_unit_square(
          [&](Vec2 p) { return f(exact_u(p, t)); }, 24);
    }
    return value;
  }
};

} // namespace

ManufacturedCase standard_benchmark(bool variable_k) {
  ManufacturedCase bench;
  bench.name = variable_k ? "standard-vark" : "standard";
  bench.problem.k =
      parse_coefficient(variable_k ? "sigmoid:0.5,2.0" : "const:1");
  bench.problem.f = parse_coefficient("sigmoid:1,2");
  bench.problem.lambda = 1.0;
  bench.problem.initial = [](Vec2 p) { return exact_u(p, 0.0); };
  bench.exact = exact_u;
  bench.exact_grad = exact_grad_u;
  bench.t_final = 0.5;
  bench.tau0 = 0.1;

  // Forcing so that u solves u_t - div(k(u) grad u) = lambda f(u)/I^2 + g:
  //   g = u_t - k'(u)|grad u|^2 - k(u) lap u - lambda f(u)/I(t)^2
  // with u_t = -u, lap u = -2 pi^2 u, and I(t) the exact-solution integral.
  const double lambda = bench.problem.lambda;
  const Coefficient f = bench.problem.f;
  auto cache = std::make_shared<IntegralCache>(IntegralCache{f});
  if (variable_k) {
    const Coefficient k = bench.problem.k;
    bench.problem.forcing = [lambda, f, k, cache](Vec2 p, double t) {
      const double u = exact_u(p, t);
      const Vec2 g = exact_grad_u(p, t);
      const double s = sigmoid(u);
      const double kprime = (2.0 - 0.5) * s * (1.0 - s);
      const double I = (*cache)(t);
      return -u - kprime * dot(g, g) + k(u) * 2.0 * kPi * kPi * u -
             lambda * f(u) / (I * I);
    };
  } else {
    bench.problem.forcing = [lambda, f, cache](Vec2 p, double t) {
      const double u = exact_u(p, t);
      const double I = (*cache)(t);
      return -u + 2.0 * kPi * kPi * u - lambda * f(u) / (I * I);
    };
  }
  return bench;
}

Problem richardson_problem() {
  Problem p;
  p.k = parse_coefficient("const:1");
  p.f = parse_coefficient("const:1");
  p.lambda = 1.0;
  return p;
}

} // namespace boxtherm
