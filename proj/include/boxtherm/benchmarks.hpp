#pragma once

#include <functional>
#include <string>

#include "boxtherm/solver.hpp"

namespace boxtherm {

// A problem with a known exact solution; the forcing that makes the exact
// solution solve the nonlocal equation is supplied analytically (the
// nonlocal integral of the exact solution is evaluated by high-order
// quadrature, independent of the solver's lumped path).
struct ManufacturedCase {
  std::string name;
  Problem problem;
  std::function<double(Vec2, double)> exact;
  std::function<Vec2(Vec2, double)> exact_grad;
  double t_final = 0.5;
  double tau0 = 0.1; // tau = tau0 * h per level
};

// u(x,t) = exp(-t) sin(pi x) sin(pi y) on the unit square with
// f = sigmoid:1,2 and either k = 1 (variant "standard") or
// k = sigmoid:0.5,2.0 (variant "standard-vark").
ManufacturedCase standard_benchmark(bool variable_k = false);

// The unforced problem used for the self-convergence study:
// k = const:1, f = const:1, lambda = 1, u0 = 0.
Problem richardson_problem();

} // namespace boxtherm
