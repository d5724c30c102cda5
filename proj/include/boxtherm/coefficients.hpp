#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace boxtherm {

// Scalar coefficient s -> value with the analytic bounds its preset
// guarantees: 0 < lower <= value <= upper and |value' | <= lipschitz.
//
// Presets:
//   const:v                  constant v            (v > 0)
//   sigmoid:lo,hi            lo + (hi-lo)/(1+e^-s) (0 < lo < hi)
//   bounded-quadratic:a,b,R  a + b*min(s^2, R^2)   (a > 0, b >= 0, R > 0)
struct Coefficient {
  std::string spec;
  double lower = 0.0;
  double upper = 0.0;
  double lipschitz = 0.0;
  std::function<double(double)> fn;

  double operator()(double s) const { return fn(s); }
};

// Parses a preset string. Throws ConfigError for unknown names, malformed
// arguments, or parameters that break positivity, e.g. "const:-1".
Coefficient parse_coefficient(const std::string& spec);

struct CoefficientCheck {
  bool ok = false;
  std::string message;
  double observed_min = 0.0;
  double observed_max = 0.0;
  double observed_lipschitz = 0.0;
};

// Samples the coefficient over [-range, range]: bounds on every sample and
// difference quotients on consecutive and random pairs must respect the
// declared lower/upper/lipschitz values. Deterministic for a fixed seed.
CoefficientCheck check_coefficient(const Coefficient& c, double range = 1e3,
                                   int samples = 10000,
                                   std::uint64_t seed = 0x5eedULL);

// check_coefficient, but failures throw HypothesisViolation.
void require_valid_coefficient(const Coefficient& c, double range = 1e3,
                               int samples = 10000);

} // namespace boxtherm
