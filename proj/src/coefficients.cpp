#include "boxtherm/coefficients.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <vector>

#include "boxtherm/errors.hpp"

namespace boxtherm {

namespace {

std::vector<double> parse_args(const std::string& spec, size_t colon,
                               size_t expected) {
  std::vector<double> args;
  if (colon != std::string::npos) {
    size_t pos = colon + 1;
    while (pos <= spec.size()) {
      size_t comma = spec.find(',', pos);
      if (comma == std::string::npos) comma = spec.size();
      const char* begin = spec.data() + pos;
      const char* end = spec.data() + comma;
      double v = 0.0;
      const auto res = std::from_chars(begin, end, v);
      if (res.ec != std::errc{} || res.ptr != end || begin == end)
        throw ConfigError("coefficient '" + spec + "': malformed number '" +
                          std::string(begin, end) + "'");
      args.push_back(v);
      pos = comma + 1;
    }
  }
  if (args.size() != expected)
    throw ConfigError("coefficient '" + spec + "': expected " +
                      std::to_string(expected) + " parameter(s), got " +
                      std::to_string(args.size()));
  return args;
}

} // namespace

Coefficient parse_coefficient(const std::string& spec) {
  const size_t colon = spec.find(':');
  const std::string name = spec.substr(0, colon);

  Coefficient c;
  c.spec = spec;
  if (name == "const") {
    const auto a = parse_args(spec, colon, 1);
    const double v = a[0];
    if (!(v > 0.0))
      throw ConfigError("coefficient '" + spec + "': constant must be > 0");
    c.lower = v;
    c.upper = v;
    c.lipschitz = 0.0;
    c.fn = [v](double) { return v; };
  } else if (name == "sigmoid") {
    const auto a = parse_args(spec, colon, 2);
    const double lo = a[0], hi = a[1];
    if (!(lo > 0.0) || !(hi > lo))
      throw ConfigError("coefficient '" + spec + "': need 0 < lo < hi");
    c.lower = lo;
    c.upper = hi;
    c.lipschitz = (hi - lo) / 4.0;
    c.fn = [lo, hi](double s) { return lo + (hi - lo) / (1.0 + std::exp(-s)); };
  } else if (name == "bounded-quadratic") {
    const auto a = parse_args(spec, colon, 3);
    const double p = a[0], q = a[1], r = a[2];
    if (!(p > 0.0) || !(q >= 0.0) || !(r > 0.0))
      throw ConfigError("coefficient '" + spec +
                        "': need a > 0, b >= 0, R > 0");
    c.lower = p;
    c.upper = p + q * r * r;
    c.lipschitz = 2.0 * q * r;
    c.fn = [p, q, r](double s) {
      const double s2 = std::min(s * s, r * r);
      return p + q * s2;
    };
  } else {
    throw ConfigError("unknown coefficient preset '" + name +
                      "' (expected const, sigmoid, or bounded-quadratic)");
  }
  return c;
}

CoefficientCheck check_coefficient(const Coefficient& c, double range,
                                   int samples, std::uint64_t seed) {
  CoefficientCheck out;
  if (!c.fn) {
    out.message = "coefficient has no function";
    return out;
  }
  if (samples < 2) {
    out.message = "need at least two samples";
    return out;
  }

  const double slack = 1e-9 * std::max(1.0, std::abs(c.upper));
  const double lip_slack = 1e-9 * std::max(1.0, c.lipschitz);
  double vmin = std::numeric_limits<double>::max();
  double vmax = std::numeric_limits<double>::lowest();
  double lmax = 0.0;
  char buf[256];

  auto fail = [&](const std::string& msg) {
    out.ok = false;
    out.message = msg;
    out.observed_min = vmin;
    out.observed_max = vmax;
    out.observed_lipschitz = lmax;
    return out;
  };

  double prev_s = 0.0, prev_v = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double s = -range + 2.0 * range * i / (samples - 1);
    const double v = c(s);
    if (!std::isfinite(v)) {
      std::snprintf(buf, sizeof buf, "non-finite value at s=%.6g", s);
      return fail(buf);
    }
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
    if (v < c.lower - slack || v > c.upper + slack) {
      std::snprintf(buf, sizeof buf,
                    "value %.9g at s=%.6g outside declared [%.9g, %.9g]", v, s,
                    c.lower, c.upper);
      return fail(buf);
    }
    if (i > 0) {
      const double quot = std::abs(v - prev_v) / (s - prev_s);
      lmax = std::max(lmax, quot);
      if (quot > c.lipschitz + lip_slack) {
        std::snprintf(buf, sizeof buf,
                      "difference quotient %.9g near s=%.6g exceeds declared "
                      "Lipschitz bound %.9g",
                      quot, s, c.lipschitz);
        return fail(buf);
      }
    }
    prev_s = s;
    prev_v = v;
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-range, range);
  for (int i = 0; i < samples; ++i) {
    const double s1 = dist(rng);
    const double s2 = dist(rng);
    if (s1 == s2) continue;
    const double quot = std::abs(c(s1) - c(s2)) / std::abs(s1 - s2);
    lmax = std::max(lmax, quot);
    if (quot > c.lipschitz + lip_slack) {
      std::snprintf(buf, sizeof buf,
                    "difference quotient %.9g on [%.6g, %.6g] exceeds "
                    "declared Lipschitz bound %.9g",
                    quot, std::min(s1, s2), std::max(s1, s2), c.lipschitz);
      return fail(buf);
    }
  }

  out.ok = true;
  out.message = "ok";
  out.observed_min = vmin;
  out.observed_max = vmax;
  out.observed_lipschitz = lmax;
  return out;
}

void require_valid_coefficient(const Coefficient& c, double range,
                               int samples) {
  const CoefficientCheck chk = check_coefficient(c, range, samples);
  if (!chk.ok)
    throw HypothesisViolation("coefficient '" + c.spec + "': " + chk.message);
}

} // namespace boxtherm
