#pragma once

#include <stdexcept>
#include <string>

namespace boxtherm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed mesh or config text. Carries a 1-based line number when known.
class ParseError : public Error {
public:
  explicit ParseError(const std::string& msg, long line = -1)
      : Error(line >= 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  long line() const { return line_; }

private:
  long line_;
};

/// Bad run configuration (unknown key, invalid preset, out-of-range value).
class ConfigError : public Error {
public:
  using Error::Error;
};

/// A coefficient bound was breached: k outside its two-sided bound, f below
/// its positive floor, a Lipschitz violation, or a nonlocal denominator below
/// the guaranteed floor.
class HypothesisViolation : public Error {
public:
  using Error::Error;
};

/// Linear or fixed-point iteration failed to converge.
class SolverFailure : public Error {
public:
  SolverFailure(const std::string& msg, double residual, int iterations)
      : Error(msg + " (residual " + std::to_string(residual) + " after " +
              std::to_string(iterations) + " iterations)"),
        residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

private:
  double residual_;
  int iterations_;
};

} // namespace boxtherm
