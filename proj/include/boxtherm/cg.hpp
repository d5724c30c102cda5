#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "boxtherm/errors.hpp"
#include "boxtherm/kernels.hpp"
#include "boxtherm/parallel.hpp"
#include "boxtherm/sparse.hpp"

namespace boxtherm {

struct CgConfig {
  double tol = 1e-12; // stop when |r| <= tol * |b|
  int max_iters = 10000;
  Reduction reduction = Reduction::ordered;
};

struct CgResult {
  std::vector<double> x;
  double residual = 0.0; // final |r| / |b|
  int iterations = 0;
};

// Conjugate gradients without preconditioning, started from x = 0.
// Apply must compute y = A x for a symmetric positive definite A.
template <class Apply>
CgResult cg_solve(int n, Apply&& apply_op, std::span<const double> b,
                  const CgConfig& cfg = {}) {
  if (static_cast<int>(b.size()) != n) throw Error("cg_solve: size mismatch");
  CgResult res;
  res.x.assign(static_cast<size_t>(n), 0.0);
  const double bnorm = kernels::norm2(b, cfg.reduction);
  if (bnorm == 0.0) return res;

  std::vector<double> r(b.begin(), b.end());
  std::vector<double> p = r;
  std::vector<double> ap(static_cast<size_t>(n));
  double rr = kernels::dot(r, r, cfg.reduction);

  for (int it = 1; it <= cfg.max_iters; ++it) {
    apply_op(std::span<const double>(p), std::span<double>(ap));
    const double pap = kernels::dot(p, ap, cfg.reduction);
    if (pap <= 0.0)
      throw SolverFailure("cg: operator is not positive definite",
                          std::sqrt(rr) / bnorm, it);
    const double alpha = rr / pap;
    kernels::axpy(alpha, p, res.x);
    kernels::axpy(-alpha, ap, r);
    const double rr_next = kernels::dot(r, r, cfg.reduction);
    res.iterations = it;
    if (std::sqrt(rr_next) <= cfg.tol * bnorm) {
      res.residual = std::sqrt(rr_next) / bnorm;
      return res;
    }
    kernels::xpay(r, rr_next / rr, p);
    rr = rr_next;
  }
  throw SolverFailure("cg: no convergence after " +
                          std::to_string(cfg.max_iters) + " iterations",
                      std::sqrt(rr) / bnorm, cfg.max_iters);
}

inline CgResult cg_solve(const SparseMatrix& m, std::span<const double> b,
                         const CgConfig& cfg = {}) {
  if (m.rows != m.cols) throw Error("cg_solve: matrix must be square");
  return cg_solve(
      m.rows,
      [&m](std::span<const double> x, std::span<double> y) {
        kernels::spmv(m, x, y);
      },
      b, cfg);
}

} // namespace boxtherm
