#pragma once

#include <span>
#include <vector>

#include "boxtherm/parallel.hpp"
#include "boxtherm/sparse.hpp"

namespace boxtherm {

// Linear-algebra kernels. The default entry points run OpenMP-parallel
// loops; the serial namespace holds single-threaded reference versions used
// to pin down results in tests. With Reduction::ordered both variants sum
// over the same fixed chunk tree, so results match bitwise at any thread
// count. Reduction::fast uses the native OpenMP reduction instead and may
// differ in the last bits.
namespace kernels {

void spmv(const SparseMatrix& m, std::span<const double> x,
          std::span<double> y);
void diag_mult(const DiagonalMatrix& d, std::span<const double> x,
               std::span<double> y);
double dot(std::span<const double> a, std::span<const double> b,
           Reduction red = Reduction::ordered);
double norm2(std::span<const double> a, Reduction red = Reduction::ordered);
// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
// y = x + alpha * y
void xpay(std::span<const double> x, double alpha, std::span<double> y);
void scale(double alpha, std::span<double> x);

namespace serial {

void spmv(const SparseMatrix& m, std::span<const double> x,
          std::span<double> y);
void diag_mult(const DiagonalMatrix& d, std::span<const double> x,
               std::span<double> y);
double dot(std::span<const double> a, std::span<const double> b,
           Reduction red = Reduction::ordered);
double norm2(std::span<const double> a, Reduction red = Reduction::ordered);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void xpay(std::span<const double> x, double alpha, std::span<double> y);
void scale(double alpha, std::span<double> x);

} // namespace serial
} // namespace kernels
} // namespace boxtherm
