#include "boxtherm/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "boxtherm/errors.hpp"
#include "boxtherm/geometry.hpp"

namespace boxtherm::kernels {

namespace {

constexpr long kChunk = 1024;

// Sum of a*b (or a*a when b is empty) over one chunk, left to right.
double chunk_dot(std::span<const double> a, std::span<const double> b,
                 long begin, long end) {
  double s = 0.0;
  if (b.empty()) {
    for (long i = begin; i < end; ++i) s += a[static_cast<size_t>(i)] * a[static_cast<size_t>(i)];
  } else {
    for (long i = begin; i < end; ++i) s += a[static_cast<size_t>(i)] * b[static_cast<size_t>(i)];
  }
  return s;
}

// Fixed chunk tree: per-chunk left-to-right sums combined pairwise. The
// tree shape depends only on the vector length, never on the thread count.
template <bool Parallel>
double ordered_dot(std::span<const double> a, std::span<const double> b) {
  const long n = static_cast<long>(a.size());
  const long nchunks = (n + kChunk - 1) / kChunk;
  if (nchunks <= 1) return chunk_dot(a, b, 0, n);
  std::vector<double> partial(static_cast<size_t>(nchunks));
  if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
    for (long c = 0; c < nchunks; ++c)
      partial[static_cast<size_t>(c)] =
          chunk_dot(a, b, c * kChunk, std::min(n, (c + 1) * kChunk));
  } else {
    for (long c = 0; c < nchunks; ++c)
      partial[static_cast<size_t>(c)] =
          chunk_dot(a, b, c * kChunk, std::min(n, (c + 1) * kChunk));
  }
  return pairwise_sum(partial);
}

void spmv_rows(const SparseMatrix& m, std::span<const double> x,
               std::span<double> y, bool parallel) {
  if (static_cast<int>(x.size()) != m.cols ||
      static_cast<int>(y.size()) != m.rows)
    throw Error("spmv: size mismatch");
#pragma omp parallel for schedule(static) if (parallel)
  for (int r = 0; r < m.rows; ++r) {
    double s = 0.0;
    for (int k = m.row_offsets[static_cast<size_t>(r)];
         k < m.row_offsets[static_cast<size_t>(r) + 1]; ++k)
      s += m.values[static_cast<size_t>(k)] *
           x[static_cast<size_t>(m.col_index[static_cast<size_t>(k)])];
    y[static_cast<size_t>(r)] = s;
  }
}

} // namespace

void spmv(const SparseMatrix& m, std::span<const double> x,
          std::span<double> y) {
  spmv_rows(m, x, y, true);
}

void diag_mult(const DiagonalMatrix& d, std::span<const double> x,
               std::span<double> y) {
  if (x.size() != d.diag.size() || y.size() != d.diag.size())
    throw Error("diag_mult: size mismatch");
  const long n = static_cast<long>(d.diag.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i)
    y[static_cast<size_t>(i)] = d.diag[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
}

double dot(std::span<const double> a, std::span<const double> b,
           Reduction red) {
  if (a.size() != b.size()) throw Error("dot: size mismatch");
  if (red == Reduction::ordered) return ordered_dot<true>(a, b);
  double s = 0.0;
  const long n = static_cast<long>(a.size());
#pragma omp parallel for schedule(static) reduction(+ : s)
  for (long i = 0; i < n; ++i)
    s += a[static_cast<size_t>(i)] * b[static_cast<size_t>(i)];
  return s;
}

double norm2(std::span<const double> a, Reduction red) {
  if (red == Reduction::ordered) return std::sqrt(ordered_dot<true>(a, {}));
  double s = 0.0;
  const long n = static_cast<long>(a.size());
#pragma omp parallel for schedule(static) reduction(+ : s)
  for (long i = 0; i < n; ++i)
    s += a[static_cast<size_t>(i)] * a[static_cast<size_t>(i)];
  return std::sqrt(s);
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw Error("axpy: size mismatch");
  const long n = static_cast<long>(x.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i)
    y[static_cast<size_t>(i)] += alpha * x[static_cast<size_t>(i)];
}

void xpay(std::span<const double> x, double alpha, std::span<double> y) {
  if (x.size() != y.size()) throw Error("xpay: size mismatch");
  const long n = static_cast<long>(x.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i)
    y[static_cast<size_t>(i)] =
        x[static_cast<size_t>(i)] + alpha * y[static_cast<size_t>(i)];
}

void scale(double alpha, std::span<double> x) {
  const long n = static_cast<long>(x.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) x[static_cast<size_t>(i)] *= alpha;
}

namespace serial {

void spmv(const SparseMatrix& m, std::span<const double> x,
          std::span<double> y) {
  spmv_rows(m, x, y, false);
}

void diag_mult(const DiagonalMatrix& d, std::span<const double> x,
               std::span<double> y) {
  if (x.size() != d.diag.size() || y.size() != d.diag.size())
    throw Error("diag_mult: size mismatch");
  for (size_t i = 0; i < d.diag.size(); ++i) y[i] = d.diag[i] * x[i];
}

double dot(std::span<const double> a, std::span<const double> b,
           Reduction red) {
  if (a.size() != b.size()) throw Error("dot: size mismatch");
  if (red == Reduction::ordered) return ordered_dot<false>(a, b);
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a, Reduction red) {
  if (red == Reduction::ordered) return std::sqrt(ordered_dot<false>(a, {}));
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw Error("axpy: size mismatch");
  for (size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void xpay(std::span<const double> x, double alpha, std::span<double> y) {
  if (x.size() != y.size()) throw Error("xpay: size mismatch");
  for (size_t i = 0; i < x.size(); ++i) y[i] = x[i] + alpha * y[i];
}

void scale(double alpha, std::span<double> x) {
  for (double& v : x) v *= alpha;
}

} // namespace serial
} // namespace boxtherm::kernels
