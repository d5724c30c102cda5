#pragma once

#ifdef _OPENMP
#include <omp.h>
#else
inline int omp_get_max_threads() { return 1; }
inline int omp_get_thread_num() { return 0; }
inline void omp_set_num_threads(int) {}
#endif

namespace boxtherm {

/// How scalar reductions (dots, integrals, norm accumulations) combine terms.
///   ordered: deterministic pairwise combination, bitwise reproducible for
///            any thread count; matches the serial reference exactly.
///   fast:    plain OpenMP reduction; last-bit result may depend on the
///            thread partition.
enum class Reduction { ordered, fast };

/// Applies the BOXTHERM_THREADS cap (if set) to the OpenMP runtime and
/// returns the resulting worker count. Call once at program start.
int apply_thread_cap();

/// Current worker count without changing anything.
int worker_count();

} // namespace boxtherm
