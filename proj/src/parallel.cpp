#include "boxtherm/parallel.hpp"

#include <cstdlib>
#include <string>

namespace boxtherm {

int apply_thread_cap() {
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("BOXTHERM_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1 && cap < n) n = cap;
    } catch (...) {
      // Unparsable cap: keep the OpenMP default.
    }
  }
  omp_set_num_threads(n);
  return n;
}

int worker_count() { return omp_get_max_threads(); }

} // namespace boxtherm
