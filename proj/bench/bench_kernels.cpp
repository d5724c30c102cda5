// Times the OpenMP kernels against their serial reference implementations
// and the assembly/solve paths at one thread versus the full worker pool.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "boxtherm/assembly.hpp"
#include "boxtherm/cg.hpp"
#include "boxtherm/coefficients.hpp"
#include "boxtherm/dual_mesh.hpp"
#include "boxtherm/field.hpp"
#include "boxtherm/kernels.hpp"
#include "boxtherm/mesh.hpp"
#include "boxtherm/parallel.hpp"
#include "boxtherm/sparse.hpp"
#include "boxtherm/verification.hpp"

using namespace boxtherm;

namespace {

double checksum_sink = 0.0;

double time_best_ms(int reps, const std::function<void()>& fn) {
  double best = std::numeric_limits<double>::max();
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    best = std::min(best, ms);
  }
  return best;
}

std::vector<double> random_vector(size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

void print_row(const char* name, double serial_ms, double parallel_ms,
               const char* check) {
  std::printf("  %-28s %10.4f %12.4f %9.2fx   %s\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms, check);
}

} // namespace

int main(int argc, char** argv) {
  int level = 7;
  int reps = 20;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) {
      level = 4;
      reps = 3;
    } else if (std::strcmp(argv[i], "--level") == 0 && i + 1 < argc) {
      level = std::atoi(argv[++i]);
    } else if (std::strcmp(argv[i], "--reps") == 0 && i + 1 < argc) {
      reps = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--quick] [--level N] [--reps N]\n",
                   argv[0]);
      return 1;
    }
  }

  const int workers = apply_thread_cap();
  const Mesh mesh = level_mesh(level);
  const DualMesh dual = build_dual_mesh(mesh);
  const FluxPlan plan = make_flux_plan(mesh, dual);
  const Coefficient k = parse_coefficient("sigmoid:0.5,2.0");

  const size_t n = mesh.vertices.size();
  const std::vector<double> a = random_vector(n, 11);
  const std::vector<double> b = random_vector(n, 22);
  NodalField state = make_field(mesh);
  state.values = random_vector(n, 33);
  const std::vector<double> ecoeff = edge_coefficients(plan, k, state);
  const SparseMatrix flux = assemble_flux_matrix(plan, ecoeff);
  const SparseMatrix flux_reduced = assemble_flux_matrix_reduced(plan, ecoeff);

  std::printf("mesh level %d: %zu vertices, %zu edges, %d nonzeros, "
              "%d worker(s)\n\n",
              level, n, plan.edges.size(), flux.nnz(), workers);
  std::printf("  %-28s %10s %12s %10s   %s\n", "kernel", "serial ms",
              "parallel ms", "speedup", "check");

  {
    const double ds = kernels::serial::dot(a, b);
    const double dp = kernels::dot(a, b);
    checksum_sink += ds + dp;
    const double ts = time_best_ms(reps, [&] {
      checksum_sink += kernels::serial::dot(a, b);
    });
    const double tp = time_best_ms(reps, [&] {
      checksum_sink += kernels::dot(a, b);
    });
    print_row("dot (ordered)", ts, tp, ds == dp ? "bitwise" : "MISMATCH");
  }
  {
    const double ds = kernels::serial::dot(a, b);
    const double dp = kernels::dot(a, b, Reduction::fast);
    char note[64];
    std::snprintf(note, sizeof note, "|diff| %.2e", std::abs(ds - dp));
    const double ts = time_best_ms(reps, [&] {
      checksum_sink += kernels::serial::dot(a, b, Reduction::fast);
    });
    const double tp = time_best_ms(reps, [&] {
      checksum_sink += kernels::dot(a, b, Reduction::fast);
    });
    print_row("dot (fast)", ts, tp, note);
  }
  {
    const double ns = kernels::serial::norm2(a);
    const double np = kernels::norm2(a);
    const double ts =
        time_best_ms(reps, [&] { checksum_sink += kernels::serial::norm2(a); });
    const double tp =
        time_best_ms(reps, [&] { checksum_sink += kernels::norm2(a); });
    print_row("norm2 (ordered)", ts, tp, ns == np ? "bitwise" : "MISMATCH");
  }
  {
    std::vector<double> ys(a);
    std::vector<double> yp(a);
    const double ts = time_best_ms(
        reps, [&] { kernels::serial::axpy(1.000001, b, ys); });
    const double tp =
        time_best_ms(reps, [&] { kernels::axpy(1.000001, b, yp); });
    checksum_sink += ys[0] + yp[0];
    print_row("axpy", ts, tp, ys == yp ? "bitwise" : "MISMATCH");
  }
  {
    std::vector<double> ys(n), yp(n);
    kernels::serial::spmv(flux, a, ys);
    kernels::spmv(flux, a, yp);
    const double ts =
        time_best_ms(reps, [&] { kernels::serial::spmv(flux, a, ys); });
    const double tp = time_best_ms(reps, [&] { kernels::spmv(flux, a, yp); });
    checksum_sink += ys[0] + yp[0];
    print_row("spmv (flux matrix)", ts, tp,
              ys == yp ? "bitwise" : "MISMATCH");
  }

  std::printf("\n  %-28s %10s %12s %10s\n", "assembly / solve", "1 thread ms",
              "pool ms", "speedup");
  {
    omp_set_num_threads(1);
    const double t1 = time_best_ms(reps, [&] {
      checksum_sink += assemble_flux_matrix_reduced(
                           plan, edge_coefficients(plan, k, state))
                           .values[0];
    });
    omp_set_num_threads(workers);
    const double tn = time_best_ms(reps, [&] {
      checksum_sink += assemble_flux_matrix_reduced(
                           plan, edge_coefficients(plan, k, state))
                           .values[0];
    });
    std::printf("  %-28s %10.4f %12.4f %9.2fx\n", "coefficients + flux", t1,
                tn, t1 / tn);
  }
  {
    const std::vector<double> rhs(static_cast<size_t>(flux_reduced.rows), 1.0);
    CgConfig cfg;
    cfg.tol = 1e-10;
    omp_set_num_threads(1);
    const auto start1 = std::chrono::steady_clock::now();
    const CgResult r1 = cg_solve(flux_reduced, rhs, cfg);
    const double t1 = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start1)
                          .count();
    omp_set_num_threads(workers);
    const auto startn = std::chrono::steady_clock::now();
    const CgResult rn = cg_solve(flux_reduced, rhs, cfg);
    const double tn = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - startn)
                          .count();
    checksum_sink += r1.x[0] + rn.x[0];
    std::printf("  %-28s %10.4f %12.4f %9.2fx   %d iters, %s\n", "cg solve",
                t1, tn, t1 / tn, rn.iterations,
                r1.x == rn.x ? "bitwise" : "MISMATCH");
  }

  std::printf("\nchecksum %.6g\n", checksum_sink);
  return 0;
}
