// Compares the OpenMP batch kernels against the serial single-point
// reference implementations and reports timings.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "bfs/field.hpp"
#include "bfs/integrals.hpp"
#include "bfs/mesh.hpp"
#include "bfs/poly.hpp"
#include "bfs/quadrature.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double now_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <class F>
double time_best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = now_seconds();
    fn();
    best = std::min(best, now_seconds() - t0);
  }
  return best;
}

double max_rel_diff(const bfs::Matrix& a, const bfs::Matrix& b) {
  double out = 0.0;
  for (size_t k = 0; k < a.data.size(); ++k) {
    const double scale = std::max({std::abs(a.data[k]), std::abs(b.data[k]), 1.0});
    out = std::max(out, std::abs(a.data[k] - b.data[k]) / scale);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  int level = 5;
  int reps = 3;
  if (argc > 1) level = std::atoi(argv[1]);
  if (argc > 2) reps = std::atoi(argv[2]);
  if (level < 1 || level > 9 || reps < 1) {
    std::fprintf(stderr, "usage: bfs_bench [level 1..9] [reps]\n");
    return 2;
  }

  const int n = 1 << level;
  const bfs::RectMesh mesh = bfs::uniform_mesh(-1.0, 1.0, -1.0, 1.0, n, n);
  const bfs::AnalyticField v = bfs::Poly2::quartic_bump().to_analytic();
  const bfs::QuadratureRule rule = bfs::gauss_rule(9);

#ifdef _OPENMP
  std::printf("level %d: %d elements, %d OpenMP threads\n", level, mesh.num_elements(),
              omp_get_max_threads());
#else
  std::printf("level %d: %d elements, OpenMP disabled\n", level, mesh.num_elements());
#endif

  const bfs::C1Field field = bfs::interpolate(v, mesh);

  const double t_interp_ser = time_best_of(reps, [&] { (void)bfs::serial::interpolate(v, mesh); });
  const double t_interp_par = time_best_of(reps, [&] { (void)bfs::interpolate(v, mesh); });

  bfs::Matrix vals_par, vals_ser;
  const double t_eval_par =
      time_best_of(reps, [&] { vals_par = bfs::eval_values(field, rule.points); });
  const double t_eval_ser =
      time_best_of(reps, [&] { vals_ser = bfs::serial::eval_values(field, rule.points); });

  bfs::IntegralValues n_par, n_ser;
  const double t_norm_par = time_best_of(reps, [&] { n_par = bfs::norms(field, rule); });
  const double t_norm_ser = time_best_of(reps, [&] { n_ser = bfs::serial::norms(field, rule); });

  std::printf("%-14s %12s %12s %9s %12s\n", "kernel", "serial [s]", "parallel [s]", "speedup",
              "max rel diff");
  auto line = [](const char* name, double ts, double tp, double diff) {
    std::printf("%-14s %12.6f %12.6f %9.2f %12.3e\n", name, ts, tp, ts / tp, diff);
  };
  line("interpolate", t_interp_ser, t_interp_par, 0.0);
  line("eval_values", t_eval_ser, t_eval_par, max_rel_diff(vals_par, vals_ser));
  const double norm_diff = std::max(
      {std::abs(n_par.l2_sq - n_ser.l2_sq) / n_ser.l2_sq,
       std::abs(n_par.h1_semi_sq - n_ser.h1_semi_sq) / n_ser.h1_semi_sq,
       std::abs(n_par.h2_semi_sq - n_ser.h2_semi_sq) / n_ser.h2_semi_sq});
  line("norms", t_norm_ser, t_norm_par, norm_diff);

  if (max_rel_diff(vals_par, vals_ser) > 1e-13 || norm_diff > 1e-13) {
    std::fprintf(stderr, "kernel mismatch beyond 1e-13\n");
    return 1;
  }
  return 0;
}
