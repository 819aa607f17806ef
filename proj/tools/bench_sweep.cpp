// Benchmark: the radius sweep run serially (the reference implementation)
// versus fanned out over OpenMP workers, verifying both produce identical
// bytes before reporting the speedup.

#include <algorithm>
#include <chrono>
#include <cstdio>

#include <omp.h>

#include "wsn/presets.hpp"
#include "wsn/sweep.hpp"

using namespace wsn;

namespace {

double time_sweep(const SweepSpec& spec, int workers, SweepResult& out) {
  const auto t0 = std::chrono::steady_clock::now();
  out = run_radius_sweep(spec, workers);
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main() {
  SweepSpec spec;
  spec.base = preset_radius();
  spec.base.duration_s = 300.0;  // keep the benchmark itself quick
  spec.thresholds_db = {-60.0, -75.0, -78.0};
  spec.seeds = {1, 2, 3, 4, 5, 6};

  const int max_workers = omp_get_max_threads();
  std::printf("radius sweep benchmark: %zu runs (%zu thresholds x 2 "
              "techniques x %zu seeds), %g simulated seconds each\n",
              spec.thresholds_db.size() * 2 * spec.seeds.size(),
              spec.thresholds_db.size(), spec.seeds.size(),
              spec.base.duration_s);

  SweepResult serial;
  const double t_serial = time_sweep(spec, 1, serial);
  std::printf("%-10s %8.2f s\n", "serial", t_serial);

  int rc = 0;
  // Always run at least one parallel configuration, even on a single-CPU
  // machine: the byte-identity check matters more than the speedup number.
  for (int w = 2; w <= std::max(max_workers, 2); w *= 2) {
    SweepResult parallel;
    const double t_par = time_sweep(spec, w, parallel);
    const bool same = render_radius_sweep_runs_csv(parallel, spec) ==
                      render_radius_sweep_runs_csv(serial, spec);
    std::printf("%d workers  %8.2f s   speedup %.2fx   output %s\n", w, t_par,
                t_serial / t_par, same ? "identical" : "DIFFERS");
    if (!same) rc = 1;
  }
  return rc;
}
