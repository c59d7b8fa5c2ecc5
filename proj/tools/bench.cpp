// Serial vs OpenMP timings for the sampling kernels. The parallel and
// serial paths must produce identical numbers; any mismatch is reported and
// fails the run.
#include <chrono>
#include <cmath>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "widthlab/geomlemmas.hpp"
#include "widthlab/waists.hpp"
#include "widthlab/widths.hpp"

using namespace widthlab;

namespace {

template <typename F>
double timed(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

int failures = 0;

void row(const char* name, double serial_s, double parallel_s, bool match) {
  std::printf("%-28s %9.3fs %9.3fs %7.2fx  %s\n", name, serial_s, parallel_s,
              serial_s / parallel_s, match ? "identical" : "MISMATCH");
  if (!match) ++failures;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP: %d threads\n", omp_get_max_threads());
#else
  std::printf("OpenMP: disabled at build time\n");
#endif
  std::printf("%-28s %10s %10s %8s\n", "kernel", "serial", "openmp", "speedup");

  {
    PLMap f = discretize(random_smooth_map(ModelSpace::sphere(2), 5), 4);
    WidthReport a, b;
    double ts = timed([&] { a = map_width(f, 4000, 3, 1, false); });
    double tp = timed([&] { b = map_width(f, 4000, 3, 1, true); });
    row("map_width S2->R2 level 4", ts, tp,
        a.lower == b.lower && a.upper == b.upper &&
            a.witness_target == b.witness_target);
  }

  {
    PLMap f = discretize(random_smooth_function(ModelSpace::sphere(2), 7), 4);
    WaistReport a, b;
    double ts = timed([&] { a = waist_check(f, FloorKind::TwoPiManifold, 2000,
                                            1, 0.1, false); });
    double tp = timed([&] { b = waist_check(f, FloorKind::TwoPiManifold, 2000,
                                            1, 0.1, true); });
    row("waist_check S2->R level 4", ts, tp,
        a.max_total_length == b.max_total_length &&
            a.witness_target == b.witness_target);
  }

  {
    std::vector<Vec> curve = random_closed_polygon(11, 5.0, 8);
    CroftonEstimate a, b;
    double ts = timed([&] { a = crofton_probability(curve, true, 2000000, 1,
                                                    false); });
    double tp = timed([&] { b = crofton_probability(curve, true, 2000000, 1,
                                                    true); });
    row("crofton 2e6 trials", ts, tp,
        a.p_hat == b.p_hat && a.e_hat == b.e_hat);
  }

  {
    LemmaVerdict a, b;
    double ts = timed([&] { a = hemisphere_campaign(20000, 3, 1e-9, false); });
    double tp = timed([&] { b = hemisphere_campaign(20000, 3, 1e-9, true); });
    row("hemisphere 2e4 trials", ts, tp,
        a.failures == b.failures && a.worst_margin == b.worst_margin &&
            a.worst_case == b.worst_case);
  }

  {
    LemmaVerdict a, b;
    double ts = timed([&] { a = convexity_campaign(200, 50, 3, 1e-9, false); });
    double tp = timed([&] { b = convexity_campaign(200, 50, 3, 1e-9, true); });
    row("convexity 200x50", ts, tp,
        a.failures == b.failures && a.worst_margin == b.worst_margin);
  }

  if (failures) {
    std::printf("%d kernel(s) disagree between serial and parallel\n", failures);
    return 1;
  }
  return 0;
}
