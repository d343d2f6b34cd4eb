// Times the OpenMP grid kernels against their serial references.
//   medial_bench [cells] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include <omp.h>

#include "medial/grid_kernels.hpp"
#include "medial/set_geometry.hpp"
#include "medial/verification.hpp"

using namespace medial;

namespace {

double seconds(const std::function<void()>& fn, int repeats) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-22s serial %8.3f s   omp %8.3f s   speedup %5.2fx\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t cells = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 256;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  std::printf("threads: %d, grid %zu^2\n", omp_get_max_threads(), cells);

  const ClosedSet set({2, {SitePoint{{-1.0, -0.6}}, SitePoint{{1.1, -0.4}}, SitePoint{{0.2, 1.3}},
                           Segment{{-1.5, 1.5}, {-0.5, 1.8}}, Ball{{1.2, 1.2}, 0.4, false}}});
  const Grid grid(Window::centered(2, 2.0), cells);

  report("sweep_distance_field", seconds([&] { sweep_distance_field_serial(set, grid); }, repeats),
         seconds([&] { sweep_distance_field(set, grid); }, repeats));
  report("scan_grid", seconds([&] { scan_grid_serial(set, grid); }, repeats),
         seconds([&] { scan_grid(set, grid); }, repeats));

  const auto samples = detect_ambiguous(set, grid);
  const CertifyOptions opts;
  report("certify_samples", seconds([&] { certify_samples_serial(set, samples, opts); }, repeats),
         seconds([&] { certify_samples(set, samples, opts); }, repeats));
  return 0;
}
