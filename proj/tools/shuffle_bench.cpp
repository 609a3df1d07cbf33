// Compares the serial reference simulator against the OpenMP path on two
// construction families and checks that the reports agree bit for bit.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wmra/constructions.hpp"
#include "wmra/shuffle.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double run_ms(const wmra::WmrArray& a, const wmra::ChannelMatrix& h,
              const wmra::IvStore& ivs, bool parallel, int reps,
              double* max_residual) {
  wmra::SimulateOptions options;
  options.parallel = parallel;
  double best = 1e300;
  for (int rep = 0; rep < reps; ++rep) {
    const auto start = Clock::now();
    const auto report = wmra::simulate_shuffle(a, h, ivs, options);
    const auto stop = Clock::now();
    best = std::min(
        best, std::chrono::duration<double, std::milli>(stop - start).count());
    *max_residual = report.max_residual;
  }
  return best;
}

bool identical(const wmra::ShuffleReport& x, const wmra::ShuffleReport& y) {
  if (x.slots.size() != y.slots.size()) return false;
  for (std::size_t s = 0; s < x.slots.size(); ++s) {
    const auto& dx = x.slots[s].decodes;
    const auto& dy = y.slots[s].decodes;
    if (dx.size() != dy.size()) return false;
    for (std::size_t i = 0; i < dx.size(); ++i) {
      if (dx[i].decoded != dy[i].decoded) return false;
      if (dx[i].residual != dy[i].residual) return false;
    }
  }
  return true;
}

void bench(const char* label, const wmra::WmrArray& a, int symbols, int reps) {
  const auto h = wmra::gen_channel(a.node_count, 12345);
  const auto ivs =
      wmra::IvStore::random(a.node_count, a.file_count, symbols, 999);

  const auto serial = wmra::simulate_shuffle_serial(a, h, ivs);
  const auto parallel = wmra::simulate_shuffle(a, h, ivs);
  const bool match = identical(serial, parallel);

  double res_serial = 0.0, res_parallel = 0.0;
  const double ms_serial = run_ms(a, h, ivs, false, reps, &res_serial);
  const double ms_parallel = run_ms(a, h, ivs, true, reps, &res_parallel);

  std::printf("%-28s K=%-3d N=%-3d S=%-4d T=%-4d  serial %8.2f ms  omp %8.2f ms  speedup %.2fx  identical %s  max_residual %.2e\n",
              label, a.node_count, a.file_count, a.slot_count, symbols,
              ms_serial, ms_parallel, ms_serial / ms_parallel,
              match ? "yes" : "NO", res_parallel);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; both paths run serially\n");
#endif
  const int reps = 3;
  bench("case-a K=48 r=24", wmra::construct_case_a(48, 24), 128, reps);
  bench("case-a K=64 r=32", wmra::construct_case_a(64, 32), 64, reps);
  bench("case-b t=24 r=2 (K=48)", wmra::construct_case_b(48, 2), 128, reps);
  bench("case-b t=16 r=4 (K=64)", wmra::construct_case_b(64, 4), 128, reps);
  return 0;
}
