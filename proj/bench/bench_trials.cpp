// Serial reference (jobs = 1) against the OpenMP trial map on the same workload.
// usage: bench_trials [k_max] [trials] [jobs]
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "padic_rmt/harness.hpp"
#include "padic_rmt/presets.hpp"

using namespace padic;

namespace {

double timed(const ExperimentConfig& c, std::vector<TrialSummary>& out) {
  const auto start = std::chrono::steady_clock::now();
  out = run_trials(c);
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  ExperimentConfig c = *find_preset("fixed-10");
  c.k_max = argc > 1 ? std::atoll(argv[1]) : 2000;
  c.trials = argc > 2 ? std::atoll(argv[2]) : 64;
  const int jobs = argc > 3 ? std::atoi(argv[3]) : 0;

  std::vector<TrialSummary> serial, parallel;
  c.jobs = 1;
  const double ts = timed(c, serial);
  c.jobs = jobs;
  const double tp = timed(c, parallel);

  bool same = serial.size() == parallel.size();
  for (std::size_t i = 0; same && i < serial.size(); ++i) {
    same = serial[i].lambda == parallel[i].lambda && serial[i].v == parallel[i].v;
  }
  std::printf("workload: SN (1,0), p = 2, k = %lld, %lld trials\n", static_cast<long long>(c.k_max),
              static_cast<long long>(c.trials));
  std::printf("serial   : %8.3f s  (%.2f us/step)\n", ts, 1e6 * ts / static_cast<double>(c.k_max * c.trials));
  std::printf("openmp x%d: %8.3f s  (speedup %.2f)\n", available_threads(jobs), tp, ts / tp);
  std::printf("results identical: %s\n", same ? "yes" : "no");
  return same ? 0 : 1;
}
