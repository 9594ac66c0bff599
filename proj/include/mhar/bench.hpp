#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mhar/bench_types.hpp"
#include "mhar/polytope.hpp"
#include "mhar/sampler.hpp"

namespace mhar {

/// Shared settings for throughput runs. Timing spans projector construction
/// and the walk loop; loading and centering are excluded by construction.
struct BenchConfig {
  long long phi = 1000;
  long long windows = 1;    // collected batches per run
  int repetitions = 5;
  uint64_t seed = 0;        // repetition r runs with seed + r
  long long burn_in = 0;
};

/// Runs the sampler `repetitions` times at padding z and aggregates
/// iterates-per-second. The rate of repetition r is
/// (z * phi * windows) / run_seconds[r].
BenchRecord measure_throughput(const Polytope& p, int z, const BenchConfig& cfg,
                               const std::string& figure, const ClockFn& clock = {});

/// One record per padding value, phi and window count held fixed, so rates
/// are comparable across z.
std::vector<BenchRecord> sweep_padding(const Polytope& p, const std::vector<int>& z_values,
                                       const BenchConfig& cfg, const std::string& figure,
                                       const ClockFn& clock = {});

}  // namespace mhar
