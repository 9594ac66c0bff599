#pragma once

#include <string>
#include <vector>

namespace mhar {

/// Aggregated throughput measurement for one (figure, z) cell.
struct BenchRecord {
  std::string figure;
  int n = 0;
  int z = 0;
  long long phi = 0;
  long long windows = 0;
  long long total_samples = 0;        // iterates produced per repetition
  std::vector<double> run_seconds;    // one entry per repetition
  std::vector<double> run_sps;        // total_samples / seconds, per repetition
  double mean_sps = 0.0;
  double std_sps = 0.0;               // sample standard deviation, 0 for one run
};

}  // namespace mhar
