#include "mhar/bench.hpp"

#include <cmath>

#include "mhar/errors.hpp"

namespace mhar {

BenchRecord measure_throughput(const Polytope& p, int z, const BenchConfig& cfg,
                               const std::string& figure, const ClockFn& clock) {
  if (z < 1 || cfg.phi < 1 || cfg.windows < 1 || cfg.repetitions < 1 || cfg.burn_in < 0) {
    raise(ErrorCode::invalid_argument, "measure_throughput: all counts must be positive");
  }
  BenchRecord record;
  record.figure = figure;
  record.n = p.dim();
  record.z = z;
  record.phi = cfg.phi;
  record.windows = cfg.windows;
  record.total_samples = static_cast<long long>(z) * cfg.phi * cfg.windows;

  SamplerConfig sampler_cfg;
  sampler_cfg.z = z;
  sampler_cfg.phi = cfg.phi;
  sampler_cfg.t_target = static_cast<long long>(z) * cfg.windows;
  sampler_cfg.burn_in = cfg.burn_in;

  for (int rep = 0; rep < cfg.repetitions; ++rep) {
    sampler_cfg.seed = cfg.seed + static_cast<uint64_t>(rep);
    const SampleSet set = run(p, sampler_cfg, clock);
    if (!(set.seconds > 0.0)) {
      raise(ErrorCode::numerical_failure, "measure_throughput: non-positive run time");
    }
    record.run_seconds.push_back(set.seconds);
    record.run_sps.push_back(static_cast<double>(set.iterate_count) / set.seconds);
  }

  double sum = 0.0;
  for (double v : record.run_sps) sum += v;
  record.mean_sps = sum / static_cast<double>(record.run_sps.size());
  if (record.run_sps.size() > 1) {
    double sq = 0.0;
    for (double v : record.run_sps) sq += (v - record.mean_sps) * (v - record.mean_sps);
    record.std_sps = std::sqrt(sq / static_cast<double>(record.run_sps.size() - 1));
  }
  return record;
}

std::vector<BenchRecord> sweep_padding(const Polytope& p, const std::vector<int>& z_values,
                                       const BenchConfig& cfg, const std::string& figure,
                                       const ClockFn& clock) {
  if (z_values.empty()) {
    raise(ErrorCode::invalid_argument, "sweep_padding: z list is empty");
  }
  std::vector<BenchRecord> records;
  records.reserve(z_values.size());
  for (int z : z_values) {
    records.push_back(measure_throughput(p, z, cfg, figure, clock));
  }
  return records;
}

}  // namespace mhar
