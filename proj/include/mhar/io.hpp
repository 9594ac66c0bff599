#pragma once

#include <string>
#include <vector>

#include "mhar/bench_types.hpp"
#include "mhar/linalg.hpp"
#include "mhar/sampler.hpp"

namespace mhar {

/// Shortest decimal form that parses back to the same 64-bit value.
std::string format_double(double value);

/// Header x1..xn then one comma-separated point per row.
std::string sample_csv_string(const Matrix& samples);
void write_sample_csv(const std::string& path, const Matrix& samples);
Matrix read_sample_csv(const std::string& path);

/// Sidecar describing how a sample file was produced: resolved config, seed,
/// timing, and the degenerate-direction redraw count.
std::string manifest_string(const SampleSet& set, const std::string& polytope_source,
                            const std::string& samples_path);
void write_manifest(const std::string& path, const SampleSet& set,
                    const std::string& polytope_source, const std::string& samples_path);

/// One delimited record per line:
/// figure,n,z,phi,windows,total_samples,mean_sps,std_sps,runs
std::string bench_csv_string(const std::vector<BenchRecord>& records);
void write_bench_csv(const std::string& path, const std::vector<BenchRecord>& records);

/// Same content as the delimited report plus per-run seconds and rates.
std::string bench_json_string(const std::vector<BenchRecord>& records);
void write_bench_json(const std::string& path, const std::vector<BenchRecord>& records);

}  // namespace mhar
