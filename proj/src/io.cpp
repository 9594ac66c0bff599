#include "mhar/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"

#include "mhar/errors.hpp"

namespace mhar {
namespace {

using nlohmann::json;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::io_failure, "cannot open " + path + " for writing");
  out << text;
  if (!out) raise(ErrorCode::io_failure, "write failed for " + path);
}

double parse_double(const std::string& token, const std::string& where) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc{} || result.ptr != end) {
    raise(ErrorCode::io_failure, "bad number '" + token + "' in " + where);
  }
  return value;
}

json config_to_json(const SamplerConfig& cfg) {
  json out;
  out["z"] = cfg.z;
  out["phi"] = cfg.phi;
  out["t_target"] = cfg.t_target;
  out["seed"] = cfg.seed;
  out["eps_dir"] = cfg.eps_dir;
  out["eps_feas"] = cfg.eps_feas;
  out["reproject_every"] = cfg.reproject_every;
  out["burn_in"] = cfg.burn_in;
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string sample_csv_string(const Matrix& samples) {
  std::string out;
  out.reserve(static_cast<size_t>(samples.size()) * 20 + 16);
  for (Eigen::Index j = 0; j < samples.cols(); ++j) {
    if (j > 0) out += ',';
    out += 'x';
    out += std::to_string(j + 1);
  }
  out += '\n';
  for (Eigen::Index i = 0; i < samples.rows(); ++i) {
    for (Eigen::Index j = 0; j < samples.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_double(samples(i, j));
    }
    out += '\n';
  }
  return out;
}

void write_sample_csv(const std::string& path, const Matrix& samples) {
  write_text(path, sample_csv_string(samples));
}

Matrix read_sample_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::io_failure, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) raise(ErrorCode::io_failure, path + ": missing header");
  Eigen::Index cols = 1;
  for (char c : line) {
    if (c == ',') ++cols;
  }
  std::vector<double> data;
  Eigen::Index rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string token;
    Eigen::Index seen = 0;
    while (std::getline(ss, token, ',')) {
      data.push_back(parse_double(token, path + " row " + std::to_string(rows)));
      ++seen;
    }
    if (seen != cols) {
      raise(ErrorCode::io_failure,
            path + ": row " + std::to_string(rows) + " has " + std::to_string(seen) +
                " fields, header has " + std::to_string(cols));
    }
    ++rows;
  }
  Matrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      out(i, j) = data[static_cast<size_t>(i * cols + j)];
    }
  }
  return out;
}

std::string manifest_string(const SampleSet& set, const std::string& polytope_source,
                            const std::string& samples_path) {
  json doc;
  doc["format_version"] = 1;
  doc["polytope"] = polytope_source;
  doc["samples_file"] = samples_path;
  doc["n"] = set.samples.cols();
  doc["samples_written"] = set.samples.rows();
  doc["windows"] = set.windows;
  doc["iterate_count"] = set.iterate_count;
  doc["redraw_count"] = set.redraw_count;
  doc["seconds"] = set.seconds;
  doc["start_radius"] = set.start_radius;
  doc["config"] = config_to_json(set.config);
  return doc.dump(2) + "\n";
}

void write_manifest(const std::string& path, const SampleSet& set,
                    const std::string& polytope_source, const std::string& samples_path) {
  write_text(path, manifest_string(set, polytope_source, samples_path));
}

std::string bench_csv_string(const std::vector<BenchRecord>& records) {
  std::string out = "figure,n,z,phi,windows,total_samples,mean_sps,std_sps,runs\n";
  for (const BenchRecord& r : records) {
    out += r.figure;
    out += ',' + std::to_string(r.n);
    out += ',' + std::to_string(r.z);
    out += ',' + std::to_string(r.phi);
    out += ',' + std::to_string(r.windows);
    out += ',' + std::to_string(r.total_samples);
    out += ',' + format_double(r.mean_sps);
    out += ',' + format_double(r.std_sps);
    out += ',' + std::to_string(r.run_seconds.size());
    out += '\n';
  }
  return out;
}

void write_bench_csv(const std::string& path, const std::vector<BenchRecord>& records) {
  write_text(path, bench_csv_string(records));
}

std::string bench_json_string(const std::vector<BenchRecord>& records) {
  json doc;
  doc["format_version"] = 1;
  json arr = json::array();
  for (const BenchRecord& r : records) {
    json rec;
    rec["figure"] = r.figure;
    rec["n"] = r.n;
    rec["z"] = r.z;
    rec["phi"] = r.phi;
    rec["windows"] = r.windows;
    rec["total_samples"] = r.total_samples;
    rec["mean_sps"] = r.mean_sps;
    rec["std_sps"] = r.std_sps;
    rec["run_seconds"] = r.run_seconds;
    rec["run_sps"] = r.run_sps;
    arr.push_back(std::move(rec));
  }
  doc["records"] = std::move(arr);
  return doc.dump(2) + "\n";
}

void write_bench_json(const std::string& path, const std::vector<BenchRecord>& records) {
  write_text(path, bench_json_string(records));
}

}  // namespace mhar
