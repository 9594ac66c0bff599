#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mhar/bench.hpp"
#include "mhar/chebyshev.hpp"
#include "mhar/errors.hpp"
#include "mhar/io.hpp"
#include "mhar/polytope.hpp"
#include "mhar/rng.hpp"
#include "mhar/sampler.hpp"
#include "mhar/stats.hpp"

namespace {

using namespace mhar;

constexpr uint64_t kReferenceStreamId = ~uint64_t{0} - 1;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument:
    case ErrorCode::dimension_mismatch:
    case ErrorCode::io_failure:
      return 2;
    case ErrorCode::empty_polytope:
      return 3;
    case ErrorCode::no_interior:
      return 4;
    case ErrorCode::unbounded_polytope:
      return 5;
    default:
      return 6;
  }
}

struct SourceOptions {
  std::string figure;
  int dim = 0;
  std::string file;
};

void add_source_options(CLI::App* cmd, SourceOptions& src, bool figure_only = false) {
  auto* fig = cmd->add_option("--figure", src.figure, "Built-in polytope family")
                  ->check(CLI::IsMember({"hypercube", "simplex"}));
  auto* dim = cmd->add_option("--dim", src.dim, "Dimension for --figure");
  if (!figure_only) {
    auto* in = cmd->add_option("--in", src.file, "Polytope description file");
    in->excludes(fig)->excludes(dim);
    fig->excludes(in);
  }
  fig->needs(dim);
}

Polytope resolve_source(const SourceOptions& src, std::string* label) {
  if (!src.file.empty()) {
    *label = src.file;
    return load_polytope(src.file);
  }
  if (src.figure.empty()) {
    raise(ErrorCode::invalid_argument, "give either --figure with --dim or --in");
  }
  *label = src.figure + "(" + std::to_string(src.dim) + ")";
  if (src.figure == "hypercube") return make_hypercube(src.dim);
  return make_simplex(src.dim);
}

std::string tuple_string(const Vector& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_double(v(i));
  }
  out += ")";
  return out;
}

int run_sample(const SourceOptions& src, const SamplerConfig& cfg, const std::string& out_path,
               std::string manifest_path) {
  std::string label;
  const Polytope p = resolve_source(src, &label);
  const SampleSet set = run(p, cfg);
  write_sample_csv(out_path, set.samples);
  if (manifest_path.empty()) manifest_path = out_path + ".manifest.json";
  write_manifest(manifest_path, set, label, out_path);
  std::cout << "wrote " << set.samples.rows() << " points (n=" << set.samples.cols() << ") from "
            << label << " to " << out_path << "\n"
            << "iterates=" << set.iterate_count << " windows=" << set.windows
            << " redraws=" << set.redraw_count << " seconds=" << format_double(set.seconds)
            << "\n";
  return 0;
}

int run_center(const SourceOptions& src) {
  std::string label;
  const Polytope p = resolve_source(src, &label);
  const ChebyshevCenter center = chebyshev_center(p);
  std::cout << "r = " << format_double(center.radius) << "\n"
            << "x = " << tuple_string(center.x) << "\n";
  return 0;
}

int run_uniformity(const SourceOptions& src, SamplerConfig cfg, long long reference_count) {
  std::string label;
  const Polytope p = resolve_source(src, &label);
  const SampleSet set = run(p, cfg);
  if (reference_count <= 0) reference_count = set.samples.rows();
  RngStream reference_stream(cfg.seed, kReferenceStreamId);
  const Matrix reference =
      src.figure == "hypercube"
          ? sample_uniform_hypercube(reference_stream, p.dim(), static_cast<int>(reference_count))
          : sample_uniform_simplex(reference_stream, p.dim(), static_cast<int>(reference_count));
  const MstTestResult res = friedman_rafsky(set.samples, reference);
  std::cout << "figure = " << label << "\n"
            << "engine_points = " << set.samples.rows() << "\n"
            << "reference_points = " << reference.rows() << "\n"
            << "cross_edges = " << res.cross_edges << "\n"
            << "expected_cross = " << format_double(res.expected_cross) << "\n"
            << "variance_cross = " << format_double(res.variance_cross) << "\n"
            << "shared_end_pairs = " << res.shared_end_pairs << "\n"
            << "z_value = " << format_double(res.z_value) << "\n";
  const bool pass = res.z_value >= kUniformityZThreshold;
  std::cout << (pass ? "PASS" : "FAIL") << " (threshold z >= "
            << format_double(kUniformityZThreshold) << ")\n";
  return pass ? 0 : 1;
}

int run_bench(const SourceOptions& src, const std::vector<int>& z_values, const BenchConfig& cfg,
              const std::string& csv_path, const std::string& json_path) {
  std::string label;
  const Polytope p = resolve_source(src, &label);
  const std::vector<BenchRecord> records = sweep_padding(p, z_values, cfg, label);
  const BenchRecord* best = &records.front();
  for (const BenchRecord& r : records) {
    std::cout << r.figure << " n=" << r.n << " z=" << r.z << " phi=" << r.phi
              << " windows=" << r.windows << " iterates=" << r.total_samples
              << " mean_sps=" << format_double(r.mean_sps)
              << " std_sps=" << format_double(r.std_sps) << " runs=" << r.run_seconds.size()
              << "\n";
    if (r.mean_sps > best->mean_sps) best = &r;
  }
  std::cout << "best z = " << best->z << " (" << format_double(best->mean_sps)
            << " samples/sec)\n";
  if (!csv_path.empty()) write_bench_csv(csv_path, records);
  if (!json_path.empty()) write_bench_json(json_path, records);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Batched hit-and-run sampler for convex polytopes"};
  app.require_subcommand(1);

  SourceOptions sample_src;
  SamplerConfig sample_cfg;
  sample_cfg.t_target = 1000;
  std::string sample_out;
  std::string sample_manifest;
  auto* sample_cmd = app.add_subcommand("sample", "Draw near-uniform points");
  add_source_options(sample_cmd, sample_src);
  sample_cmd->add_option("--out", sample_out, "Output CSV path")->required();
  sample_cmd->add_option("--manifest", sample_manifest,
                         "Manifest path (default: <out>.manifest.json)");
  sample_cmd->add_option("--samples", sample_cfg.t_target, "Points to collect");
  sample_cmd->add_option("--z", sample_cfg.z, "Walks per iterate (0 = auto)");
  sample_cmd->add_option("--phi", sample_cfg.phi, "Iterates between batches (0 = auto)");
  sample_cmd->add_option("--seed", sample_cfg.seed, "RNG seed");
  sample_cmd->add_option("--eps-dir", sample_cfg.eps_dir, "Parallel-face threshold");
  sample_cmd->add_option("--eps-feas", sample_cfg.eps_feas, "Containment slack");
  sample_cmd->add_option("--reproject-every", sample_cfg.reproject_every,
                         "Drift correction cadence (-1 = phi, 0 = off)");
  sample_cmd->add_option("--burn-in", sample_cfg.burn_in, "Warmup iterates (-1 = phi)");

  SourceOptions center_src;
  auto* center_cmd = app.add_subcommand("center", "Largest inscribed ball");
  add_source_options(center_cmd, center_src);

  SourceOptions uni_src;
  SamplerConfig uni_cfg;
  uni_cfg.t_target = 5000;
  long long uni_reference = 0;
  auto* uni_cmd =
      app.add_subcommand("test-uniformity", "Score sampler output against uniform reference");
  add_source_options(uni_cmd, uni_src, /*figure_only=*/true);
  uni_cmd->get_option("--figure")->required();
  uni_cmd->add_option("--samples", uni_cfg.t_target, "Engine points to collect");
  uni_cmd->add_option("--reference-samples", uni_reference,
                      "Reference points (0 = same as --samples)");
  uni_cmd->add_option("--z", uni_cfg.z, "Walks per iterate (0 = auto)");
  uni_cmd->add_option("--phi", uni_cfg.phi, "Iterates between batches (0 = auto)");
  uni_cmd->add_option("--seed", uni_cfg.seed, "RNG seed");
  uni_cmd->add_option("--burn-in", uni_cfg.burn_in, "Warmup iterates (-1 = phi)");

  SourceOptions bench_src;
  BenchConfig bench_cfg;
  std::vector<int> bench_z{1, 4, 16, 64};
  std::string bench_csv;
  std::string bench_json;
  auto* bench_cmd = app.add_subcommand("bench", "Throughput across padding values");
  add_source_options(bench_cmd, bench_src);
  bench_cmd->add_option("--z-list", bench_z, "Padding values to sweep")->delimiter(',');
  bench_cmd->add_option("--phi", bench_cfg.phi, "Iterates between batches");
  bench_cmd->add_option("--windows", bench_cfg.windows, "Batches per run");
  bench_cmd->add_option("--repetitions", bench_cfg.repetitions, "Timed runs per z");
  bench_cmd->add_option("--seed", bench_cfg.seed, "Base RNG seed");
  bench_cmd->add_option("--out", bench_csv, "Report CSV path");
  bench_cmd->add_option("--json", bench_json, "Report JSON path");

  try {
    app.parse(argc, argv);
    if (*sample_cmd) return run_sample(sample_src, sample_cfg, sample_out, sample_manifest);
    if (*center_cmd) return run_center(center_src);
    if (*uni_cmd) return run_uniformity(uni_src, uni_cfg, uni_reference);
    if (*bench_cmd) return run_bench(bench_src, bench_z, bench_cfg, bench_csv, bench_json);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const mhar::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 6;
  }
  return 0;
}
