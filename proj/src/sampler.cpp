#include "mhar/sampler.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "mhar/chebyshev.hpp"
#include "mhar/errors.hpp"
#include "vmath.hpp"

namespace mhar {
namespace {

constexpr int kMaxThetaRejects = 64;

struct StepWorkspace {
  Matrix h;    // raw normals
  Matrix d;    // walk directions
  Matrix ax;   // slack numerators b_in - a_in x
  Matrix ad;   // movement rate a_in d against each face
  Vector diag;
  LambdaIntervals iv;
};

StepWorkspace& workspace() {
  thread_local StepWorkspace w;
  return w;
}

struct ColumnInterval {
  double lower = 0.0;
  double upper = 0.0;
  bool degenerate = false;
};

// Tightest chord bounds for one column given its slack numerators and rates.
// has_* report whether any rate cleared eps_dir on that side.
ColumnInterval scan_column(const double* slack_num, const double* rate, Eigen::Index m,
                           double eps_dir, bool* has_upper, bool* has_lower) {
  ColumnInterval out;
  detail::chord_scan(slack_num, rate, m, eps_dir, &out.lower, &out.upper, has_upper, has_lower);
  out.degenerate = !(out.upper - out.lower > kDegenerateWidth);
  return out;
}

// Detects a_in made of stacked diagonal blocks (each row's single nonzero at
// column row % n, the shape of axis-aligned bound rows) and records the per-row
// coefficients. Such rows admit an elementwise slack/rate fill that matches the
// matrix products bit for bit: a one-term dot product rounds exactly once.
bool diagonal_block_rows(const Matrix& a, Vector& coef) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  if (m == 0 || n == 0 || m % n != 0) return false;
  coef.resize(m);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index next_diag = c;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double v = a(i, c);
      if (i == next_diag) {
        if (v == 0.0) return false;
        coef(i) = v;
        next_diag += n;
      } else if (v != 0.0) {
        return false;
      }
    }
  }
  return true;
}

ColumnInterval column_interval(const Polytope& p, const VectorRef& x_col, const VectorRef& d_col,
                               double eps_dir) {
  const Eigen::Index m = p.a_in.rows();
  thread_local Vector slack, rate;
  slack.resize(m);
  rate.resize(m);
  slack.noalias() = p.b_in - p.a_in * x_col;
  rate.noalias() = p.a_in * d_col;
  bool has_upper = false, has_lower = false;
  ColumnInterval out =
      scan_column(slack.data(), rate.data(), m, eps_dir, &has_upper, &has_lower);
  if (!has_upper && !has_lower) {
    out.degenerate = true;
    return out;
  }
  if (!has_upper || !has_lower) {
    raise(ErrorCode::unbounded_polytope,
          "chord is unbounded on one side; the polytope is not bounded");
  }
  return out;
}

double draw_theta(RngStream& theta_stream, double lower, double upper) {
  for (int attempt = 0; attempt < kMaxThetaRejects; ++attempt) {
    const double theta = chord_point(theta_stream.next_uniform(), lower, upper);
    if (theta > lower && theta < upper) return theta;
  }
  return chord_point(0.5, lower, upper);
}

// Redraws column k until its direction yields a usable chord, consuming only
// that column's stream. Returns the final interval.
ColumnInterval redraw_column(const Polytope& p, const ProjectionOperator* projector,
                             const SamplerConfig& cfg, WalkRng& rng, WalkState& state, int k,
                             Matrix& h, Matrix& d) {
  for (int attempt = 0; attempt < kMaxDirectionRetries; ++attempt) {
    ++state.redraws;
    fill_standard_normal(rng.column(k), h.col(k));
    if (projector != nullptr) {
      d.col(k).noalias() = projector->p * h.col(k);
      if (d.col(k).norm() <= kNearZeroDirection) continue;
    } else {
      d.col(k) = h.col(k);
    }
    const ColumnInterval iv = column_interval(p, state.x.col(k), d.col(k), cfg.eps_dir);
    if (!iv.degenerate) return iv;
  }
  raise(ErrorCode::retry_exhausted,
        "walk " + std::to_string(k) + ": no usable direction after " +
            std::to_string(kMaxDirectionRetries) + " redraws");
}

}  // namespace

SamplerConfig resolve(const SamplerConfig& cfg, const Polytope& p) {
  SamplerConfig r = cfg;
  const int n = p.dim();
  const long long walk_dim = n - p.num_equalities();
  if (r.z == 0) r.z = std::max(p.num_inequalities(), n) + 1;
  if (r.phi == 0) r.phi = walk_dim * walk_dim * walk_dim;
  if (r.burn_in < 0) r.burn_in = r.phi;
  if (r.reproject_every < 0) r.reproject_every = r.phi;
  if (r.z < 1) raise(ErrorCode::invalid_argument, "config: z must be >= 1");
  if (r.phi < 1) raise(ErrorCode::invalid_argument, "config: phi must be >= 1");
  if (r.t_target < 1) raise(ErrorCode::invalid_argument, "config: t_target must be >= 1");
  if (!(r.eps_dir > 0.0)) raise(ErrorCode::invalid_argument, "config: eps_dir must be > 0");
  if (!(r.eps_feas > 0.0)) raise(ErrorCode::invalid_argument, "config: eps_feas must be > 0");
  return r;
}

Matrix generate_directions(WalkRng& rng, int n) {
  if (n < 1) raise(ErrorCode::invalid_argument, "generate_directions: n must be >= 1");
  Matrix h(n, rng.width());
  fill_standard_normal_matrix(rng, h);
  return h;
}

void compute_lambda_intervals(const Polytope& p, const MatrixRef& x, const MatrixRef& d,
                              double eps_dir, LambdaIntervals& out) {
  const Eigen::Index n = p.a_in.cols();
  const Eigen::Index m = p.a_in.rows();
  const Eigen::Index z = x.cols();
  if (x.rows() != n || d.rows() != n || d.cols() != z) {
    raise(ErrorCode::dimension_mismatch, "compute_lambda_intervals: x is " +
                                             std::to_string(x.rows()) + "x" +
                                             std::to_string(x.cols()) + ", d is " +
                                             std::to_string(d.rows()) + "x" +
                                             std::to_string(d.cols()) + ", polytope dim " +
                                             std::to_string(n));
  }
  StepWorkspace& w = workspace();
  w.ax.resize(m, z);
  w.ad.resize(m, z);
  if (diagonal_block_rows(p.a_in, w.diag)) {
    for (Eigen::Index off = 0; off < m; off += n) {
      auto coef = w.diag.segment(off, n).array();
      w.ax.middleRows(off, n).array() =
          (-(x.array().colwise() * coef)).colwise() + p.b_in.segment(off, n).array();
      w.ad.middleRows(off, n).array() = d.array().colwise() * coef;
    }
  } else {
    w.ax.noalias() = p.a_in * x;        // inequality activity per walk
    w.ax = (-w.ax).colwise() + p.b_in;  // slack numerators b_in - a_in x
    w.ad.noalias() = p.a_in * d;        // movement rate against each face
  }

  out.lower.resize(z);
  out.upper.resize(z);
  out.degenerate.assign(static_cast<size_t>(z), 0);
  for (Eigen::Index k = 0; k < z; ++k) {
    bool has_upper = false, has_lower = false;
    const ColumnInterval iv = scan_column(w.ax.col(k).data(), w.ad.col(k).data(), m, eps_dir,
                                          &has_upper, &has_lower);
    if (!has_upper && !has_lower) {
      out.lower(k) = 0.0;
      out.upper(k) = 0.0;
      out.degenerate[static_cast<size_t>(k)] = 1;
      continue;
    }
    if (!has_upper || !has_lower) {
      raise(ErrorCode::unbounded_polytope,
            "walk " + std::to_string(k) +
                ": chord is unbounded on one side; the polytope is not bounded");
    }
    out.lower(k) = iv.lower;
    out.upper(k) = iv.upper;
    if (iv.degenerate) out.degenerate[static_cast<size_t>(k)] = 1;
  }
}

LambdaIntervals compute_lambda_intervals(const Polytope& p, const MatrixRef& x,
                                         const MatrixRef& d, double eps_dir) {
  LambdaIntervals out;
  compute_lambda_intervals(p, x, d, eps_dir, out);
  return out;
}

double chord_point(double u, double lower, double upper) {
  return lower + u * (upper - lower);
}

Matrix select_points(WalkRng& rng, const MatrixRef& x, const MatrixRef& d,
                     const LambdaIntervals& intervals) {
  const Eigen::Index z = x.cols();
  if (d.cols() != z || intervals.lower.size() != z || intervals.upper.size() != z ||
      static_cast<Eigen::Index>(intervals.degenerate.size()) != z) {
    raise(ErrorCode::dimension_mismatch, "select_points: inputs disagree on walk count");
  }
  for (Eigen::Index k = 0; k < z; ++k) {
    if (intervals.degenerate[static_cast<size_t>(k)]) {
      raise(ErrorCode::direction_degenerate,
            "select_points: walk " + std::to_string(k) + " has no usable chord");
    }
  }
  Matrix out(x.rows(), z);
  for (Eigen::Index k = 0; k < z; ++k) {
    const double theta = draw_theta(rng.theta(), intervals.lower(k), intervals.upper(k));
    out.col(k) = x.col(k) + theta * d.col(k);
  }
  return out;
}

void step(const Polytope& p, const ProjectionOperator* projector, const SamplerConfig& cfg,
          WalkRng& rng, WalkState& state) {
  const Eigen::Index n = p.a_in.cols();
  const Eigen::Index z = state.x.cols();
  StepWorkspace& w = workspace();
  w.h.resize(n, z);
  fill_standard_normal_matrix(rng, w.h);

  std::vector<int> collapsed;
  if (projector != nullptr) {
    w.d.resize(n, z);
    w.d.noalias() = projector->p * w.h;
    for (Eigen::Index k = 0; k < z; ++k) {
      if (w.d.col(k).norm() <= kNearZeroDirection) collapsed.push_back(static_cast<int>(k));
    }
  } else {
    w.d.swap(w.h);
  }

  LambdaIntervals& intervals = w.iv;
  compute_lambda_intervals(p, state.x, w.d, cfg.eps_dir, intervals);
  for (int k : collapsed) intervals.degenerate[static_cast<size_t>(k)] = 1;

  for (Eigen::Index k = 0; k < z; ++k) {
    if (!intervals.degenerate[static_cast<size_t>(k)]) continue;
    const ColumnInterval iv = redraw_column(p, projector, cfg, rng, state, static_cast<int>(k),
                                            projector != nullptr ? w.h : w.d, w.d);
    intervals.lower(k) = iv.lower;
    intervals.upper(k) = iv.upper;
    intervals.degenerate[static_cast<size_t>(k)] = 0;
  }

  for (Eigen::Index k = 0; k < z; ++k) {
    const double theta = draw_theta(rng.theta(), intervals.lower(k), intervals.upper(k));
    state.x.col(k) += theta * w.d.col(k);
  }
  ++state.j;
}

SampleSet run(const Polytope& p, const SamplerConfig& cfg, const ClockFn& clock) {
  const SamplerConfig rc = resolve(cfg, p);
  const ChebyshevCenter center = chebyshev_center(p);

  auto now = [&clock]() {
    if (clock) return clock();
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
  };

  const double t0 = now();
  std::optional<ProjectionOperator> projector;
  if (p.num_equalities() > 0) projector = compute_projection(p.a_eq);
  const ProjectionOperator* proj_ptr = projector ? &*projector : nullptr;

  const long long windows = (rc.t_target + rc.z - 1) / rc.z;
  const Eigen::Index n = p.dim();

  SampleSet out;
  out.config = rc;
  out.start = center.x;
  out.start_radius = center.radius;
  out.windows = windows;
  out.samples.resize(windows * rc.z, n);

  WalkState state;
  state.x = center.x.replicate(1, rc.z);
  WalkRng rng(rc.seed, rc.z);

  long long global_iter = 0;
  auto advance = [&]() {
    step(p, proj_ptr, rc, rng, state);
    ++global_iter;
    if (proj_ptr != nullptr && rc.reproject_every > 0 &&
        global_iter % rc.reproject_every == 0) {
      state.x = reproject_points(*projector, p.b_eq, state.x);
    }
  };

  for (long long i = 0; i < rc.burn_in; ++i) advance();
  state.j = 0;

  long long row = 0;
  for (long long w = 0; w < windows; ++w) {
    for (long long i = 0; i < rc.phi; ++i) advance();
    for (int k = 0; k < rc.z; ++k) {
      if (!contains(p, state.x.col(k), rc.eps_feas)) {
        raise(ErrorCode::numerical_failure,
              "walk " + std::to_string(k) + " left the polytope at collection " +
                  std::to_string(w));
      }
      out.samples.row(row++) = state.x.col(k).transpose();
    }
    state.t += rc.z;
    state.j = 0;
  }

  out.seconds = now() - t0;
  out.iterate_count = static_cast<long long>(rc.z) * rc.phi * windows;
  out.redraw_count = state.redraws;
  return out;
}

}  // namespace mhar
