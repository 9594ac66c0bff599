#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mhar/linalg.hpp"
#include "mhar/polytope.hpp"
#include "mhar/projection.hpp"
#include "mhar/rng.hpp"

namespace mhar {

/// Knobs for a sampling run. Zero / negative sentinels resolve to the
/// polytope-dependent defaults documented per field.
struct SamplerConfig {
  int z = 0;                   // walks advanced per iterate; 0 -> max(m_in, n) + 1
  long long phi = 0;           // iterates between collected batches; 0 -> walk dimension cubed
  long long t_target = 1;      // points to collect, rounded up to whole batches of z
  uint64_t seed = 0;
  double eps_dir = 1e-11;      // denominators at or below this are treated as parallel
  double eps_feas = 1e-9;      // containment slack for collected points
  long long reproject_every = -1;  // iterates between drift corrections; -1 -> phi, 0 -> off
  long long burn_in = -1;          // warmup iterates before collection starts; -1 -> phi
};

/// Fills in defaults against a polytope and checks ranges.
SamplerConfig resolve(const SamplerConfig& cfg, const Polytope& p);

/// Chord parameter range per walk: the segment x + theta d stays feasible for
/// theta in (lower, upper). Flagged walks have no usable chord and must have
/// their direction redrawn.
struct LambdaIntervals {
  Vector lower;
  Vector upper;
  std::vector<uint8_t> degenerate;
};

/// Interval width at or below which a chord counts as collapsed.
inline constexpr double kDegenerateWidth = 1e-14;

/// Attempts to replace a flagged direction before giving up.
inline constexpr int kMaxDirectionRetries = 16;

/// One standard normal direction per walk column, n x z.
Matrix generate_directions(WalkRng& rng, int n);

/// Chord intervals for every walk column: forms the inequality slack
/// b_in - a_in x, the directional rates a_in d, their ratios where the rate
/// clears eps_dir, and per column the tightest bound on each side. A column
/// whose rates are all below eps_dir is flagged; a column with rates on only
/// one side raises UNBOUNDED_POLYTOPE.
LambdaIntervals compute_lambda_intervals(const Polytope& p, const MatrixRef& x,
                                         const MatrixRef& d, double eps_dir);

/// Same computation writing into out, reusing its buffers across calls.
void compute_lambda_intervals(const Polytope& p, const MatrixRef& x, const MatrixRef& d,
                              double eps_dir, LambdaIntervals& out);

/// Affine map from u in [0,1] to the chord parameter lower + u (upper - lower).
double chord_point(double u, double lower, double upper);

/// Moves every walk to x + theta d with theta drawn uniformly from the open
/// interval via rng.theta(), rejecting endpoint hits. Raises
/// DIRECTION_DEGENERATE if any column is still flagged.
Matrix select_points(WalkRng& rng, const MatrixRef& x, const MatrixRef& d,
                     const LambdaIntervals& intervals);

struct WalkState {
  Matrix x;               // n x z, one walk per column
  long long t = 0;        // points collected so far
  long long j = 0;        // iterates since the last collection
  long long redraws = 0;  // degenerate-direction redraw attempts
};

/// One iterate of every walk: draw directions, project when the polytope has
/// equalities, compute chords, redraw collapsed columns (up to
/// kMaxDirectionRetries each, then RETRY_EXHAUSTED), and advance in place.
void step(const Polytope& p, const ProjectionOperator* projector, const SamplerConfig& cfg,
          WalkRng& rng, WalkState& state);

struct SampleSet {
  Matrix samples;           // one collected point per row
  SamplerConfig config;     // fully resolved
  Vector start;             // shared initial point
  double start_radius = 0.0;
  double seconds = 0.0;     // projector construction plus walk loop
  long long iterate_count = 0;  // z * phi * windows, burn-in excluded
  long long windows = 0;
  long long redraw_count = 0;
};

using ClockFn = std::function<double()>;

/// Full pipeline: resolve the config, find the starting center, then walk and
/// collect ceil(t_target / z) batches of z points. The optional clock (seconds
/// as a double) is read around the timed section; sample content never
/// depends on it.
SampleSet run(const Polytope& p, const SamplerConfig& cfg, const ClockFn& clock = {});

}  // namespace mhar
