#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mhar/linalg.hpp"

namespace mhar {

class WalkRng;

/// Counter-based pseudorandom stream. Distinct (seed, stream) pairs yield
/// decorrelated sequences, so walks can own substreams that advance
/// independently of each other.
class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}
  RngStream(uint64_t seed, uint64_t stream);

  uint64_t next_u64();
  /// Uniform on [0, 1), 53-bit resolution.
  double next_uniform();
  /// Uniform on (0, 1]; safe as a logarithm argument.
  double next_uniform_open();

 private:
  uint64_t state_;

  // The matrix fill advances column streams in bulk to draw their uniforms
  // with wide integer arithmetic; outputs match the per-call path bit for bit.
  friend void fill_standard_normal_matrix(WalkRng&, Eigen::Ref<Matrix>);
};

/// Box-Muller transform: maps u1 in (0,1], u2 in [0,1) to two independent
/// standard normals (r cos a, r sin a) with r = sqrt(-2 ln u1), a = 2 pi u2.
std::pair<double, double> box_muller(double u1, double u2);

/// Random-number state for a batch of z walks: one substream per walk column
/// (stream ids 0..z-1) plus a dedicated stream for chord positions (stream id
/// 2^64-1). Redrawing one column never advances any other stream.
class WalkRng {
 public:
  WalkRng(uint64_t seed, int z);

  int width() const { return static_cast<int>(columns_.size()); }
  RngStream& column(int k) { return columns_[static_cast<size_t>(k)]; }
  RngStream& theta() { return theta_; }

  static constexpr uint64_t kThetaStreamId = ~uint64_t{0};

 private:
  std::vector<RngStream> columns_;
  RngStream theta_;
};

/// Fills out with standard normals drawn from s via Box-Muller, consuming
/// exactly 2*ceil(out.size()/2) uniforms in pair order (u1 then u2). For odd
/// sizes the final sine component is discarded.
void fill_standard_normal(RngStream& s, Eigen::Ref<Vector> out);

/// Fills an n x z matrix column by column, column k drawing from rng.column(k)
/// with the same pair order and draw count as fill_standard_normal.
void fill_standard_normal_matrix(WalkRng& rng, Eigen::Ref<Matrix> out);

}  // namespace mhar
