#pragma once

#include <vector>

#include "mhar/linalg.hpp"
#include "mhar/rng.hpp"

namespace mhar {

/// count x n matrix of points uniform on [-1, 1]^n, one per row.
Matrix sample_uniform_hypercube(RngStream& s, int n, int count);

/// Normalizes nonnegative exponential spacings into a point on the standard
/// simplex. Equal spacings map to the barycenter; an all-zero vector (every
/// uniform draw hit 1 exactly) falls back to the barycenter as well.
Vector simplex_point_from_spacings(const VectorRef& spacings);

/// count x n matrix of points uniform on the standard simplex, one per row,
/// via normalized exponential spacings.
Matrix sample_uniform_simplex(RngStream& s, int n, int count);

struct MstEdge {
  int a;
  int b;
  double weight;
};

/// Euclidean minimum spanning tree of the row points. Deterministic: vertices
/// enter in index order and distance ties keep the earlier candidate.
/// Runs in O(N^2) time and O(N) extra memory.
std::vector<MstEdge> minimum_spanning_tree(const Matrix& points);

/// Two-sample test result over the pooled minimum spanning tree.
struct MstTestResult {
  long long cross_edges = 0;     // edges joining the two samples
  double expected_cross = 0.0;   // null mean of cross_edges
  double variance_cross = 0.0;   // null variance of cross_edges
  double z_value = 0.0;          // (cross_edges - expected) / sqrt(variance)
  long long shared_end_pairs = 0;  // tree edge pairs sharing an endpoint
  long long pooled_size = 0;
};

/// Threshold on z_value below which the samples are declared different at
/// the 5% one-sided level.
inline constexpr double kUniformityZThreshold = -1.64;

/// Pools sample_a rows then sample_b rows, builds the minimum spanning tree,
/// and scores the cross-sample edge count against its null distribution.
/// Raises DEGENERATE_TEST when either sample has fewer than two points or the
/// null variance is not positive.
MstTestResult friedman_rafsky(const Matrix& sample_a, const Matrix& sample_b);

}  // namespace mhar
