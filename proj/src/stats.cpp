#include "mhar/stats.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mhar/errors.hpp"

namespace mhar {

Matrix sample_uniform_hypercube(RngStream& s, int n, int count) {
  if (n < 1 || count < 1) {
    raise(ErrorCode::invalid_argument, "sample_uniform_hypercube: n and count must be >= 1");
  }
  Matrix out(count, n);
  for (int r = 0; r < count; ++r) {
    for (int j = 0; j < n; ++j) out(r, j) = 2.0 * s.next_uniform() - 1.0;
  }
  return out;
}

Vector simplex_point_from_spacings(const VectorRef& spacings) {
  const Eigen::Index n = spacings.size();
  if (n < 2) {
    raise(ErrorCode::invalid_argument, "simplex_point_from_spacings: need at least two entries");
  }
  if ((spacings.array() < 0.0).any()) {
    raise(ErrorCode::invalid_argument, "simplex_point_from_spacings: entries must be >= 0");
  }
  const double sum = spacings.sum();
  if (sum <= 0.0) {
    return Vector::Constant(n, 1.0 / static_cast<double>(n));  // all spacings zero
  }
  return spacings / sum;
}

Matrix sample_uniform_simplex(RngStream& s, int n, int count) {
  if (n < 2 || count < 1) {
    raise(ErrorCode::invalid_argument, "sample_uniform_simplex: need n >= 2 and count >= 1");
  }
  Matrix out(count, n);
  Vector spacings(n);
  for (int r = 0; r < count; ++r) {
    for (int j = 0; j < n; ++j) spacings(j) = -std::log(s.next_uniform_open());
    out.row(r) = simplex_point_from_spacings(spacings).transpose();
  }
  return out;
}

std::vector<MstEdge> minimum_spanning_tree(const Matrix& points) {
  const Eigen::Index count = points.rows();
  if (count < 2) {
    raise(ErrorCode::invalid_argument, "minimum_spanning_tree: need at least two points");
  }
  // Column-major copy so the inner distance loop runs down contiguous columns.
  const Matrix pts = points.transpose();

  std::vector<double> best(static_cast<size_t>(count),
                           std::numeric_limits<double>::infinity());
  std::vector<int> parent(static_cast<size_t>(count), -1);
  std::vector<char> in_tree(static_cast<size_t>(count), 0);

  std::vector<MstEdge> edges;
  edges.reserve(static_cast<size_t>(count) - 1);

  best[0] = 0.0;
  for (Eigen::Index added = 0; added < count; ++added) {
    int u = -1;
    double u_key = std::numeric_limits<double>::infinity();
    for (Eigen::Index v = 0; v < count; ++v) {
      if (!in_tree[static_cast<size_t>(v)] && best[static_cast<size_t>(v)] < u_key) {
        u_key = best[static_cast<size_t>(v)];
        u = static_cast<int>(v);
      }
    }
    in_tree[static_cast<size_t>(u)] = 1;
    if (parent[static_cast<size_t>(u)] >= 0) {
      edges.push_back({parent[static_cast<size_t>(u)], u, std::sqrt(u_key)});
    }
    const auto u_col = pts.col(u);
    for (Eigen::Index v = 0; v < count; ++v) {
      if (in_tree[static_cast<size_t>(v)]) continue;
      const double d2 = (pts.col(v) - u_col).squaredNorm();
      if (d2 < best[static_cast<size_t>(v)]) {
        best[static_cast<size_t>(v)] = d2;
        parent[static_cast<size_t>(v)] = u;
      }
    }
  }
  return edges;
}

MstTestResult friedman_rafsky(const Matrix& sample_a, const Matrix& sample_b) {
  if (sample_a.rows() < 2 || sample_b.rows() < 2) {
    raise(ErrorCode::degenerate_test, "friedman_rafsky: each sample needs at least two points");
  }
  if (sample_a.cols() != sample_b.cols()) {
    raise(ErrorCode::dimension_mismatch, "friedman_rafsky: samples have different widths");
  }
  const Eigen::Index na = sample_a.rows();
  const Eigen::Index nb = sample_b.rows();
  const Eigen::Index total = na + nb;

  Matrix pooled(total, sample_a.cols());
  pooled.topRows(na) = sample_a;
  pooled.bottomRows(nb) = sample_b;

  const std::vector<MstEdge> edges = minimum_spanning_tree(pooled);

  MstTestResult res;
  res.pooled_size = total;
  std::vector<int> degree(static_cast<size_t>(total), 0);
  for (const MstEdge& e : edges) {
    ++degree[static_cast<size_t>(e.a)];
    ++degree[static_cast<size_t>(e.b)];
    const bool a_first = e.a < na;
    const bool b_first = e.b < na;
    if (a_first != b_first) ++res.cross_edges;
  }
  long long shared = 0;
  for (int d : degree) shared += static_cast<long long>(d) * (d - 1) / 2;
  res.shared_end_pairs = shared;

  const double m = static_cast<double>(na);
  const double np = static_cast<double>(nb);
  const double big_n = static_cast<double>(total);
  const double two_mn = 2.0 * m * np;
  res.expected_cross = two_mn / big_n + 1.0;
  const double c = static_cast<double>(shared);
  const double lead = two_mn / (big_n * (big_n - 1.0));
  res.variance_cross =
      lead * ((two_mn - big_n) / big_n +
              (c - big_n + 2.0) / ((big_n - 2.0) * (big_n - 3.0)) *
                  (big_n * (big_n - 1.0) - 2.0 * two_mn + 2.0));
  if (!(res.variance_cross > 0.0)) {
    raise(ErrorCode::degenerate_test, "friedman_rafsky: null variance " +
                                          std::to_string(res.variance_cross) +
                                          " is not positive");
  }
  res.z_value =
      (static_cast<double>(res.cross_edges) - res.expected_cross) / std::sqrt(res.variance_cross);
  return res;
}

}  // namespace mhar
