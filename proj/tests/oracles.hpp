#pragma once

// Reference implementations used only by tests. Everything here is written as
// plain loops, independent of the library's linear algebra, so agreement is
// evidence rather than tautology. The walk reference shares the library's RNG
// streams (that coupling is the point of the equivalence tests) but nothing
// else.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "mhar/linalg.hpp"
#include "mhar/rng.hpp"

namespace oracle {

using Rows = std::vector<std::vector<double>>;

inline mhar::Matrix naive_matmul(const mhar::Matrix& a, const mhar::Matrix& b) {
  mhar::Matrix out(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (Eigen::Index k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  }
  return out;
}

inline mhar::Matrix adjugate_inverse_2x2(const mhar::Matrix& a) {
  const double det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  mhar::Matrix inv(2, 2);
  inv(0, 0) = a(1, 1) / det;
  inv(0, 1) = -a(0, 1) / det;
  inv(1, 0) = -a(1, 0) / det;
  inv(1, 1) = a(0, 0) / det;
  return inv;
}

inline mhar::Matrix adjugate_inverse_3x3(const mhar::Matrix& a) {
  const double det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                     a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                     a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  mhar::Matrix inv(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
      const int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
      // cofactor transpose: entry (j, i) of the adjugate lands at (i, j)
      inv(j, i) = (a(r0, c0) * a(r1, c1) - a(r0, c1) * a(r1, c0)) / det;
    }
  }
  return inv;
}

// --- chord oracle -----------------------------------------------------------

inline bool point_feasible(const Rows& a_in, const std::vector<double>& b_in,
                           const std::vector<double>& x, double slack) {
  for (size_t i = 0; i < a_in.size(); ++i) {
    double dot = 0.0;
    for (size_t j = 0; j < x.size(); ++j) dot += a_in[i][j] * x[j];
    if (dot > b_in[i] + slack) return false;
  }
  return true;
}

inline bool point_feasible(const mhar::Matrix& a_in, const mhar::Vector& b_in,
                           const mhar::Vector& x, double slack) {
  for (Eigen::Index i = 0; i < a_in.rows(); ++i) {
    double dot = 0.0;
    for (Eigen::Index j = 0; j < a_in.cols(); ++j) dot += a_in(i, j) * x(j);
    if (dot > b_in(i) + slack) return false;
  }
  return true;
}

// Enumerates every pairwise row intersection of {a x <= b} in the plane and
// returns the best objective value among the feasible ones. Assumes the
// program is bounded, so some vertex attains the optimum.
inline double enumerate_max_objective_2d(const mhar::Matrix& a, const mhar::Vector& b,
                                         const mhar::Vector& c) {
  const Eigen::Index rows = a.rows();
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = i + 1; j < rows; ++j) {
      const double det = a(i, 0) * a(j, 1) - a(i, 1) * a(j, 0);
      if (std::fabs(det) < 1e-12) continue;
      const double x0 = (b(i) * a(j, 1) - a(i, 1) * b(j)) / det;
      const double x1 = (a(i, 0) * b(j) - b(i) * a(j, 0)) / det;
      bool ok = true;
      for (Eigen::Index r = 0; r < rows && ok; ++r) {
        ok = a(r, 0) * x0 + a(r, 1) * x1 <= b(r) + 1e-9;
      }
      if (ok) best = std::max(best, c(0) * x0 + c(1) * x1);
    }
  }
  return best;
}

// Marches t outward in multiples of `resolution` from an interior point until
// x + t d leaves the inequalities, in both directions. The reported endpoints
// bracket the true chord within one resolution step.
struct ChordMarch {
  double lower = 0.0;
  double upper = 0.0;
};

inline ChordMarch ray_march_chord(const Rows& a_in, const std::vector<double>& b_in,
                                  const std::vector<double>& x, const std::vector<double>& d,
                                  double resolution) {
  const size_t n = x.size();
  std::vector<double> probe(n);
  auto feasible_at = [&](double t) {
    for (size_t j = 0; j < n; ++j) probe[j] = x[j] + t * d[j];
    return point_feasible(a_in, b_in, probe, 0.0);
  };
  ChordMarch out;
  long k = 1;
  while (feasible_at(static_cast<double>(k) * resolution)) ++k;
  out.upper = static_cast<double>(k) * resolution;
  k = 1;
  while (feasible_at(-static_cast<double>(k) * resolution)) ++k;
  out.lower = -static_cast<double>(k) * resolution;
  return out;
}

// --- scalar hit-and-run reference ------------------------------------------

// Single-walk hit-and-run: normal direction, optional null-space projection,
// chord from ratio scans, uniform chord point. Draws come from the library's
// stream types (column stream 0 and the theta stream) so a z=1 engine run
// sees the same sequence; all arithmetic is local.
struct ScalarWalk {
  Rows a_in;
  std::vector<double> b_in;
  Rows projection;  // empty for full-dimensional bodies

  static constexpr double kEpsDegenerateWidth = 1e-14;
  static constexpr int kMaxRetries = 16;
  static constexpr int kMaxThetaRejects = 64;

  std::vector<double> normals(mhar::RngStream& s, size_t n) const {
    std::vector<double> h(n);
    const size_t pairs = (n + 1) / 2;
    for (size_t p = 0; p < pairs; ++p) {
      const double u1 = s.next_uniform_open();
      const double u2 = s.next_uniform();
      const auto [c, sn] = mhar::box_muller(u1, u2);
      h[2 * p] = c;
      if (2 * p + 1 < n) h[2 * p + 1] = sn;
    }
    return h;
  }

  std::vector<double> apply_projection(const std::vector<double>& h) const {
    if (projection.empty()) return h;
    const size_t n = h.size();
    std::vector<double> d(n);
    for (size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (size_t j = 0; j < n; ++j) s += projection[i][j] * h[j];
      d[i] = s;
    }
    return d;
  }

  // Tightest bounds from rows whose rate clears eps_dir; degenerate when no
  // row clears it on either side or the interval has collapsed.
  struct Chord {
    double lower = 0.0;
    double upper = 0.0;
    bool degenerate = false;
  };

  Chord chord(const std::vector<double>& x, const std::vector<double>& d, double eps_dir) const {
    Chord c;
    c.lower = -std::numeric_limits<double>::infinity();
    c.upper = std::numeric_limits<double>::infinity();
    bool pos = false, neg = false;
    for (size_t i = 0; i < a_in.size(); ++i) {
      double ax = 0.0, ad = 0.0;
      for (size_t j = 0; j < x.size(); ++j) {
        ax += a_in[i][j] * x[j];
        ad += a_in[i][j] * d[j];
      }
      const double slack = b_in[i] - ax;
      if (ad > eps_dir) {
        const double lam = slack / ad;
        pos = true;
        if (lam < c.upper) c.upper = lam;
      } else if (ad < -eps_dir) {
        const double lam = slack / ad;
        neg = true;
        if (lam > c.lower) c.lower = lam;
      }
    }
    if (!pos || !neg) {
      c.degenerate = true;
      return c;
    }
    c.degenerate = !(c.upper - c.lower > kEpsDegenerateWidth);
    return c;
  }

  double draw_theta(mhar::RngStream& theta_stream, double lower, double upper) const {
    for (int attempt = 0; attempt < kMaxThetaRejects; ++attempt) {
      const double u = theta_stream.next_uniform();
      const double theta = lower + u * (upper - lower);
      if (theta > lower && theta < upper) return theta;
    }
    return lower + 0.5 * (upper - lower);
  }

  // Advances x by one hit-and-run step; returns false only if no usable
  // direction was found within the retry budget.
  bool advance(mhar::RngStream& column_stream, mhar::RngStream& theta_stream,
               std::vector<double>& x, double eps_dir) const {
    const size_t n = x.size();
    std::vector<double> d = apply_projection(normals(column_stream, n));
    Chord c;
    bool usable = false;
    if (!projection.empty()) {
      double sq = 0.0;
      for (double v : d) sq += v * v;
      usable = std::sqrt(sq) > 1e-12;
    } else {
      usable = true;
    }
    if (usable) {
      c = chord(x, d, eps_dir);
      usable = !c.degenerate;
    }
    for (int attempt = 0; !usable && attempt < kMaxRetries; ++attempt) {
      d = apply_projection(normals(column_stream, n));
      if (!projection.empty()) {
        double sq = 0.0;
        for (double v : d) sq += v * v;
        if (!(std::sqrt(sq) > 1e-12)) continue;
      }
      c = chord(x, d, eps_dir);
      usable = !c.degenerate;
    }
    if (!usable) return false;
    const double theta = draw_theta(theta_stream, c.lower, c.upper);
    for (size_t j = 0; j < n; ++j) x[j] += theta * d[j];
    return true;
  }
};

// --- small-scale Chebyshev-center oracles -----------------------------------

// Gaussian elimination with partial pivoting on a square system; returns
// false when a pivot vanishes.
inline bool gauss_solve(Rows m, std::vector<double> rhs, std::vector<double>& out) {
  const size_t n = rhs.size();
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    for (size_t r = col + 1; r < n; ++r) {
      if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
    }
    if (std::fabs(m[pivot][col]) < 1e-12) return false;
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (size_t r = col + 1; r < n; ++r) {
      const double f = m[r][col] / m[col][col];
      for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  out.assign(n, 0.0);
  for (size_t i = n; i-- > 0;) {
    double s = rhs[i];
    for (size_t c = i + 1; c < n; ++c) s -= m[i][c] * out[c];
    out[i] = s / m[i][i];
  }
  return true;
}

// Largest inscribed ball by vertex enumeration: every optimal basic solution
// of the centering problem makes n+1-of-the-constraints active, so trying all
// active sets and keeping the best feasible candidate is exhaustive. Only
// viable for tiny instances.
struct BallOracle {
  std::vector<double> x;
  double radius = -std::numeric_limits<double>::infinity();
  bool found = false;
};

inline BallOracle enumerate_chebyshev(const Rows& a_in, const std::vector<double>& b_in,
                                      const Rows& a_eq, const std::vector<double>& b_eq) {
  const size_t n = a_in[0].size();
  const size_t vars = n + 1;  // (x, r)
  const size_t m_eq = a_eq.size();

  // Candidate active rows: each inequality with its ball term, plus r >= 0.
  Rows cand;
  std::vector<double> cand_rhs;
  for (size_t i = 0; i < a_in.size(); ++i) {
    std::vector<double> row(vars, 0.0);
    double norm_sq = 0.0;
    for (size_t j = 0; j < n; ++j) {
      row[j] = a_in[i][j];
      norm_sq += a_in[i][j] * a_in[i][j];
    }
    row[n] = std::sqrt(norm_sq);
    cand.push_back(row);
    cand_rhs.push_back(b_in[i]);
  }
  {
    std::vector<double> row(vars, 0.0);
    row[n] = -1.0;  // -r <= 0
    cand.push_back(row);
    cand_rhs.push_back(0.0);
  }

  const size_t need = vars - m_eq;
  BallOracle best;
  // iterate over all `need`-subsets of candidate rows
  std::vector<size_t> idx(need);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    Rows sys;
    std::vector<double> rhs;
    for (size_t e = 0; e < m_eq; ++e) {
      std::vector<double> row(vars, 0.0);
      for (size_t j = 0; j < n; ++j) row[j] = a_eq[e][j];
      sys.push_back(row);
      rhs.push_back(b_eq[e]);
    }
    for (size_t k : idx) {
      sys.push_back(cand[k]);
      rhs.push_back(cand_rhs[k]);
    }
    std::vector<double> sol;
    if (gauss_solve(sys, rhs, sol) && sol[n] >= -1e-9) {
      bool feasible = true;
      for (size_t i = 0; i < cand.size() && feasible; ++i) {
        double lhs = 0.0;
        for (size_t j = 0; j < vars; ++j) lhs += cand[i][j] * sol[j];
        feasible = lhs <= cand_rhs[i] + 1e-9;
      }
      for (size_t e = 0; e < m_eq && feasible; ++e) {
        double lhs = 0.0;
        for (size_t j = 0; j < n; ++j) lhs += a_eq[e][j] * sol[j];
        feasible = std::fabs(lhs - b_eq[e]) <= 1e-9;
      }
      if (feasible && sol[n] > best.radius) {
        best.radius = sol[n];
        best.x.assign(sol.begin(), sol.begin() + static_cast<long>(n));
        best.found = true;
      }
    }
    // next combination
    size_t pos = need;
    while (pos-- > 0) {
      if (idx[pos] + (need - pos) < cand.size()) {
        ++idx[pos];
        for (size_t q = pos + 1; q < need; ++q) idx[q] = idx[q - 1] + 1;
        break;
      }
      if (pos == 0) return best;
    }
  }
}

// Grid search with window refinement for 2-D bodies: maximizes the margin
// min_i (b_i - a_i.x)/|a_i| directly.
inline double grid_chebyshev_radius_2d(const Rows& a_in, const std::vector<double>& b_in,
                                       double lo, double hi) {
  std::vector<double> norms(a_in.size());
  for (size_t i = 0; i < a_in.size(); ++i) {
    norms[i] = std::sqrt(a_in[i][0] * a_in[i][0] + a_in[i][1] * a_in[i][1]);
  }
  auto margin = [&](double x0, double x1) {
    double m = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < a_in.size(); ++i) {
      const double v = (b_in[i] - a_in[i][0] * x0 - a_in[i][1] * x1) / norms[i];
      if (v < m) m = v;
    }
    return m;
  };
  double cx = (lo + hi) / 2.0, cy = (lo + hi) / 2.0;
  double span = hi - lo, best = -std::numeric_limits<double>::infinity();
  const int grid = 40;
  for (int round = 0; round < 14; ++round) {
    double bx = cx, by = cy;
    for (int i = 0; i <= grid; ++i) {
      for (int j = 0; j <= grid; ++j) {
        const double x0 = cx - span / 2.0 + span * i / grid;
        const double x1 = cy - span / 2.0 + span * j / grid;
        const double v = margin(x0, x1);
        if (v > best) {
          best = v;
          bx = x0;
          by = x1;
        }
      }
    }
    cx = bx;
    cy = by;
    span *= 0.25;
  }
  return best;
}

// --- spanning tree oracles --------------------------------------------------

inline double edge_weight(const mhar::Matrix& pts, int a, int b) {
  double sq = 0.0;
  for (Eigen::Index j = 0; j < pts.cols(); ++j) {
    const double diff = pts(a, j) - pts(b, j);
    sq += diff * diff;
  }
  return std::sqrt(sq);
}

// Minimum total weight over every labeled spanning tree, enumerated through
// Prufer sequences. N^(N-2) trees, so N must stay tiny.
inline double prufer_minimum_weight(const mhar::Matrix& pts) {
  const int n = static_cast<int>(pts.rows());
  const int seq_len = n - 2;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> seq(static_cast<size_t>(std::max(seq_len, 0)), 0);
  long long total = 1;
  for (int i = 0; i < seq_len; ++i) total *= n;
  for (long long code = 0; code < total; ++code) {
    long long rest = code;
    for (int i = 0; i < seq_len; ++i) {
      seq[static_cast<size_t>(i)] = static_cast<int>(rest % n);
      rest /= n;
    }
    // standard Prufer decode: repeatedly join the smallest unused leaf to the
    // next sequence entry, then join the last two survivors
    std::vector<int> deg(static_cast<size_t>(n), 1);
    for (int v : seq) ++deg[static_cast<size_t>(v)];
    double weight = 0.0;
    std::vector<bool> used(static_cast<size_t>(n), false);
    for (int s : seq) {
      int leaf = -1;
      for (int v = 0; v < n; ++v) {
        if (deg[static_cast<size_t>(v)] == 1 && !used[static_cast<size_t>(v)]) {
          leaf = v;
          break;
        }
      }
      weight += edge_weight(pts, leaf, s);
      used[static_cast<size_t>(leaf)] = true;
      --deg[static_cast<size_t>(s)];
    }
    int u = -1, v = -1;
    for (int w = 0; w < n; ++w) {
      if (!used[static_cast<size_t>(w)] && deg[static_cast<size_t>(w)] == 1) {
        if (u < 0) {
          u = w;
        } else {
          v = w;
        }
      }
    }
    weight += edge_weight(pts, u, v);
    if (weight < best) best = weight;
  }
  return best;
}

inline double kruskal_weight(const mhar::Matrix& pts) {
  const int n = static_cast<int>(pts.rows());
  struct E {
    int a, b;
    double w;
  };
  std::vector<E> edges;
  edges.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) edges.push_back({a, b, edge_weight(pts, a, b)});
  }
  std::sort(edges.begin(), edges.end(), [](const E& l, const E& r) { return l.w < r.w; });
  std::vector<int> root(static_cast<size_t>(n));
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](int v) {
    while (root[static_cast<size_t>(v)] != v) v = root[static_cast<size_t>(v)];
    return v;
  };
  double total = 0.0;
  int taken = 0;
  for (const E& e : edges) {
    const int ra = find(e.a), rb = find(e.b);
    if (ra == rb) continue;
    root[static_cast<size_t>(ra)] = rb;
    total += e.w;
    if (++taken == n - 1) break;
  }
  return total;
}

// --- distribution checks ----------------------------------------------------

// Kolmogorov-Smirnov statistic of values against Uniform[0,1].
inline double ks_statistic_uniform(std::vector<double> u) {
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double d = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    const double lo = u[i] - static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n - u[i];
    d = std::max(d, std::max(lo, hi));
  }
  return d;
}

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

inline Moments sample_moments(const std::vector<double>& xs) {
  Moments m;
  for (double v : xs) m.mean += v;
  m.mean /= static_cast<double>(xs.size());
  for (double v : xs) m.variance += (v - m.mean) * (v - m.mean);
  m.variance /= static_cast<double>(xs.size() - 1);
  return m;
}

}  // namespace oracle
