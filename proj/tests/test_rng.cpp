#include <cmath>
#include <cstring>
#include <vector>

#include "doctest.h"
#include "mhar/errors.hpp"
#include "mhar/rng.hpp"
#include "oracles.hpp"

using mhar::Matrix;
using mhar::Vector;

TEST_CASE("streams are deterministic and decorrelated across ids") {
  mhar::RngStream a(123, 0);
  mhar::RngStream b(123, 0);
  mhar::RngStream other_stream(123, 1);
  mhar::RngStream other_seed(124, 0);
  int differs_stream = 0, differs_seed = 0;
  for (int i = 0; i < 64; ++i) {
    const uint64_t v = a.next_u64();
    CHECK(v == b.next_u64());
    if (v != other_stream.next_u64()) ++differs_stream;
    if (v != other_seed.next_u64()) ++differs_seed;
  }
  CHECK(differs_stream >= 63);
  CHECK(differs_seed >= 63);
}

TEST_CASE("uniform variants stay inside their stated ranges") {
  mhar::RngStream s(7, 3);
  for (int i = 0; i < 10000; ++i) {
    const double closed_open = s.next_uniform();
    CHECK(closed_open >= 0.0);
    CHECK(closed_open < 1.0);
    const double open_closed = s.next_uniform_open();
    CHECK(open_closed > 0.0);
    CHECK(open_closed <= 1.0);
  }
}

TEST_CASE("box_muller pins the half-turn example and rejects bad inputs") {
  // u2 = 1/4 puts the angle at pi/2, so the cosine component collapses.
  const auto [c, s] = mhar::box_muller(0.5, 0.25);
  CHECK(std::fabs(c) <= 1e-15);
  CHECK(s == doctest::Approx(std::sqrt(2.0 * std::log(2.0))).epsilon(1e-12));

  CHECK_THROWS_AS(mhar::box_muller(0.0, 0.5), mhar::Error);
  CHECK_THROWS_AS(mhar::box_muller(1.5, 0.5), mhar::Error);
  CHECK_THROWS_AS(mhar::box_muller(0.5, 1.0), mhar::Error);
  CHECK_THROWS_AS(mhar::box_muller(0.5, -0.1), mhar::Error);
}

TEST_CASE("normal moments sit inside CLT bounds at 1e5 draws") {
  mhar::RngStream s(2024, 0);
  std::vector<double> draws;
  draws.reserve(100000);
  Vector buf(100000);
  mhar::fill_standard_normal(s, buf);
  for (int i = 0; i < buf.size(); ++i) draws.push_back(buf(i));
  const oracle::Moments m = oracle::sample_moments(draws);
  CHECK(std::fabs(m.mean) <= 0.02);
  CHECK(std::fabs(m.variance - 1.0) <= 0.03);
}

TEST_CASE("fill consumes a fixed number of draws regardless of parity") {
  // odd length: 2*ceil(n/2) uniforms, the dangling sine discarded
  mhar::RngStream a(5, 9);
  Vector odd(5);
  mhar::fill_standard_normal(a, odd);
  mhar::RngStream b(5, 9);
  for (int i = 0; i < 6; ++i) b.next_u64();
  // both streams now aligned: the next values agree
  CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("single-walk fill matches scalar Box-Muller bit for bit") {
  // Coupling contract: a z=1 engine column and a scalar reference reading the
  // same stream see bit-identical normals. These batch sizes stay below any
  // SIMD group width, so the batched transform runs its scalar path and
  // equality is exact, which the walk-equivalence tests rely on.
  for (const int n : {2, 3, 4, 5}) {
    mhar::WalkRng rng(99, 1);
    Matrix h(n, 1);
    mhar::fill_standard_normal_matrix(rng, h);
    mhar::RngStream ref(99, 0);
    std::vector<double> want(static_cast<size_t>(n));
    const int pairs = (n + 1) / 2;
    for (int p = 0; p < pairs; ++p) {
      const double u1 = ref.next_uniform_open();
      const double u2 = ref.next_uniform();
      const auto [c, sn] = mhar::box_muller(u1, u2);
      want[static_cast<size_t>(2 * p)] = c;
      if (2 * p + 1 < n) want[static_cast<size_t>(2 * p + 1)] = sn;
    }
    for (int i = 0; i < n; ++i) {
      CAPTURE(n);
      CAPTURE(i);
      CHECK(h(i, 0) == want[static_cast<size_t>(i)]);
    }
  }
}

TEST_CASE("matrix fill stays close to scalar Box-Muller at vectorized sizes") {
  // Large batches may take a SIMD transcendental path whose results are
  // correct to a few ulp, not bit-identical.
  const int n = 64;
  mhar::WalkRng rng(1234, 2);
  Matrix h(n, 2);
  mhar::fill_standard_normal_matrix(rng, h);
  for (int k = 0; k < 2; ++k) {
    mhar::RngStream ref(1234, static_cast<uint64_t>(k));
    for (int p = 0; p < n / 2; ++p) {
      const double u1 = ref.next_uniform_open();
      const double u2 = ref.next_uniform();
      const auto [c, sn] = mhar::box_muller(u1, u2);
      CHECK(h(2 * p, k) == doctest::Approx(c).epsilon(1e-12));
      CHECK(h(2 * p + 1, k) == doctest::Approx(sn).epsilon(1e-12));
    }
  }
}

TEST_CASE("walk columns advance independently") {
  mhar::WalkRng a(42, 4);
  mhar::WalkRng b(42, 4);
  // burn only column 2 of a; every other column stays aligned with b
  Vector sink(6);
  mhar::fill_standard_normal(a.column(2), sink);
  for (const int k : {0, 1, 3}) {
    CHECK(a.column(k).next_u64() == b.column(k).next_u64());
  }
  CHECK(a.column(2).next_u64() != b.column(2).next_u64());
  CHECK(a.theta().next_u64() == b.theta().next_u64());
}

TEST_CASE("walk rng validates the column count") {
  CHECK_THROWS_AS(mhar::WalkRng(1, 0), mhar::Error);
  CHECK_THROWS_AS(mhar::WalkRng(1, -3), mhar::Error);
}
