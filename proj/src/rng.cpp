#include "mhar/rng.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mhar/errors.hpp"
#include "vmath.hpp"

namespace mhar {
namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr uint64_t kStreamSalt = 0x6A09E667F3BCC909ULL;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

uint64_t mix64(uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Shared Box-Muller body for both fill paths, so a z=1 engine run and a
// scalar-walk caller see bit-identical normals for the same stream.
struct PairBuffers {
  std::vector<double> u1, u2, radius, angle, sn, cs;
  std::vector<uint64_t> odd_state, even_state;
  void resize(size_t pairs) {
    u1.resize(pairs);
    u2.resize(pairs);
    radius.resize(pairs);
    angle.resize(pairs);
    sn.resize(pairs);
    cs.resize(pairs);
    odd_state.resize(pairs);
    even_state.resize(pairs);
  }
};

PairBuffers& scratch() {
  thread_local PairBuffers buffers;
  return buffers;
}

// radius[i] = sqrt(-2 ln u1[i]); (cs, sn)[i] = (cos, sin)(2 pi u2[i])
void transform_pairs(PairBuffers& b, size_t pairs) {
  detail::log_batch(b.u1.data(), b.radius.data(), pairs);
  size_t i = 0;
#if defined(__AVX512F__)
  // vsqrtpd is correctly rounded like std::sqrt, so the wide loop matches the
  // scalar tail bit for bit.
  const __m512d minus_two = _mm512_set1_pd(-2.0);
  const __m512d two_pi = _mm512_set1_pd(kTwoPi);
  for (; i + 8 <= pairs; i += 8) {
    const __m512d ln = _mm512_loadu_pd(b.radius.data() + i);
    _mm512_storeu_pd(b.radius.data() + i, _mm512_sqrt_pd(_mm512_mul_pd(minus_two, ln)));
    const __m512d u2 = _mm512_loadu_pd(b.u2.data() + i);
    _mm512_storeu_pd(b.angle.data() + i, _mm512_mul_pd(two_pi, u2));
  }
#endif
  for (; i < pairs; ++i) {
    b.radius[i] = std::sqrt(-2.0 * b.radius[i]);
    b.angle[i] = kTwoPi * b.u2[i];
  }
  detail::sincos_batch(b.angle.data(), b.sn.data(), b.cs.data(), pairs);
}

#if defined(__AVX512DQ__)
// 8-lane copy of mix64, matching it bit for bit (mullo wraps like uint64_t).
__m512i mix64x8(__m512i x) {
  const __m512i c1 = _mm512_set1_epi64(static_cast<long long>(0xBF58476D1CE4E5B9ULL));
  const __m512i c2 = _mm512_set1_epi64(static_cast<long long>(0x94D049BB133111EBULL));
  x = _mm512_xor_si512(x, _mm512_srli_epi64(x, 30));
  x = _mm512_mullo_epi64(x, c1);
  x = _mm512_xor_si512(x, _mm512_srli_epi64(x, 27));
  x = _mm512_mullo_epi64(x, c2);
  return _mm512_xor_si512(x, _mm512_srli_epi64(x, 31));
}

// out[i] = uniform from counter state st[i]: the open-interval draw when
// plus_one (next_uniform_open), the half-open draw otherwise (next_uniform).
// Mixed values are below 2^53 after the shift, so the conversion is exact.
void states_to_uniforms(const uint64_t* st, double* out, size_t count, bool plus_one) {
  const __m512i one = _mm512_set1_epi64(1);
  const __m512d scale = _mm512_set1_pd(0x1.0p-53);
  size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    __m512i x = _mm512_srli_epi64(mix64x8(_mm512_loadu_si512(st + i)), 11);
    if (plus_one) x = _mm512_add_epi64(x, one);
    _mm512_storeu_pd(out + i, _mm512_mul_pd(_mm512_cvtepu64_pd(x), scale));
  }
  for (; i < count; ++i) {
    const uint64_t x = (mix64(st[i]) >> 11) + (plus_one ? 1 : 0);
    out[i] = static_cast<double>(x) * 0x1.0p-53;
  }
}
#endif

}  // namespace

RngStream::RngStream(uint64_t seed, uint64_t stream)
    : state_(mix64(seed + kGolden) ^ mix64(stream + kStreamSalt)) {}

uint64_t RngStream::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double RngStream::next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RngStream::next_uniform_open() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

std::pair<double, double> box_muller(double u1, double u2) {
  if (!(u1 > 0.0 && u1 <= 1.0) || !(u2 >= 0.0 && u2 < 1.0)) {
    raise(ErrorCode::invalid_argument, "box_muller: u1 must lie in (0,1], u2 in [0,1)");
  }
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = kTwoPi * u2;
  double sn = 0.0, cs = 0.0;
  detail::sincos_scalar(angle, &sn, &cs);
  return {radius * cs, radius * sn};
}

WalkRng::WalkRng(uint64_t seed, int z) : theta_(seed, kThetaStreamId) {
  if (z < 1) {
    raise(ErrorCode::invalid_argument, "WalkRng: z must be >= 1, got " + std::to_string(z));
  }
  columns_.reserve(static_cast<size_t>(z));
  for (int k = 0; k < z; ++k) {
    columns_.emplace_back(seed, static_cast<uint64_t>(k));
  }
}

void fill_standard_normal(RngStream& s, Eigen::Ref<Vector> out) {
  const size_t n = static_cast<size_t>(out.size());
  const size_t pairs = (n + 1) / 2;
  if (pairs == 0) return;
  PairBuffers& b = scratch();
  b.resize(pairs);
  for (size_t p = 0; p < pairs; ++p) {
    b.u1[p] = s.next_uniform_open();
    b.u2[p] = s.next_uniform();
  }
  transform_pairs(b, pairs);
  for (size_t p = 0; p < pairs; ++p) {
    out[static_cast<Eigen::Index>(2 * p)] = b.radius[p] * b.cs[p];
    if (2 * p + 1 < n) out[static_cast<Eigen::Index>(2 * p + 1)] = b.radius[p] * b.sn[p];
  }
}

void fill_standard_normal_matrix(WalkRng& rng, Eigen::Ref<Matrix> out) {
  const size_t n = static_cast<size_t>(out.rows());
  const size_t z = static_cast<size_t>(out.cols());
  if (z != static_cast<size_t>(rng.width())) {
    raise(ErrorCode::dimension_mismatch, "fill_standard_normal_matrix: matrix has " +
                                             std::to_string(z) + " columns, rng has " +
                                             std::to_string(rng.width()) + " streams");
  }
  const size_t pairs_per_col = (n + 1) / 2;
  const size_t pairs = pairs_per_col * z;
  if (pairs == 0) return;
  PairBuffers& b = scratch();
  b.resize(pairs);
#if defined(__AVX512DQ__)
  // Column streams are counters, so their next 2*pairs_per_col states are
  // known up front: record them, jump each stream past its draws, and mix
  // states to uniforms eight at a time.
  for (size_t k = 0; k < z; ++k) {
    RngStream& s = rng.column(static_cast<int>(k));
    uint64_t st = s.state_;
    const size_t base = k * pairs_per_col;
    for (size_t p = 0; p < pairs_per_col; ++p) {
      st += kGolden;
      b.odd_state[base + p] = st;
      st += kGolden;
      b.even_state[base + p] = st;
    }
    s.state_ = st;
  }
  states_to_uniforms(b.odd_state.data(), b.u1.data(), pairs, true);
  states_to_uniforms(b.even_state.data(), b.u2.data(), pairs, false);
#else
  for (size_t k = 0; k < z; ++k) {
    RngStream& s = rng.column(static_cast<int>(k));
    double* u1 = b.u1.data() + k * pairs_per_col;
    double* u2 = b.u2.data() + k * pairs_per_col;
    for (size_t p = 0; p < pairs_per_col; ++p) {
      u1[p] = s.next_uniform_open();
      u2[p] = s.next_uniform();
    }
  }
#endif
  transform_pairs(b, pairs);
  for (size_t k = 0; k < z; ++k) {
    const size_t base = k * pairs_per_col;
    for (size_t p = 0; p < pairs_per_col; ++p) {
      out(static_cast<Eigen::Index>(2 * p), static_cast<Eigen::Index>(k)) =
          b.radius[base + p] * b.cs[base + p];
      if (2 * p + 1 < n) {
        out(static_cast<Eigen::Index>(2 * p + 1), static_cast<Eigen::Index>(k)) =
            b.radius[base + p] * b.sn[base + p];
      }
    }
  }
}

}  // namespace mhar
