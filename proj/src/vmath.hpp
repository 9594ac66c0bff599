#pragma once

// Batched elementary transcendentals for the sampler hot path. When glibc's
// vector math library is present the loops run 8 or 4 doubles at a time
// (<= 4 ulp, deterministic for a fixed build); otherwise scalar libm.

#include <cmath>
#include <cstddef>
#include <limits>

#if defined(__AVX512F__) || defined(__AVX2__)
#include <immintrin.h>
#endif

#if defined(MHAR_HAVE_LIBMVEC) && defined(__AVX512F__)
extern "C" {
__m512d _ZGVeN8v_sin(__m512d);
__m512d _ZGVeN8v_cos(__m512d);
__m512d _ZGVeN8v_log(__m512d);
}
#elif defined(MHAR_HAVE_LIBMVEC) && defined(__AVX2__)
extern "C" {
__m256d _ZGVdN4v_sin(__m256d);
__m256d _ZGVdN4v_cos(__m256d);
__m256d _ZGVdN4v_log(__m256d);
}
#endif

namespace mhar::detail {

// Single scalar sin/cos evaluation. Routed through sincos where available so
// every scalar call site resolves to the same libm entry point; compilers fuse
// adjacent sin/cos pairs into sincos inconsistently, and glibc's sincos can
// differ from standalone sin by an ulp for the same argument.
inline void sincos_scalar(double a, double* sn, double* cs) {
#if defined(__GLIBC__)
  ::sincos(a, sn, cs);
#else
  *sn = std::sin(a);
  *cs = std::cos(a);
#endif
}

inline void log_batch(const double* x, double* out, size_t count) {
  size_t i = 0;
#if defined(MHAR_HAVE_LIBMVEC) && defined(__AVX512F__)
  for (; i + 8 <= count; i += 8) {
    _mm512_storeu_pd(out + i, _ZGVeN8v_log(_mm512_loadu_pd(x + i)));
  }
#elif defined(MHAR_HAVE_LIBMVEC) && defined(__AVX2__)
  for (; i + 4 <= count; i += 4) {
    _mm256_storeu_pd(out + i, _ZGVdN4v_log(_mm256_loadu_pd(x + i)));
  }
#endif
  for (; i < count; ++i) out[i] = std::log(x[i]);
}

inline void sincos_batch(const double* ang, double* sn, double* cs, size_t count) {
  size_t i = 0;
#if defined(MHAR_HAVE_LIBMVEC) && defined(__AVX512F__)
  for (; i + 8 <= count; i += 8) {
    const __m512d a = _mm512_loadu_pd(ang + i);
    _mm512_storeu_pd(sn + i, _ZGVeN8v_sin(a));
    _mm512_storeu_pd(cs + i, _ZGVeN8v_cos(a));
  }
#elif defined(MHAR_HAVE_LIBMVEC) && defined(__AVX2__)
  for (; i + 4 <= count; i += 4) {
    const __m256d a = _mm256_loadu_pd(ang + i);
    _mm256_storeu_pd(sn + i, _ZGVdN4v_sin(a));
    _mm256_storeu_pd(cs + i, _ZGVdN4v_cos(a));
  }
#endif
  for (; i < count; ++i) sincos_scalar(ang[i], sn + i, cs + i);
}

// One walk's chord bounds from slack numerators and movement rates: the
// tightest quotient num/den over rows with den > eps (upper bound) and
// den < -eps (lower bound), plus whether each side saw a qualifying row.
// The wide paths divide every row and mask non-qualifying lanes out before
// the min/max, so quotients from masked lanes (possibly inf or NaN) are
// never read and the reductions stay NaN-free; qualifying quotients equal
// the scalar loop's bit for bit, making the result order-independent.
inline void chord_scan(const double* num, const double* den, std::ptrdiff_t count, double eps,
                       double* lower, double* upper, bool* has_pos, bool* has_neg) {
  const double inf = std::numeric_limits<double>::infinity();
  double lo = -inf;
  double hi = inf;
  bool pos = false, neg = false;
  std::ptrdiff_t i = 0;
#if defined(__AVX512F__)
  if (count >= 8) {
    const __m512d veps = _mm512_set1_pd(eps);
    const __m512d vneps = _mm512_set1_pd(-eps);
    __m512d vhi = _mm512_set1_pd(inf);
    __m512d vlo = _mm512_set1_pd(-inf);
    __mmask8 anyp = 0, anyn = 0;
    for (; i + 8 <= count; i += 8) {
      const __m512d d = _mm512_loadu_pd(den + i);
      const __m512d q = _mm512_div_pd(_mm512_loadu_pd(num + i), d);
      const __mmask8 mp = _mm512_cmp_pd_mask(d, veps, _CMP_GT_OQ);
      const __mmask8 mn = _mm512_cmp_pd_mask(d, vneps, _CMP_LT_OQ);
      vhi = _mm512_mask_min_pd(vhi, mp, vhi, q);
      vlo = _mm512_mask_max_pd(vlo, mn, vlo, q);
      anyp |= mp;
      anyn |= mn;
    }
    hi = _mm512_reduce_min_pd(vhi);
    lo = _mm512_reduce_max_pd(vlo);
    pos = anyp != 0;
    neg = anyn != 0;
  }
#elif defined(__AVX2__)
  if (count >= 4) {
    const __m256d veps = _mm256_set1_pd(eps);
    const __m256d vneps = _mm256_set1_pd(-eps);
    __m256d vhi = _mm256_set1_pd(inf);
    __m256d vlo = _mm256_set1_pd(-inf);
    __m256d anyp = _mm256_setzero_pd();
    __m256d anyn = _mm256_setzero_pd();
    for (; i + 4 <= count; i += 4) {
      const __m256d d = _mm256_loadu_pd(den + i);
      const __m256d q = _mm256_div_pd(_mm256_loadu_pd(num + i), d);
      const __m256d mp = _mm256_cmp_pd(d, veps, _CMP_GT_OQ);
      const __m256d mn = _mm256_cmp_pd(d, vneps, _CMP_LT_OQ);
      vhi = _mm256_blendv_pd(vhi, _mm256_min_pd(vhi, q), mp);
      vlo = _mm256_blendv_pd(vlo, _mm256_max_pd(vlo, q), mn);
      anyp = _mm256_or_pd(anyp, mp);
      anyn = _mm256_or_pd(anyn, mn);
    }
    alignas(32) double tmp[4];
    _mm256_store_pd(tmp, vhi);
    for (double v : tmp) hi = v < hi ? v : hi;
    _mm256_store_pd(tmp, vlo);
    for (double v : tmp) lo = v > lo ? v : lo;
    pos = _mm256_movemask_pd(anyp) != 0;
    neg = _mm256_movemask_pd(anyn) != 0;
  }
#endif
  for (; i < count; ++i) {
    const double d = den[i];
    if (d > eps) {
      const double q = num[i] / d;
      pos = true;
      if (q < hi) hi = q;
    } else if (d < -eps) {
      const double q = num[i] / d;
      neg = true;
      if (q > lo) lo = q;
    }
  }
  *lower = lo;
  *upper = hi;
  *has_pos = pos;
  *has_neg = neg;
}

}  // namespace mhar::detail
