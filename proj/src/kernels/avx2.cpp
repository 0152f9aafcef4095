// AVX2/FMA kernels, compiled with -mavx2 -mfma -ffp-contract=off. Only
// reached through the dispatcher after a CPU feature check.

#include "qdeform/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace qdeform::kernels {

namespace {

inline __m256d vabs(__m256d x) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
}

void numerov_sweep(const NumerovTables &tab, const NumerovLanes &in,
                   NumerovResult &out) {
  const std::size_t n = tab.n;
  const __m256d p = _mm256_loadu_pd(in.p);
  const __m256d et = _mm256_sub_pd(_mm256_setzero_pd(),
                                   _mm256_loadu_pd(in.e_tilde));
  const __m256d h2 = _mm256_set1_pd(tab.h2_12);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d ten = _mm256_set1_pd(10.0);
  const __m256d big = _mm256_set1_pd(1e100);
  const __m256d shrink = _mm256_set1_pd(1e-100);
  const __m256d zero = _mm256_setzero_pd();

  auto f_at = [&](std::size_t i) {
    const __m256d k = _mm256_fmadd_pd(
        p, _mm256_set1_pd(tab.a[i]),
        _mm256_fmadd_pd(et, _mm256_set1_pd(tab.b[i]),
                        _mm256_set1_pd(tab.s[i])));
    return _mm256_mul_pd(k, h2);
  };

  __m256d w_pp = zero, f_pp = zero;
  __m256d w_prev = _mm256_loadu_pd(in.w0);
  __m256d w_cur = _mm256_loadu_pd(in.w1);
  __m256d f_prev = f_at(0), f_cur = f_at(1);
  __m256d nodes = _mm256_and_pd(
      _mm256_cmp_pd(_mm256_mul_pd(w_prev, w_cur), zero, _CMP_LT_OQ), one);

  for (std::size_t i = 1; i + 1 < n; ++i) {
    const __m256d f_next = f_at(i + 1);
    const __m256d c = _mm256_fmadd_pd(ten, f_cur, two);
    const __m256d t = _mm256_mul_pd(_mm256_sub_pd(one, f_prev), w_prev);
    __m256d w_next = _mm256_div_pd(_mm256_fmsub_pd(c, w_cur, t),
                                   _mm256_sub_pd(one, f_next));
    if (i + 2 < n) {
      const __m256d flip = _mm256_cmp_pd(_mm256_mul_pd(w_next, w_cur), zero,
                                         _CMP_LT_OQ);
      nodes = _mm256_add_pd(nodes, _mm256_and_pd(flip, one));
    }
    const __m256d over = _mm256_cmp_pd(vabs(w_next), big, _CMP_GT_OQ);
    if (_mm256_movemask_pd(over)) {
      const __m256d scale = _mm256_blendv_pd(one, shrink, over);
      w_next = _mm256_mul_pd(w_next, scale);
      w_cur = _mm256_mul_pd(w_cur, scale);
      w_prev = _mm256_mul_pd(w_prev, scale);
    }
    w_pp = w_prev;
    f_pp = f_prev;
    w_prev = w_cur;
    f_prev = f_cur;
    w_cur = w_next;
    f_cur = f_next;
  }

  const __m256d dw = _mm256_sub_pd(
      _mm256_mul_pd(_mm256_sub_pd(one, _mm256_mul_pd(two, f_cur)), w_cur),
      _mm256_mul_pd(_mm256_sub_pd(one, _mm256_mul_pd(two, f_pp)), w_pp));
  _mm256_storeu_pd(out.w, w_prev);
  _mm256_storeu_pd(out.dw, dw);
  alignas(32) double counts[kLanes];
  _mm256_store_pd(counts, nodes);
  for (int l = 0; l < kLanes; ++l)
    out.nodes[l] = static_cast<int>(counts[l]);
}

double weighted_sum_squares(const double *weight, const double *f,
                            const double *g, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d f0 = _mm256_loadu_pd(f + i), f1 = _mm256_loadu_pd(f + i + 4);
    const __m256d g0 = _mm256_loadu_pd(g + i), g1 = _mm256_loadu_pd(g + i + 4);
    const __m256d s0 = _mm256_fmadd_pd(f0, f0, _mm256_mul_pd(g0, g0));
    const __m256d s1 = _mm256_fmadd_pd(f1, f1, _mm256_mul_pd(g1, g1));
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(weight + i), s0, acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(weight + i + 4), s1, acc1);
  }
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i)
    sum += weight[i] * (f[i] * f[i] + g[i] * g[i]);
  return sum;
}

double residual_max(const double *u, const double *k, std::size_t n,
                    double inv_h2, int stencil) {
  __m256d worst = _mm256_setzero_pd();
  double tail = 0.0;
  if (stencil == 5) {
    const double c = inv_h2 / 12.0;
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d v16 = _mm256_set1_pd(16.0);
    const __m256d v30 = _mm256_set1_pd(30.0);
    std::size_t i = 2;
    for (; i + 2 + 4 <= n; i += 4) {
      const __m256d um2 = _mm256_loadu_pd(u + i - 2);
      const __m256d um1 = _mm256_loadu_pd(u + i - 1);
      const __m256d u0 = _mm256_loadu_pd(u + i);
      const __m256d up1 = _mm256_loadu_pd(u + i + 1);
      const __m256d up2 = _mm256_loadu_pd(u + i + 2);
      const __m256d d2 = _mm256_mul_pd(
          _mm256_sub_pd(
              _mm256_sub_pd(_mm256_mul_pd(v16, _mm256_add_pd(um1, up1)),
                            _mm256_add_pd(um2, up2)),
              _mm256_mul_pd(v30, u0)),
          vc);
      const __m256d r =
          _mm256_sub_pd(d2, _mm256_mul_pd(_mm256_loadu_pd(k + i), u0));
      worst = _mm256_max_pd(worst, vabs(r));
    }
    for (; i + 2 < n; ++i) {
      const double d2 =
          ((16.0 * (u[i - 1] + u[i + 1]) - (u[i - 2] + u[i + 2])) -
           30.0 * u[i]) *
          c;
      tail = std::max(tail, std::fabs(d2 - k[i] * u[i]));
    }
  } else {
    const __m256d vh = _mm256_set1_pd(inv_h2);
    const __m256d v2 = _mm256_set1_pd(2.0);
    std::size_t i = 1;
    for (; i + 1 + 4 <= n; i += 4) {
      const __m256d um1 = _mm256_loadu_pd(u + i - 1);
      const __m256d u0 = _mm256_loadu_pd(u + i);
      const __m256d up1 = _mm256_loadu_pd(u + i + 1);
      const __m256d d2 = _mm256_mul_pd(
          _mm256_sub_pd(_mm256_add_pd(um1, up1), _mm256_mul_pd(v2, u0)), vh);
      const __m256d r =
          _mm256_sub_pd(d2, _mm256_mul_pd(_mm256_loadu_pd(k + i), u0));
      worst = _mm256_max_pd(worst, vabs(r));
    }
    for (; i + 1 < n; ++i) {
      const double d2 = ((u[i - 1] + u[i + 1]) - 2.0 * u[i]) * inv_h2;
      tail = std::max(tail, std::fabs(d2 - k[i] * u[i]));
    }
  }
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, worst);
  return std::max({tail, lanes[0], lanes[1], lanes[2], lanes[3]});
}

} // namespace

namespace detail {
const KernelTable avx2_table{numerov_sweep, weighted_sum_squares,
                             residual_max};
} // namespace detail

} // namespace qdeform::kernels
