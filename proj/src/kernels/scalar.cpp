// Reference kernels. Built with -ffp-contract=off; every fused operation of
// the vector variant appears here as an explicit std::fma.

#include "qdeform/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace qdeform::kernels {

namespace {

constexpr double kBig = 1e100;
constexpr double kShrink = 1e-100;

void numerov_sweep(const NumerovTables &tab, const NumerovLanes &in,
                   NumerovResult &out) {
  const std::size_t n = tab.n;
  for (int l = 0; l < kLanes; ++l) {
    const double p = in.p[l];
    const double et = -in.e_tilde[l];
    auto f_at = [&](std::size_t i) {
      return std::fma(p, tab.a[i], std::fma(et, tab.b[i], tab.s[i])) *
             tab.h2_12;
    };
    double w_pp = 0.0, f_pp = 0.0;
    double w_prev = in.w0[l], w_cur = in.w1[l];
    double f_prev = f_at(0), f_cur = f_at(1);
    int nodes = (w_prev * w_cur < 0.0) ? 1 : 0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double f_next = f_at(i + 1);
      const double c = std::fma(10.0, f_cur, 2.0);
      const double t = (1.0 - f_prev) * w_prev;
      double w_next = std::fma(c, w_cur, -t) / (1.0 - f_next);
      if (i + 2 < n && w_next * w_cur < 0.0)
        ++nodes;
      if (std::fabs(w_next) > kBig) {
        w_next *= kShrink;
        w_cur *= kShrink;
        w_prev *= kShrink;
      }
      w_pp = w_prev;
      f_pp = f_prev;
      w_prev = w_cur;
      f_prev = f_cur;
      w_cur = w_next;
      f_cur = f_next;
    }
    out.w[l] = w_prev;
    out.dw[l] = (1.0 - 2.0 * f_cur) * w_cur - (1.0 - 2.0 * f_pp) * w_pp;
    out.nodes[l] = nodes;
  }
}

double weighted_sum_squares(const double *weight, const double *f,
                            const double *g, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    sum += weight[i] * (f[i] * f[i] + g[i] * g[i]);
  return sum;
}

double residual_max(const double *u, const double *k, std::size_t n,
                    double inv_h2, int stencil) {
  double worst = 0.0;
  if (stencil == 5) {
    const double c = inv_h2 / 12.0;
    for (std::size_t i = 2; i + 2 < n; ++i) {
      const double d2 =
          ((16.0 * (u[i - 1] + u[i + 1]) - (u[i - 2] + u[i + 2])) -
           30.0 * u[i]) *
          c;
      worst = std::max(worst, std::fabs(d2 - k[i] * u[i]));
    }
    return worst;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double d2 = ((u[i - 1] + u[i + 1]) - 2.0 * u[i]) * inv_h2;
    worst = std::max(worst, std::fabs(d2 - k[i] * u[i]));
  }
  return worst;
}

} // namespace

namespace detail {
const KernelTable scalar_table{numerov_sweep, weighted_sum_squares,
                               residual_max};
} // namespace detail

} // namespace qdeform::kernels
