#include "qdeform/special.hpp"
#include "qdeform/error.hpp"
#include "series.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace qdeform::sf {

using detail::is_nonpositive_integer;
using detail::SeriesSum;

double ScaledValue::value() const {
  return std::ldexp(mantissa, static_cast<int>(std::clamp(
                                  exponent, -100000L, 100000L)));
}

double ln_gamma(double x) {
  if (!(x > 0.0))
    throw DomainError("ln_gamma: argument must be positive, got " +
                      std::to_string(x));
  if (x < 0.5) {
    // reflection keeps the Lanczos sum away from its poles
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) -
           ln_gamma(1.0 - x);
  }
  static constexpr std::array<double, 9> coeff = {
      0.99999999999980993,     676.5203681218851,
      -1259.1392167224028,     771.32342877765313,
      -176.61502916214059,     12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6,
      1.5056327351493116e-7};
  constexpr double g = 7.0;
  const double xm = x - 1.0;
  double acc = coeff[0];
  for (std::size_t i = 1; i < coeff.size(); ++i)
    acc += coeff[i] / (xm + static_cast<double>(i));
  const double t = xm + g + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (xm + 0.5) * std::log(t) -
         t + std::log(acc);
}

namespace {

ScaledValue kummer_series(double a, double c, double z) {
  const bool terminating = is_nonpositive_integer(a);
  const long last = terminating ? static_cast<long>(-a) : detail::kMaxTerms;
  SeriesSum s;
  s.add(1.0);
  int quiet = 0;
  for (long k = 0; k < last; ++k) {
    const double ck = c + static_cast<double>(k);
    if (ck == 0.0)
      throw PoleError("kummer_1f1: c=" + std::to_string(c) +
                      " is a non-positive integer");
    const double ratio = (a + static_cast<double>(k)) * z /
                         (ck * static_cast<double>(k + 1));
    s.term *= ratio;
    s.add(s.term);
    s.renormalize();
    if (terminating)
      continue;
    if (std::fabs(s.term) < detail::kSeriesEps * std::fabs(s.sum))
      ++quiet;
    else
      quiet = 0;
    // the terms must also have stopped growing
    if (quiet >= detail::kQuietTerms && static_cast<double>(k) > -a &&
        std::fabs(ratio) < 0.5)
      return s.result();
  }
  if (!terminating)
    throw ConvergenceError("kummer_1f1: series did not converge for a=" +
                           std::to_string(a) + " c=" + std::to_string(c) +
                           " z=" + std::to_string(z));
  return s.result();
}

} // namespace

ScaledValue kummer_1f1_scaled(double a, double c, double z) {
  if (z == 0.0)
    return {0.5, 1};
  if (is_nonpositive_integer(c) &&
      !(is_nonpositive_integer(a) && a > c))
    throw PoleError("kummer_1f1: c=" + std::to_string(c) +
                    " is a non-positive integer");
  if (z < -5.0 && !is_nonpositive_integer(a)) {
    // Kummer's transformation avoids the alternating series
    return detail::scale_by_exp(kummer_series(c - a, c, -z), z);
  }
  return kummer_series(a, c, z);
}

double kummer_1f1(double a, double c, double z) {
  return kummer_1f1_scaled(a, c, z).value();
}

double jacobi_p(int n, double alpha, double beta, double x) {
  if (n < 0)
    throw DomainError("jacobi_p: degree must be non-negative");
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw DomainError("jacobi_p: requires alpha, beta > -1");
  if (n == 0)
    return 1.0;
  const double dn = static_cast<double>(n);
  // prefactor in log space; Gamma(n + alpha + 1) overflows long before the
  // ratio does
  const double log_pref =
      ln_gamma(dn + alpha + 1.0) - ln_gamma(dn + 1.0) - ln_gamma(alpha + 1.0);
  return std::exp(log_pref) *
         gauss_2f1(-dn, dn + alpha + beta + 1.0, alpha + 1.0, 0.5 * (1.0 - x));
}

double confluent_limit_residual(double alpha, double gamma, double z,
                                double beta) {
  if (!(std::fabs(z / beta) < 1.0))
    throw DomainError("confluent_limit_residual: requires |z/beta| < 1");
  return std::fabs(gauss_2f1(alpha, beta, gamma, z / beta) -
                   kummer_1f1(alpha, gamma, z));
}

} // namespace qdeform::sf
