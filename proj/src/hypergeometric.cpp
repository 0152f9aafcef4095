#include "qdeform/error.hpp"
#include "qdeform/special.hpp"
#include "series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

extern "C" {
#include <quadmath.h>
}

namespace qdeform::sf {

using detail::is_nonpositive_integer;
using detail::SeriesSum;

namespace {

using quad = __float128;

std::string describe(double a, double b, double c, double z) {
  return "a=" + std::to_string(a) + " b=" + std::to_string(b) +
         " c=" + std::to_string(c) + " z=" + std::to_string(z);
}

ScaledValue to_scaled(quad v) {
  int e = 0;
  const quad m = frexpq(v, &e);
  return {static_cast<double>(m), e};
}

// ---------------------------------------------------------------------------
// double-precision direct series, |z| <= 1/2 or terminating

ScaledValue direct_series(double a, double b, double c, double z) {
  long last = detail::kMaxTerms;
  bool terminating = false;
  if (is_nonpositive_integer(a)) {
    last = static_cast<long>(-a);
    terminating = true;
  }
  if (is_nonpositive_integer(b) && (!terminating || -b < last)) {
    last = static_cast<long>(-b);
    terminating = true;
  }
  SeriesSum s;
  s.add(1.0);
  int quiet = 0;
  const double grow_guard = std::max(-a, -b);
  for (long k = 0; k < last; ++k) {
    const double dk = static_cast<double>(k);
    if (c + dk == 0.0)
      throw PoleError("gauss_2f1: parameter pole, " + describe(a, b, c, z));
    const double ratio = (a + dk) * (b + dk) / ((c + dk) * (dk + 1.0)) * z;
    s.term *= ratio;
    s.add(s.term);
    s.renormalize();
    if (terminating)
      continue;
    if (std::fabs(s.term) < detail::kSeriesEps * std::fabs(s.sum))
      ++quiet;
    else
      quiet = 0;
    if (quiet >= detail::kQuietTerms && dk > grow_guard &&
        std::fabs(ratio) < 0.5 * (1.0 + std::fabs(z)))
      return s.result();
  }
  if (!terminating)
    throw ConvergenceError("gauss_2f1: series did not converge, " +
                           describe(a, b, c, z));
  return s.result();
}

// ---------------------------------------------------------------------------
// quad-precision pieces of the 1 - z connection formula

quad series_q(quad a, quad b, quad c, quad w) {
  quad sum = 1, term = 1;
  int quiet = 0;
  const quad grow_guard = fmaxq(-a, -b);
  for (long k = 0; k < 20000; ++k) {
    const quad dk = k;
    const quad ratio = (a + dk) * (b + dk) / ((c + dk) * (dk + 1)) * w;
    term *= ratio;
    sum += term;
    if (term == 0)
      return sum;
    if (fabsq(term) < static_cast<quad>(1e-32) * fabsq(sum))
      ++quiet;
    else
      quiet = 0;
    if (quiet >= detail::kQuietTerms && dk > grow_guard && fabsq(ratio) < static_cast<quad>(0.75))
      return sum;
  }
  throw ConvergenceError("gauss_2f1: connection series did not converge");
}

struct LogGamma {
  quad log_abs;
  int sign;
  bool pole;
};

LogGamma log_gamma_q(quad x) {
  if (x <= 0 && x == floorq(x))
    return {0, 0, true};
  int sign = 1;
  if (x < 0) {
    const quad fl = floorq(x);
    // Gamma alternates sign between consecutive negative integers
    if (fmodq(fabsq(fl), 2) == 1)
      sign = -1;
  }
  return {lgammaq(x), sign, false};
}

// Value m * 2^e; keeps w^s and the Gamma ratios finite when either
// overflows the quad range on its own.
struct QScaled {
  quad m = 0;
  long e = 0;
};

QScaled from_log(int sign, quad log_abs, quad factor) {
  const quad k = floorq(log_abs / M_LN2q);
  return {sign * expq(log_abs - k * M_LN2q) * factor, static_cast<long>(k)};
}

QScaled combine(QScaled x, quad fx, QScaled y, quad fy) {
  if (x.m == 0 || fx == 0)
    return {y.m * fy, y.e};
  if (y.m == 0 || fy == 0)
    return {x.m * fx, x.e};
  const long e = std::max(x.e, y.e);
  return {ldexpq(x.m * fx, static_cast<int>(std::max(x.e - e, -100000L))) +
              ldexpq(y.m * fy, static_cast<int>(std::max(y.e - e, -100000L))),
          e};
}

ScaledValue to_scaled(QScaled v) {
  int e = 0;
  const quad m = frexpq(v.m, &e);
  return {static_cast<double>(m), v.e + e};
}

// 2F1(a,b;c;1-w) = Gamma(c) [ G(s)/(G(c-a)G(c-b)) F(a,b;1-s;w)
//                           + w^s G(-s)/(G(a)G(b)) F(c-a,c-b;1+s;w) ],
// s = c - a - b not an integer.
QScaled connection_generic(quad a, quad b, quad c, quad w) {
  const quad s = c - a - b;
  const LogGamma gc = log_gamma_q(c);
  const LogGamma gs = log_gamma_q(s);
  const LogGamma gms = log_gamma_q(-s);
  const LogGamma gca = log_gamma_q(c - a);
  const LogGamma gcb = log_gamma_q(c - b);
  const LogGamma ga = log_gamma_q(a);
  const LogGamma gb = log_gamma_q(b);

  QScaled first, second;
  if (!gca.pole && !gcb.pole) {
    const quad lg = gc.log_abs + gs.log_abs - gca.log_abs - gcb.log_abs;
    const int sg = gc.sign * gs.sign * gca.sign * gcb.sign;
    first = from_log(sg, lg, series_q(a, b, 1 - s, w));
  }
  if (!ga.pole && !gb.pole) {
    const quad lg =
        gc.log_abs + gms.log_abs - ga.log_abs - gb.log_abs + s * logq(w);
    const int sg = gc.sign * gms.sign * ga.sign * gb.sign;
    second = from_log(sg, lg, series_q(c - a, c - b, 1 + s, w));
  }
  return combine(first, 1, second, 1);
}

QScaled connection(double a, double b, double c, quad w) {
  const quad qa = a, qb = b, qc = c;
  const quad s = qc - qa - qb;
  const quad m = rintq(s);
  const quad d = s - m;
  const quad h = static_cast<quad>(1e-9);
  if (fabsq(d) >= h)
    return connection_generic(qa, qb, qc, w);
  // Integer c - a - b: both Gamma(s) and Gamma(-s) have poles that cancel.
  // Evaluate at s = m +- h and interpolate linearly in c; the O(h^2) error is
  // far below double resolution.
  const quad c1 = qc - d + h;
  const quad c2 = qc - d - h;
  const quad t = (qc - c1) / (c2 - c1);
  return combine(connection_generic(qa, qb, c1, w), 1 - t,
                 connection_generic(qa, qb, c2, w), t);
}

quad gauss_sum_at_one(double a, double b, double c) {
  const quad qa = a, qb = b, qc = c;
  const LogGamma gc = log_gamma_q(qc);
  const LogGamma gs = log_gamma_q(qc - qa - qb);
  const LogGamma gca = log_gamma_q(qc - qa);
  const LogGamma gcb = log_gamma_q(qc - qb);
  if (gca.pole || gcb.pole)
    return 0;
  return gc.sign * gs.sign * gca.sign * gcb.sign *
         expq(gc.log_abs + gs.log_abs - gca.log_abs - gcb.log_abs);
}

} // namespace

ScaledValue gauss_2f1_scaled(double a, double b, double c, double z) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) ||
      !std::isfinite(z))
    throw DomainError("gauss_2f1: non-finite argument, " + describe(a, b, c, z));
  if (z > 1.0)
    throw DomainError("gauss_2f1: z > 1 is outside the supported range, " +
                      describe(a, b, c, z));
  if (z == 0.0)
    return {0.5, 1};

  const bool terminates = is_nonpositive_integer(a) || is_nonpositive_integer(b);
  if (terminates)
    return direct_series(a, b, c, z); // finite sum, valid for any z

  if (is_nonpositive_integer(c))
    throw PoleError("gauss_2f1: parameter pole, " + describe(a, b, c, z));

  if (z == 1.0) {
    if (!(c - a - b > 0.0))
      throw DomainError("gauss_2f1: series diverges at z=1, " +
                        describe(a, b, c, z));
    return to_scaled(gauss_sum_at_one(a, b, c));
  }
  if (std::fabs(z) <= 0.5)
    return direct_series(a, b, c, z);
  if (z < -0.5) {
    // Pfaff: (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)), argument in (1/3, 1)
    const ScaledValue inner = gauss_2f1_scaled(a, c - b, c, z / (z - 1.0));
    return detail::scale_by_exp(inner, -a * std::log1p(-z));
  }
  return to_scaled(connection(a, b, c, 1 - static_cast<quad>(z)));
}

ScaledValue gauss_2f1_complement_scaled(double a, double b, double c,
                                        double w) {
  if (!(w > 0.0) || !(w < 0.5))
    return gauss_2f1_scaled(a, b, c, 1.0 - w);
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b))
    return direct_series(a, b, c, 1.0 - w);
  if (is_nonpositive_integer(c))
    throw PoleError("gauss_2f1: parameter pole, " + describe(a, b, c, 1.0 - w));
  return to_scaled(connection(a, b, c, static_cast<quad>(w)));
}

double gauss_2f1(double a, double b, double c, double z) {
  return gauss_2f1_scaled(a, b, c, z).value();
}

} // namespace qdeform::sf
