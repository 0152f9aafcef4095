#pragma once
// Compensated power-series accumulation shared by the hypergeometric
// evaluators.

#include "qdeform/special.hpp"

#include <cmath>

namespace qdeform::sf::detail {

inline constexpr long kMaxTerms = 100000;
inline constexpr double kSeriesEps = 1e-16;
inline constexpr int kQuietTerms = 3;

//! Kahan-summed series with an external binary exponent. The running term and
//! partial sum are rescaled by 2^-600 together whenever they grow past 2^600.
struct SeriesSum {
  double sum = 0.0;
  double comp = 0.0;
  double term = 1.0;
  long exponent = 0;

  void add(double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }

  void renormalize() {
    constexpr double big = 0x1p600;
    if (std::fabs(sum) > big || std::fabs(term) > big) {
      sum = std::ldexp(sum, -600);
      comp = std::ldexp(comp, -600);
      term = std::ldexp(term, -600);
      exponent += 600;
    }
  }

  ScaledValue result() const {
    int e = 0;
    const double m = std::frexp(sum, &e);
    return {m, exponent + e};
  }
};

//! Non-positive integer test for series parameters.
inline bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

inline ScaledValue scale_by_exp(ScaledValue v, double log_factor) {
  // v * e^{log_factor}
  const double l2 = log_factor / std::log(2.0);
  const double whole = std::floor(l2);
  int e = 0;
  const double m = std::frexp(v.mantissa * std::exp2(l2 - whole), &e);
  return {m, v.exponent + static_cast<long>(whole) + e};
}

} // namespace qdeform::sf::detail
