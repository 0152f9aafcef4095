#include "qdeform/deformed.hpp"
#include "qdeform/error.hpp"

#include <cmath>
#include <string>

namespace qdeform {

const char *to_string(Regime regime) {
  switch (regime) {
  case Regime::morse:
    return "morse";
  case Regime::regular:
    return "regular";
  case Regime::singular:
    return "singular";
  }
  return "unknown";
}

Regime PotentialParams::regime() const {
  if (q == 0.0)
    return Regime::morse;
  return q < 1.0 ? Regime::regular : Regime::singular;
}

void PotentialParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw DomainError("potential: alpha must be positive, got " +
                      std::to_string(alpha));
  if (!(q >= 0.0) || !std::isfinite(q))
    throw DomainError("potential: q must be non-negative, got " +
                      std::to_string(q));
  if (!(v2 > 0.0) || !(v1 > v2) || !std::isfinite(v1))
    throw DomainError("potential: requires v1 > v2 > 0, got v1=" +
                      std::to_string(v1) + " v2=" + std::to_string(v2));
}

// Both functions are evaluated with e^{|x|} factored out so that large
// arguments overflow only when the true result does.
double sinh_q(double x, double q) {
  if (x >= 0.0)
    return 0.5 * std::exp(x) * (1.0 - q * std::exp(-2.0 * x));
  return 0.5 * std::exp(-x) * (std::exp(2.0 * x) - q);
}

double cosh_q(double x, double q) {
  if (x >= 0.0)
    return 0.5 * std::exp(x) * (1.0 + q * std::exp(-2.0 * x));
  return 0.5 * std::exp(-x) * (std::exp(2.0 * x) + q);
}

double tanh_q(double x, double q) {
  double num, den;
  if (x >= 0.0) {
    const double e = std::exp(-2.0 * x);
    num = 1.0 - q * e;
    den = 1.0 + q * e;
  } else {
    const double e = std::exp(2.0 * x);
    num = e - q;
    den = e + q;
  }
  if (den == 0.0)
    throw DomainError("tanh_q: cosh_q vanishes at x=" + std::to_string(x));
  return num / den;
}

std::optional<double> singularity_radius(const PotentialParams &p) {
  if (p.q >= 1.0)
    return std::log(p.q) / (2.0 * p.alpha);
  return std::nullopt;
}

double shift_origin(const PotentialParams &p) {
  if (p.q == 0.0)
    return 0.0;
  return std::log(p.q) / (2.0 * p.alpha);
}

double potential_value(double r, const PotentialParams &p) {
  if (p.q == 0.0)
    return morse_value(r, p.v1, p.v2, p.alpha);
  if (r < 0.0)
    throw DomainError("potential_value: negative radius");
  // sinh_q(alpha r) = e^{alpha r}/2 (1 - q e^{-2 alpha r}); the bracket is
  // written with expm1 so that it stays accurate near r0.
  const double e1 = std::exp(-p.alpha * r);
  const double den = -std::expm1(std::log(p.q) - 2.0 * p.alpha * r);
  if (!(den > 0.0))
    throw DomainError("potential_value: r=" + std::to_string(r) +
                      " is not beyond the singularity r0=" +
                      std::to_string(shift_origin(p)));
  const double num =
      4.0 * p.v1 * e1 * e1 - 2.0 * p.v2 * e1 * (1.0 + p.q * e1 * e1);
  return num / (den * den);
}

double potential_at_offset(double x, const PotentialParams &p) {
  if (p.q == 0.0)
    return morse_value(x, p.v1, p.v2, p.alpha);
  if (!(x > 0.0))
    throw DomainError("potential_at_offset: offset must be positive");
  const double e1 = std::exp(-p.alpha * x);
  const double e2 = e1 * e1;
  const double den = -std::expm1(-2.0 * p.alpha * x);
  const double sq = std::sqrt(p.q);
  const double num = 4.0 * p.v1 * e2 / p.q - 2.0 * p.v2 * e1 / sq * (1.0 + e2);
  return num / (den * den);
}

double morse_value(double r, double v1, double v2, double alpha) {
  const double e1 = std::exp(-alpha * r);
  return 4.0 * v1 * e1 * e1 - 2.0 * v2 * e1;
}

std::pair<double, double> morse_from_physical(double depth, double r_eq,
                                              double alpha) {
  if (!(depth > 0.0))
    throw DomainError("morse_from_physical: depth must be positive");
  return {0.25 * depth * std::exp(2.0 * alpha * r_eq),
          depth * std::exp(alpha * r_eq)};
}

} // namespace qdeform
