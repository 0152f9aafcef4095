#pragma once
// Deformed hyperbolic functions and the deformed generalized Poschl-Teller
// potential
//
//   V_q(r) = (V1 - V2 cosh_q(alpha r)) / sinh_q^2(alpha r),
//
// with sinh_q(x) = (e^x - q e^-x)/2 and cosh_q(x) = (e^x + q e^-x)/2.
// For q >= 1 the potential is singular at r0 = ln(q)/(2 alpha); q = 0 is the
// radial Morse potential.

#include <optional>
#include <utility>

namespace qdeform {

enum class Regime {
  morse,    //!< q = 0
  regular,  //!< 0 < q < 1, potential finite on [0, inf)
  singular  //!< q >= 1, motion confined to r > r0
};

const char *to_string(Regime regime);

struct PotentialParams {
  double v1 = 0.0;
  double v2 = 0.0;
  double alpha = 1.0;
  double q = 1.0;

  Regime regime() const;
  //! Throws DomainError unless v1 > v2 > 0, alpha > 0 and q >= 0.
  void validate() const;
};

double sinh_q(double x, double q);
double cosh_q(double x, double q);
//! Throws DomainError where cosh_q(x) vanishes (only possible for q < 0).
double tanh_q(double x, double q);

//! r0 = ln(q)/(2 alpha) for q >= 1; empty for 0 <= q < 1.
std::optional<double> singularity_radius(const PotentialParams &p);

//! Offset of the coordinate origin used by the shifted representation,
//! ln(q)/(2 alpha) for every q > 0 (negative when q < 1). Zero for Morse.
double shift_origin(const PotentialParams &p);

//! V_q(r). Throws DomainError for r <= r0 (q >= 1) or r < 0.
double potential_value(double r, const PotentialParams &p);

//! V_q evaluated at r = shift_origin(p) + x. Accurate for x -> 0+ where the
//! q >= 1 potential diverges like 1/x^2; x must be positive. For Morse the
//! offset is r itself.
double potential_at_offset(double x, const PotentialParams &p);

//! 4 V1 e^{-2 alpha r} - 2 V2 e^{-alpha r}
double morse_value(double r, double v1, double v2, double alpha);

//! (V1, V2) from the well depth De and equilibrium distance re.
std::pair<double, double> morse_from_physical(double depth, double r_eq,
                                              double alpha);

} // namespace qdeform
