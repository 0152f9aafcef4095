#pragma once
// Reduction of the s-wave Dirac problem under exact spin symmetry
// (Delta(r) = V - S = C) to the Schrodinger-like equation
//
//   -F'' + (M + E - C) Sigma(r) F = E~ F,   E~ = E^2 - M^2 + C (M - E),
//
// and the E-dependent exponents/hypergeometric parameters of its solutions.
// Every quantity is recomputed from the trial energy E; nothing is cached.

#include "qdeform/deformed.hpp"

namespace qdeform {

struct DiracConstants {
  double m = 1.0;      //!< mass M, the energy unit
  double c_spin = 0.0; //!< spin-symmetry constant C

  //! Throws NonBindingError unless M > 0 and C < 2M.
  void validate() const;
};

struct EnergyWindow {
  double lo; //!< C - M
  double hi; //!< M
};

struct Strengths {
  double v1; //!< (M + E - C) V1
  double v2; //!< (M + E - C) V2
};

struct ShapeParams {
  double lambda; //!< exponent at the inner boundary
  double eta;    //!< sqrt(-E~)/alpha, decay exponent
};

struct HypergeometricParams {
  double a;
  double b;
  double c;
};

struct MorseLimitParams {
  double lambda_asymptotic; //!< 1/4 (1 - V2~/(alpha sqrt V1~) + 2 sqrt V1~/(alpha sqrt q))
  double a_limit;           //!< 1/2 + eta - V2~/(2 alpha sqrt V1~)
  double b_growth;          //!< sqrt V1~/(alpha sqrt q)
};

struct EffectiveParams {
  double e_tilde;
  double v1_tilde;
  double v2_tilde;
  double lambda;
  double eta;
  double a;
  double b;
  double c;
};

//! E~ = E^2 - M^2 + C(M - E), evaluated in the factored form (E - M)(E + M - C).
double effective_eigenvalue(double energy, const DiracConstants &dc);

//! (M + E - C) * (V1, V2). Throws NonBindingError when M + E - C <= 0.
Strengths effective_strengths(double energy, const DiracConstants &dc,
                              const PotentialParams &p);

//! lambda = 1/4 (1 + sqrt(1 + 4/alpha^2 (V1~/q - V2~/sqrt q))), eta = sqrt(-E~)/alpha.
//! Valid for every q > 0. Throws DomainError on a negative discriminant and
//! NonBindingError when E~ >= 0.
ShapeParams shape_params(double energy, const DiracConstants &dc,
                         const PotentialParams &p);

//! sqrt(1 + 4/(alpha^2 q) (V1~ + V2~ sqrt q)), the root shared by the q >= 1
//! quantization condition and the (a, b) pair.
double outer_root(double energy, const DiracConstants &dc,
                  const PotentialParams &p);

//! a, b = eta + lambda + 1/4 (1 -+ outer_root), c = 2 eta + 1.
HypergeometricParams hypergeometric_params(double energy,
                                           const DiracConstants &dc,
                                           const PotentialParams &p);

//! (C - M, M): the energies with E~ < 0 and M + E - C > 0. Throws
//! NonBindingError when C >= 2M.
EnergyWindow bound_window(const DiracConstants &dc);

//! Small-q asymptotic forms of lambda, a and b.
MorseLimitParams morse_limit_params(double energy, const DiracConstants &dc,
                                    const PotentialParams &p);

//! All of the above at once (q > 0).
EffectiveParams effective_params(double energy, const DiracConstants &dc,
                                 const PotentialParams &p);

} // namespace qdeform
