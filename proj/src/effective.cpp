#include "qdeform/effective.hpp"
#include "qdeform/error.hpp"

#include <cmath>
#include <string>

namespace qdeform {

void DiracConstants::validate() const {
  if (!(m > 0.0))
    throw NonBindingError("dirac: mass must be positive");
  if (!(c_spin < 2.0 * m))
    throw NonBindingError("dirac: empty energy window, C=" +
                          std::to_string(c_spin) + " >= 2M=" +
                          std::to_string(2.0 * m));
}

double effective_eigenvalue(double energy, const DiracConstants &dc) {
  return (energy - dc.m) * (energy + dc.m - dc.c_spin);
}

Strengths effective_strengths(double energy, const DiracConstants &dc,
                              const PotentialParams &p) {
  const double pref = dc.m + energy - dc.c_spin;
  if (!(pref > 0.0))
    throw NonBindingError("effective well is not attractive: M + E - C = " +
                          std::to_string(pref));
  return {pref * p.v1, pref * p.v2};
}

namespace {

double decay_exponent(double energy, const DiracConstants &dc, double alpha) {
  const double et = effective_eigenvalue(energy, dc);
  if (!(et < 0.0))
    throw NonBindingError("no bound state with E~ = " + std::to_string(et) +
                          " >= 0");
  return std::sqrt(-et) / alpha;
}

} // namespace

ShapeParams shape_params(double energy, const DiracConstants &dc,
                         const PotentialParams &p) {
  if (!(p.q > 0.0))
    throw DomainError("shape_params: requires q > 0");
  const Strengths s = effective_strengths(energy, dc, p);
  const double disc =
      1.0 + 4.0 / (p.alpha * p.alpha) * (s.v1 / p.q - s.v2 / std::sqrt(p.q));
  if (disc < 0.0)
    throw DomainError("shape_params: negative discriminant " +
                      std::to_string(disc) + " (complex lambda)");
  return {0.25 * (1.0 + std::sqrt(disc)), decay_exponent(energy, dc, p.alpha)};
}

double outer_root(double energy, const DiracConstants &dc,
                  const PotentialParams &p) {
  const Strengths s = effective_strengths(energy, dc, p);
  return std::sqrt(1.0 + 4.0 / (p.alpha * p.alpha * p.q) *
                             (s.v1 + s.v2 * std::sqrt(p.q)));
}

HypergeometricParams hypergeometric_params(double energy,
                                           const DiracConstants &dc,
                                           const PotentialParams &p) {
  const ShapeParams sp = shape_params(energy, dc, p);
  const double root = outer_root(energy, dc, p);
  const double base = sp.eta + sp.lambda;
  return {base + 0.25 * (1.0 - root), base + 0.25 * (1.0 + root),
          2.0 * sp.eta + 1.0};
}

EnergyWindow bound_window(const DiracConstants &dc) {
  dc.validate();
  return {dc.c_spin - dc.m, dc.m};
}

MorseLimitParams morse_limit_params(double energy, const DiracConstants &dc,
                                    const PotentialParams &p) {
  if (!(p.q > 0.0))
    throw DomainError("morse_limit_params: requires q > 0");
  const Strengths s = effective_strengths(energy, dc, p);
  const double eta = decay_exponent(energy, dc, p.alpha);
  const double sq1 = std::sqrt(s.v1);
  const double ratio = s.v2 / (p.alpha * sq1);
  const double growth = sq1 / (p.alpha * std::sqrt(p.q));
  return {0.25 * (1.0 - ratio + 2.0 * growth), 0.5 + eta - 0.5 * ratio,
          growth};
}

EffectiveParams effective_params(double energy, const DiracConstants &dc,
                                 const PotentialParams &p) {
  const Strengths s = effective_strengths(energy, dc, p);
  const ShapeParams sp = shape_params(energy, dc, p);
  const HypergeometricParams hp = hypergeometric_params(energy, dc, p);
  return {effective_eigenvalue(energy, dc),
          s.v1,
          s.v2,
          sp.lambda,
          sp.eta,
          hp.a,
          hp.b,
          hp.c};
}

} // namespace qdeform
