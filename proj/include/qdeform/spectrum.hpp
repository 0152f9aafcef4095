#pragma once
// Bound-state energies E_{n_r,-1} from the three regime-dependent
// quantization conditions:
//
//   q >= 1      lambda + eta + 1/4 (1 - D+) = -n_r               (closed form)
//   0 < q < 1   2F1(a, b; c; 4 sqrt q / (1 + sqrt q)^2) = 0        (transcendental)
//   q = 0       1F1(1/2 - V2~/(2 alpha sqrt V1~) + eta; 2 eta + 1; 4 sqrt V1~/alpha) = 0
//
// plus the large-V1~ Morse asymptote eta = V2~/(2 alpha sqrt V1~) - 1/2 - n_r.
// All conditions are implicit in E (V1~, V2~ depend on E) and are solved by a
// uniform scan of the window (C - M, M) followed by bisection.

#include "qdeform/deformed.hpp"
#include "qdeform/effective.hpp"
#include "qdeform/special.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qdeform {

enum class Method {
  closed_form_q_ge_1,
  transcendental_q_lt_1,
  morse_exact,
  morse_asymptotic,
  oracle,
  disputed_closed_form //!< q >= 1 formula applied at q < 1, comparison only
};

const char *to_string(Method method);
std::optional<Method> method_from_string(const std::string &tag);

struct EnergyLevel {
  int n_r = 0;
  double energy = 0.0;
  double e_tilde = 0.0;
  Method method = Method::oracle;
};

struct SolverConfig {
  int scan_points = 2000;
  double tol_e = 1e-10; //!< absolute, in units of M
  int max_levels = 64;

  //! Throws ConfigError unless scan_points >= 100, tol_e > 0, max_levels > 0.
  void validate() const;
};

//! Points skipped during a scan because the condition could not be evaluated.
struct ScanDiagnostics {
  int evaluated = 0;
  int skipped = 0;
  std::string last_error;
};

//! lambda + eta + 1/4 (1 - D+) + n_r; empty where lambda is complex.
std::optional<double> closed_form_condition(double energy, int n_r,
                                            const DiracConstants &dc,
                                            const PotentialParams &p);

//! 2F1(a, b; c; z0) with z0 = 4 sqrt q/(1 + sqrt q)^2.
sf::ScaledValue transcendental_condition(double energy,
                                         const DiracConstants &dc,
                                         const PotentialParams &p);

//! 1F1(1/2 - V2~/(2 alpha sqrt V1~) + eta; 2 eta + 1; 4 sqrt V1~/alpha).
sf::ScaledValue morse_condition(double energy, const DiracConstants &dc,
                                const PotentialParams &p);

//! eta + 1/2 + n_r - V2~/(2 alpha sqrt V1~).
double morse_asymptotic_condition(double energy, int n_r,
                                  const DiracConstants &dc,
                                  const PotentialParams &p);

//! 4 sqrt q / (1 + sqrt q)^2
double quantization_argument(double q);
//! 1 - quantization_argument(q) = ((1 - sqrt q)/(1 + sqrt q))^2, exact form.
double quantization_complement(double q);

//! Level n_r for q >= 1. Throws NoRootError when the potential binds fewer
//! than n_r + 1 states.
EnergyLevel solve_q_ge_1(int n_r, const DiracConstants &dc,
                         const PotentialParams &p, const SolverConfig &cfg = {});

//! Every root of the transcendental condition in the window, n_r by energy
//! order. Empty when no sign change is found.
std::vector<EnergyLevel> solve_q_lt_1(const DiracConstants &dc,
                                      const PotentialParams &p,
                                      const SolverConfig &cfg = {},
                                      ScanDiagnostics *diag = nullptr);

std::vector<EnergyLevel> solve_morse_exact(const DiracConstants &dc,
                                           const PotentialParams &p,
                                           const SolverConfig &cfg = {},
                                           ScanDiagnostics *diag = nullptr);

//! Throws NoRootError when level n_r is past the asymptotic level cap.
EnergyLevel solve_morse_asymptotic(int n_r, const DiracConstants &dc,
                                   const PotentialParams &p,
                                   const SolverConfig &cfg = {});

//! All asymptotic Morse levels.
std::vector<EnergyLevel> morse_asymptotic_spectrum(const DiracConstants &dc,
                                                   const PotentialParams &p,
                                                   const SolverConfig &cfg = {});

//! Closed-form q >= 1 condition evaluated at 0 < q < 1. Not a valid spectrum;
//! exposed only to reproduce the disputed values for comparison.
std::vector<EnergyLevel> disputed_spectrum(const DiracConstants &dc,
                                           const PotentialParams &p,
                                           const SolverConfig &cfg = {});

//! Dispatch on the regime of p.
std::vector<EnergyLevel> spectrum(const DiracConstants &dc,
                                  const PotentialParams &p,
                                  const SolverConfig &cfg = {});

} // namespace qdeform
