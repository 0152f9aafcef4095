#pragma once
// Brute-force eigenvalues of -u'' + [(M + E - C) Sigma(r) - E~] u = 0 by
// outward Numerov shooting, independent of the hypergeometric machinery.
//
// The equation is integrated on the mapped mesh r = r_left + s ln(1 + e^t)
// after the Liouville substitution u = sqrt(dr/dt) w, which keeps the
// no-first-derivative form:
//
//   w'' = [ (dr/dt)^2 (P Sigma - E~) + S(t) ] w,
//   S = 3/4 (r_tt/r_t)^2 - 1/2 r_ttt/r_t.
//
// Near the left boundary w behaves as e^{nu t} with nu^2 = k(t_min), which
// fixes the regular solution (u ~ x^{1/2 + nu}) for both the 1/x^2 core of
// q >= 1 and the regular q < 1 and Morse cases.
//
// Past r_end the potential is negligible and the bound solution is exactly
// e^{-kappa r}; the mismatch is measured by the phase index
//
//   G(E) = nodes - (atan(u'/u) + atan(kappa)) / pi,
//
// which passes through n_r at the level with n_r interior nodes. On a long
// grid the growing solution swamps u at r_end except within rounding of a
// level, so G there is nearly a step function (n - 2 atan(kappa)/pi between
// levels) and the crossing is located as the step.

#include "qdeform/deformed.hpp"
#include "qdeform/effective.hpp"
#include "qdeform/mesh.hpp"
#include "qdeform/spectrum.hpp"

#include <optional>
#include <vector>

namespace qdeform {

struct OracleOptions {
  double x_min = 1e-10;          //!< first offset from the boundary, in 1/alpha
  double potential_cutoff = 1e-13; //!< |Sigma(r_end)| relative to V1
  double step_factor = 0.02;     //!< dt * sqrt(max |k|)
  double max_dt = 0.005;
  int scan_points = 400;
  double tol_e = 1e-13; //!< absolute, units of M
};

//! Mesh plus the energy-independent coefficient tables.
struct RadialGrid {
  RadialMesh mesh;
  std::vector<double> a; //!< (dr/dt)^2 Sigma
  std::vector<double> b; //!< (dr/dt)^2
  std::vector<double> s; //!< S(t)

  double r_start() const { return mesh.radius(0); }
  double r_end() const { return mesh.radius(mesh.n - 1); }
  std::size_t n_points() const { return mesh.n; }
  double spacing() const { return mesh.dt; }
};

//! Sigma at offset x from the regime's left boundary (r0 for q >= 1, 0 else).
double potential_from_boundary(double x, const PotentialParams &p);

//! Left boundary: r0 for q >= 1, 0 otherwise.
double left_boundary(const PotentialParams &p);

RadialGrid make_radial_grid(const DiracConstants &dc, const PotentialParams &p,
                            const OracleOptions &opt = {});

struct RadialShot {
  double log_derivative = 0.0; //!< u'/u at the matching point
  int nodes = 0;
  double phase_index = 0.0; //!< G(E)
};

//! Empty when the core is supercritical at this energy (nu^2 <= 0).
std::optional<RadialShot> integrate_radial(double energy,
                                           const DiracConstants &dc,
                                           const PotentialParams &p,
                                           const RadialGrid &grid);

//! Every level with n_r <= n_max, sorted by energy, tagged Method::oracle.
std::vector<EnergyLevel> shoot_eigenvalues(const DiracConstants &dc,
                                           const PotentialParams &p,
                                           const RadialGrid &grid, int n_max,
                                           const OracleOptions &opt = {});

//! Convenience: grid built with opt, n_max = 1000.
std::vector<EnergyLevel> oracle_spectrum(const DiracConstants &dc,
                                         const PotentialParams &p,
                                         const OracleOptions &opt = {});

//! max |F'' - [(M + E - C) Sigma - E~] F| / max |F| over the interior of a
//! uniformly spaced sample (stencil 3 or 5 points). Zero for F == 0.
double ode_residual(const std::vector<double> &r, const std::vector<double> &f,
                    double energy, const DiracConstants &dc,
                    const PotentialParams &p, int stencil = 5);

} // namespace qdeform
