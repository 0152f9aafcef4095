#pragma once
// Analytic upper components F for the three regimes, the lower component
// G = (F' - F/r)/(M + E - C), and normalization of int (F^2 + G^2) dr = 1.
//
//   q >= 1   F = cosh(ax/2)^{-2 eta} tanh(ax/2)^{2 lambda}
//                P_n^{(2 lambda - 1/2, 2 eta)}(1 - 2 tanh^2(ax/2)),  x = r - r0
//   q < 1    F = z^eta (1 - z)^lambda 2F1(a, b; c; z),  z = sqrt q / cosh_{sqrt q}^2(ar/2)
//   q = 0    F = y^eta e^{-y/2} 1F1(1/2 + eta - V2~/(2 a sqrt V1~); 2 eta + 1; y),
//            y = (4 sqrt V1~ / a) e^{-a r}
//
// The deformed functions at half argument reduce to ordinary ones about r0,
// e.g. tanh_{sqrt q}(ar/2) = tanh(a(r - r0)/2), which is how they are
// evaluated. Point values are unnormalized and may over- or underflow far
// out; the grid builders work with logarithms and rescale.

#include "qdeform/deformed.hpp"
#include "qdeform/effective.hpp"
#include "qdeform/mesh.hpp"
#include "qdeform/spectrum.hpp"

#include <vector>

namespace qdeform {

//! Jacobi form. Throws DomainError for r <= r0.
double upper_q_ge_1(double r, int n_r, double energy, const DiracConstants &dc,
                    const PotentialParams &p);
//! Same function through 2F1(-n, n + 2 lambda + 2 eta + 1/2; 2 lambda + 1/2; z);
//! differs from the Jacobi form by an r-independent factor.
double upper_q_ge_1_hypergeometric(double r, int n_r, double energy,
                                   const DiracConstants &dc,
                                   const PotentialParams &p);
double upper_q_lt_1(double r, double energy, const DiracConstants &dc,
                    const PotentialParams &p);
double upper_morse(double r, double energy, const DiracConstants &dc,
                   const PotentialParams &p);

//! Morse form with the first 1F1 parameter set to -n_r, so the series is a
//! polynomial of degree n_r. Meant for asymptotic levels, where that
//! parameter vanishes only up to rounding and the remainder would otherwise
//! grow like e^y.
double upper_morse_terminating(double r, int n_r, double energy,
                               const DiracConstants &dc,
                               const PotentialParams &p);

//! ln|F| and sign at offset x > 0 from the left boundary, dispatched on the
//! regime (n_r is used only for q >= 1).
struct LogValue {
  double log_abs;
  int sign;
};
LogValue upper_log(double x, int n_r, double energy, const DiracConstants &dc,
                   const PotentialParams &p);

//! G from F sampled at r_i = r(t_i), t uniform with step dt. dF/dt uses
//! five-point central differences, one-sided fourth order at both ends.
//! Throws DomainError when |M + E - C| < 1e-12 M.
std::vector<double> lower_component(const std::vector<double> &r,
                                    const std::vector<double> &dr_dt,
                                    const std::vector<double> &f, double dt,
                                    double energy, const DiracConstants &dc);
//! Uniformly spaced r.
std::vector<double> lower_component(const std::vector<double> &r,
                                    const std::vector<double> &f,
                                    double energy, const DiracConstants &dc);

struct WavefunctionGrid {
  RadialMesh mesh;
  std::vector<double> radii;
  std::vector<double> f_values;
  std::vector<double> g_values;
  std::vector<double> weights; //!< Simpson weights in r
  double norm_constant = 1.0;  //!< factor applied to the raw analytic F
  //! Power laws F ~ x^pf, G ~ x^pg below the first mesh point, used to add
  //! the sliver [r_left, r_start] to the integral.
  double f_power = 1.0;
  double g_power = 1.0;
  int n_r = 0;
  double energy = 0.0;

  //! int (F^2 + G^2) dr, Simpson plus the analytic sliver.
  double norm_integral() const;
};

struct WavefunctionOptions {
  std::size_t n_points = 10000; //!< lower bound; raised for stiff or long grids
  double potential_cutoff = 1e-10;
  double tail_decades = 11.0; //!< e-folds of decay past the potential, / ln 10
};

//! Mesh wide enough for every listed level of one potential.
RadialMesh wavefunction_mesh(const std::vector<EnergyLevel> &levels,
                             const DiracConstants &dc, const PotentialParams &p,
                             const WavefunctionOptions &opt = {});

//! Normalized F and G of an analytic level on the given mesh.
WavefunctionGrid build_wavefunction(const EnergyLevel &level,
                                    const DiracConstants &dc,
                                    const PotentialParams &p,
                                    const RadialMesh &mesh);
WavefunctionGrid build_wavefunction(const EnergyLevel &level,
                                    const DiracConstants &dc,
                                    const PotentialParams &p,
                                    const WavefunctionOptions &opt = {});

//! Rescales F and G by one constant so that norm_integral() == 1. Throws
//! DomainError for a zero function.
WavefunctionGrid normalize(WavefunctionGrid wf);

//! Sign changes, ignoring samples below rel_floor * max |f|.
int count_nodes(const std::vector<double> &f, double rel_floor = 1e-7);

//! int (F_a F_b + G_a G_b) dr for two grids on the same mesh.
double overlap(const WavefunctionGrid &a, const WavefunctionGrid &b);

} // namespace qdeform
