#include "qdeform/wavefunction.hpp"
#include "qdeform/error.hpp"
#include "qdeform/kernels.hpp"
#include "qdeform/oracle.hpp"
#include "qdeform/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qdeform {

namespace {

constexpr double kLn2 = std::numbers::ln2;

double log_cosh(double y) {
  y = std::fabs(y);
  return y + std::log1p(std::exp(-2.0 * y)) - kLn2;
}

LogValue from_double(double v) {
  if (v == 0.0)
    return {-INFINITY, 0};
  return {std::log(std::fabs(v)), v > 0.0 ? 1 : -1};
}

LogValue from_scaled(const sf::ScaledValue &v) {
  if (v.mantissa == 0.0)
    return {-INFINITY, 0};
  return {std::log(std::fabs(v.mantissa)) + static_cast<double>(v.exponent) * kLn2,
          v.sign()};
}

double to_double(const LogValue &v) {
  return v.sign == 0 ? 0.0 : v.sign * std::exp(v.log_abs);
}

LogValue singular_log(double x, int n_r, double energy,
                      const DiracConstants &dc, const PotentialParams &p,
                      bool jacobi) {
  if (!(x > 0.0))
    throw DomainError("upper component: r must lie beyond r0");
  if (n_r < 0)
    throw DomainError("upper component: n_r must be non-negative");
  const ShapeParams sp = shape_params(energy, dc, p);
  const double y = 0.5 * p.alpha * x;
  const double th = std::tanh(y);
  const double z = th * th;
  LogValue poly;
  if (jacobi) {
    poly = from_double(sf::jacobi_p(n_r, 2.0 * sp.lambda - 0.5, 2.0 * sp.eta,
                                    1.0 - 2.0 * z));
  } else {
    poly = from_double(sf::gauss_2f1(
        -n_r, n_r + 2.0 * sp.lambda + 2.0 * sp.eta + 0.5, 2.0 * sp.lambda + 0.5,
        z));
  }
  return {-2.0 * sp.eta * log_cosh(y) + 2.0 * sp.lambda * std::log(th) +
              poly.log_abs,
          poly.sign};
}

LogValue regular_log(double r, double energy, const DiracConstants &dc,
                     const PotentialParams &p) {
  if (!(r >= 0.0))
    throw DomainError("upper_q_lt_1: r must be non-negative");
  const ShapeParams sp = shape_params(energy, dc, p);
  const HypergeometricParams hp = hypergeometric_params(energy, dc, p);
  // z = 1/cosh^2(h), 1 - z = tanh^2(h), h = (alpha r - ln(q)/2)/2 > 0
  const double h = 0.5 * (p.alpha * r - 0.5 * std::log(p.q));
  const double th = std::tanh(h);
  const double w = th * th;
  const double log_z = -2.0 * log_cosh(h);
  const sf::ScaledValue f21 =
      w < 0.5 ? sf::gauss_2f1_complement_scaled(hp.a, hp.b, hp.c, w)
              : sf::gauss_2f1_scaled(hp.a, hp.b, hp.c, std::exp(log_z));
  const LogValue hyp = from_scaled(f21);
  return {sp.eta * log_z + 2.0 * sp.lambda * std::log(th) + hyp.log_abs,
          hyp.sign};
}

// terminating < 0: first 1F1 parameter from the energy; else -terminating
LogValue morse_log(double r, double energy, const DiracConstants &dc,
                   const PotentialParams &p, int terminating = -1) {
  const Strengths s = effective_strengths(energy, dc, p);
  const double et = effective_eigenvalue(energy, dc);
  if (!(et < 0.0))
    throw NonBindingError("upper_morse: E~ >= 0");
  const double eta = std::sqrt(-et) / p.alpha;
  const double sq = std::sqrt(s.v1);
  const double log_y = std::log(4.0 * sq / p.alpha) - p.alpha * r;
  const double y = std::exp(log_y);
  const double a = terminating < 0 ? 0.5 + eta - s.v2 / (2.0 * p.alpha * sq)
                                   : -static_cast<double>(terminating);
  const LogValue k = from_scaled(sf::kummer_1f1_scaled(a, 2.0 * eta + 1.0, y));
  return {eta * log_y - 0.5 * y + k.log_abs, k.sign};
}

void require(const PotentialParams &p, Regime want, const char *who) {
  p.validate();
  if (p.regime() != want)
    throw DomainError(std::string(who) + ": wrong regime " +
                      to_string(p.regime()));
}

} // namespace

double upper_q_ge_1(double r, int n_r, double energy, const DiracConstants &dc,
                    const PotentialParams &p) {
  require(p, Regime::singular, "upper_q_ge_1");
  return to_double(singular_log(r - shift_origin(p), n_r, energy, dc, p, true));
}

double upper_q_ge_1_hypergeometric(double r, int n_r, double energy,
                                   const DiracConstants &dc,
                                   const PotentialParams &p) {
  require(p, Regime::singular, "upper_q_ge_1_hypergeometric");
  return to_double(
      singular_log(r - shift_origin(p), n_r, energy, dc, p, false));
}

double upper_q_lt_1(double r, double energy, const DiracConstants &dc,
                    const PotentialParams &p) {
  require(p, Regime::regular, "upper_q_lt_1");
  return to_double(regular_log(r, energy, dc, p));
}

double upper_morse(double r, double energy, const DiracConstants &dc,
                   const PotentialParams &p) {
  require(p, Regime::morse, "upper_morse");
  return to_double(morse_log(r, energy, dc, p));
}

double upper_morse_terminating(double r, int n_r, double energy,
                                const DiracConstants &dc,
                                const PotentialParams &p) {
  require(p, Regime::morse, "upper_morse_terminating");
  if (n_r < 0)
    throw DomainError("upper_morse_terminating: n_r must be non-negative");
  return to_double(morse_log(r, energy, dc, p, n_r));
}

LogValue upper_log(double x, int n_r, double energy, const DiracConstants &dc,
                   const PotentialParams &p) {
  switch (p.regime()) {
  case Regime::singular:
    return singular_log(x, n_r, energy, dc, p, true);
  case Regime::regular:
    return regular_log(x, energy, dc, p);
  case Regime::morse:
    return morse_log(x, energy, dc, p);
  }
  return {-INFINITY, 0};
}

std::vector<double> lower_component(const std::vector<double> &r,
                                    const std::vector<double> &dr_dt,
                                    const std::vector<double> &f, double dt,
                                    double energy, const DiracConstants &dc) {
  const std::size_t n = f.size();
  if (r.size() != n || dr_dt.size() != n || n < 5)
    throw DomainError("lower_component: need at least 5 matching samples");
  const double pref = dc.m + energy - dc.c_spin;
  if (std::fabs(pref) < 1e-12 * dc.m)
    throw DomainError("lower_component: M + E - C vanishes");
  std::vector<double> g(n);
  const double c = 1.0 / (12.0 * dt);
  for (std::size_t i = 0; i < n; ++i) {
    double d;
    if (i >= 2 && i + 2 < n) {
      d = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * c;
    } else if (i == 0) {
      d = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] -
           3.0 * f[4]) *
          c;
    } else if (i == 1) {
      d = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * c;
    } else if (i == n - 2) {
      d = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] +
           6.0 * f[n - 4] - f[n - 5]) *
          c;
    } else {
      d = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] -
           16.0 * f[n - 4] + 3.0 * f[n - 5]) *
          c;
    }
    g[i] = (d / dr_dt[i] - f[i] / r[i]) / pref;
  }
  return g;
}

std::vector<double> lower_component(const std::vector<double> &r,
                                    const std::vector<double> &f,
                                    double energy, const DiracConstants &dc) {
  if (r.size() < 5)
    throw DomainError("lower_component: need at least 5 samples");
  return lower_component(r, std::vector<double>(r.size(), 1.0), f, r[1] - r[0],
                         energy, dc);
}

double WavefunctionGrid::norm_integral() const {
  const std::size_t n = f_values.size();
  if (n == 0)
    return 0.0;
  double sum = kernels::active().weighted_sum_squares(
      weights.data(), f_values.data(), g_values.data(), n);
  const double x0 = mesh.offset(0);
  sum += f_values[0] * f_values[0] * x0 / (2.0 * f_power + 1.0) +
         g_values[0] * g_values[0] * x0 / (2.0 * g_power + 1.0);
  return sum;
}

RadialMesh wavefunction_mesh(const std::vector<EnergyLevel> &levels,
                             const DiracConstants &dc, const PotentialParams &p,
                             const WavefunctionOptions &opt) {
  p.validate();
  if (levels.empty())
    throw DomainError("wavefunction_mesh: no levels");
  const double s = 1.0 / p.alpha;
  const double x_min = (p.regime() == Regime::singular ? 1e-14 : 1e-8) * s;

  double x_pot = s;
  while (std::fabs(potential_from_boundary(x_pot, p)) >
         opt.potential_cutoff * p.v1)
    x_pot *= 1.05;

  double kappa_min = INFINITY;
  for (const EnergyLevel &lv : levels)
    kappa_min = std::min(kappa_min, std::sqrt(-effective_eigenvalue(lv.energy, dc)));
  if (!(kappa_min > 0.0))
    throw NonBindingError("wavefunction_mesh: level at threshold");
  const double x_max = x_pot + opt.tail_decades * std::log(10.0) / kappa_min;
  if (x_max > 1e6 * s)
    throw ConvergenceError("wavefunction_mesh: tail too long");

  // step from the stiffest point: dt sqrt|k| <= 0.05 in the mapped variable
  const double t_lo = softplus_inverse(x_min / s);
  const double t_hi = softplus_inverse(x_max / s);
  double k_max = 1.0;
  const int probe = 4000;
  for (int i = 0; i < probe; ++i) {
    const double t = t_lo + (t_hi - t_lo) * i / (probe - 1);
    const double xt = s * logistic(t);
    const double v = potential_from_boundary(s * softplus(t), p);
    for (const EnergyLevel &lv : levels) {
      const double k = xt * xt * ((dc.m + lv.energy - dc.c_spin) * v -
                                  effective_eigenvalue(lv.energy, dc));
      k_max = std::max(k_max, std::fabs(k));
    }
  }
  const double dt = std::min(0.01, 0.05 / std::sqrt(k_max));
  const auto n = std::max<std::size_t>(
      opt.n_points, static_cast<std::size_t>(std::ceil((t_hi - t_lo) / dt)) + 1);
  return RadialMesh::spanning(left_boundary(p), s, x_min, x_max, n);
}

WavefunctionGrid build_wavefunction(const EnergyLevel &level,
                                    const DiracConstants &dc,
                                    const PotentialParams &p,
                                    const RadialMesh &mesh) {
  p.validate();
  const std::size_t n = mesh.n;
  std::vector<LogValue> logs(n);
  double peak = -INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    logs[i] = upper_log(mesh.offset(i), level.n_r, level.energy, dc, p);
    if (logs[i].sign != 0)
      peak = std::max(peak, logs[i].log_abs);
  }
  if (!std::isfinite(peak))
    throw DomainError("build_wavefunction: upper component vanishes");

  WavefunctionGrid wf;
  wf.mesh = mesh;
  wf.n_r = level.n_r;
  wf.energy = level.energy;
  wf.radii.resize(n);
  wf.f_values.resize(n);
  std::vector<double> jac(n);
  for (std::size_t i = 0; i < n; ++i) {
    wf.radii[i] = mesh.radius(i);
    jac[i] = mesh.jacobian(i);
    wf.f_values[i] =
        logs[i].sign == 0 ? 0.0 : logs[i].sign * std::exp(logs[i].log_abs - peak);
  }
  wf.g_values =
      lower_component(wf.radii, jac, wf.f_values, mesh.dt, level.energy, dc);
  wf.weights = mesh.simpson_weights();
  wf.norm_constant = std::exp(-peak);
  if (p.regime() == Regime::singular) {
    const double lambda = shape_params(level.energy, dc, p).lambda;
    wf.f_power = 2.0 * lambda;
    wf.g_power = 2.0 * lambda - 1.0;
  }
  return normalize(std::move(wf));
}

WavefunctionGrid build_wavefunction(const EnergyLevel &level,
                                    const DiracConstants &dc,
                                    const PotentialParams &p,
                                    const WavefunctionOptions &opt) {
  return build_wavefunction(level, dc, p,
                            wavefunction_mesh({level}, dc, p, opt));
}

WavefunctionGrid normalize(WavefunctionGrid wf) {
  const double integral = wf.norm_integral();
  if (!(integral > 0.0) || !std::isfinite(integral))
    throw DomainError("normalize: zero or non-finite norm");
  const double c = 1.0 / std::sqrt(integral);
  for (double &v : wf.f_values)
    v *= c;
  for (double &v : wf.g_values)
    v *= c;
  wf.norm_constant *= c;
  return wf;
}

int count_nodes(const std::vector<double> &f, double rel_floor) {
  double peak = 0.0;
  for (double v : f)
    peak = std::max(peak, std::fabs(v));
  const double floor = rel_floor * peak;
  int nodes = 0, last = 0;
  for (double v : f) {
    if (std::fabs(v) <= floor)
      continue;
    const int s = v > 0.0 ? 1 : -1;
    if (last != 0 && s != last)
      ++nodes;
    last = s;
  }
  return nodes;
}

double overlap(const WavefunctionGrid &a, const WavefunctionGrid &b) {
  if (a.f_values.size() != b.f_values.size() || a.mesh.dt != b.mesh.dt ||
      a.mesh.t_min != b.mesh.t_min)
    throw DomainError("overlap: grids differ");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.f_values.size(); ++i)
    sum += a.weights[i] *
           (a.f_values[i] * b.f_values[i] + a.g_values[i] * b.g_values[i]);
  const double x0 = a.mesh.offset(0);
  sum += a.f_values[0] * b.f_values[0] * x0 / (a.f_power + b.f_power + 1.0) +
         a.g_values[0] * b.g_values[0] * x0 / (a.g_power + b.g_power + 1.0);
  return sum;
}

} // namespace qdeform
