#include "qdeform/oracle.hpp"
#include "qdeform/error.hpp"
#include "qdeform/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace qdeform {

double left_boundary(const PotentialParams &p) {
  return p.regime() == Regime::singular ? shift_origin(p) : 0.0;
}

double potential_from_boundary(double x, const PotentialParams &p) {
  switch (p.regime()) {
  case Regime::singular:
    return potential_at_offset(x, p);
  case Regime::regular:
    return potential_value(x, p);
  case Regime::morse:
    return morse_value(x, p.v1, p.v2, p.alpha);
  }
  return 0.0;
}

RadialGrid make_radial_grid(const DiracConstants &dc, const PotentialParams &p,
                            const OracleOptions &opt) {
  p.validate();
  const EnergyWindow win = bound_window(dc);
  const double s = 1.0 / p.alpha;
  const double x_min = opt.x_min * s;

  double x_end = s;
  while (std::fabs(potential_from_boundary(x_end, p)) >
         opt.potential_cutoff * p.v1)
    x_end *= 1.05;

  // size the step from the stiffest point over the energy window
  const double t_lo = softplus_inverse(x_min / s);
  const double t_hi = softplus_inverse(x_end / s);
  const int probe = 4000;
  const std::array<double, 3> energies{win.lo, 0.5 * (win.lo + win.hi),
                                       win.hi};
  double k_max = 1.0;
  for (int i = 0; i < probe; ++i) {
    const double t = t_lo + (t_hi - t_lo) * i / (probe - 1);
    const double sig = logistic(t), rest = logistic(-t);
    const double xt = s * sig;
    const double sig_pot = potential_from_boundary(s * softplus(t), p);
    const double st = 0.75 * rest * rest - 0.5 * rest * (1.0 - 2.0 * sig);
    for (double e : energies) {
      const double k = xt * xt * ((dc.m + e - dc.c_spin) * sig_pot -
                                  effective_eigenvalue(e, dc)) +
                       st;
      k_max = std::max(k_max, std::fabs(k));
    }
  }
  const double dt = std::min(opt.max_dt, opt.step_factor / std::sqrt(k_max));
  const auto n = static_cast<std::size_t>(std::ceil((t_hi - t_lo) / dt)) + 1;
  if (n > 20'000'000)
    throw ConvergenceError("oracle grid too large");

  RadialGrid g;
  g.mesh = RadialMesh::spanning(left_boundary(p), s, x_min, x_end,
                                std::max<std::size_t>(n, 1000));
  const std::size_t m = g.mesh.n;
  g.a.resize(m);
  g.b.resize(m);
  g.s.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double t = g.mesh.t(i);
    const double sig = logistic(t), rest = logistic(-t);
    const double xt = s * sig;
    g.b[i] = xt * xt;
    g.a[i] = g.b[i] * potential_from_boundary(g.mesh.offset(i), p);
    g.s[i] = 0.75 * rest * rest - 0.5 * rest * (1.0 - 2.0 * sig);
  }
  return g;
}

namespace {

// Up to four energies in one vector sweep. Invalid lanes come back empty.
std::array<std::optional<RadialShot>, kernels::kLanes>
shoot_batch(const double *energies, int count, const DiracConstants &dc,
            const RadialGrid &grid) {
  kernels::NumerovTables tab{grid.a.data(), grid.b.data(), grid.s.data(),
                             grid.mesh.n, grid.mesh.dt * grid.mesh.dt / 12.0};
  kernels::NumerovLanes lanes{};
  std::array<bool, kernels::kLanes> valid{};
  for (int l = 0; l < kernels::kLanes; ++l) {
    const double e = energies[std::min(l, count - 1)];
    const double p = dc.m + e - dc.c_spin;
    const double et = effective_eigenvalue(e, dc);
    const double k0 = p * grid.a[0] - et * grid.b[0] + grid.s[0];
    valid[l] = l < count && k0 > 0.0;
    const double nu = std::sqrt(std::max(k0, 0.0));
    lanes.p[l] = p;
    lanes.e_tilde[l] = et;
    lanes.w0[l] = 1.0;
    lanes.w1[l] = std::exp(nu * grid.mesh.dt);
  }
  kernels::NumerovResult res{};
  kernels::active().numerov_sweep(tab, lanes, res);

  std::array<std::optional<RadialShot>, kernels::kLanes> out{};
  const std::size_t m = grid.mesh.n - 2;
  const double t = grid.mesh.t(m);
  const double xt = grid.mesh.jacobian(m);
  const double half_ratio = 0.5 * logistic(-t);
  for (int l = 0; l < count; ++l) {
    if (!valid[l] || res.w[l] == 0.0 || !std::isfinite(res.w[l]) ||
        !std::isfinite(res.dw[l]))
      continue;
    RadialShot shot;
    const double wt = res.dw[l] / (2.0 * grid.mesh.dt);
    shot.log_derivative = (half_ratio + wt / res.w[l]) / xt;
    shot.nodes = res.nodes[l];
    const double kappa = std::sqrt(std::max(-lanes.e_tilde[l], 0.0));
    shot.phase_index = shot.nodes - (std::atan(shot.log_derivative) +
                                     std::atan(kappa)) /
                                        M_PI;
    out[l] = shot;
  }
  return out;
}

struct Sample {
  double e;
  std::optional<double> g;
};

std::vector<Sample> sample_phase(const std::vector<double> &es,
                                 const DiracConstants &dc,
                                 const RadialGrid &grid) {
  std::vector<Sample> out(es.size());
  for (std::size_t i = 0; i < es.size(); i += kernels::kLanes) {
    const int count =
        static_cast<int>(std::min<std::size_t>(kernels::kLanes, es.size() - i));
    const auto shots = shoot_batch(es.data() + i, count, dc, grid);
    for (int l = 0; l < count; ++l) {
      out[i + l].e = es[i + l];
      if (shots[l])
        out[i + l].g = shots[l]->phase_index;
    }
  }
  return out;
}

// Shrinks [lo, hi] around G = target with four interior probes per sweep.
double multisect(double lo, double hi, double g_lo, double target,
                 const DiracConstants &dc, const RadialGrid &grid,
                 double tol) {
  const bool lo_below = g_lo < target;
  for (int sweep = 0; sweep < 80 && hi - lo > tol; ++sweep) {
    std::vector<double> es(kernels::kLanes);
    for (int l = 0; l < kernels::kLanes; ++l)
      es[l] = lo + (hi - lo) * (l + 1) / (kernels::kLanes + 1.0);
    const auto samples = sample_phase(es, dc, grid);
    double new_lo = lo, new_hi = hi;
    for (int l = 0; l < kernels::kLanes; ++l) {
      if (!samples[l].g)
        continue;
      if ((*samples[l].g < target) == lo_below) {
        new_lo = es[l];
      } else {
        new_hi = es[l];
        break;
      }
    }
    if (new_lo == lo && new_hi == hi)
      break;
    lo = new_lo;
    hi = new_hi;
  }
  return 0.5 * (lo + hi);
}

} // namespace

std::optional<RadialShot> integrate_radial(double energy,
                                           const DiracConstants &dc,
                                           const PotentialParams &p,
                                           const RadialGrid &grid) {
  (void)p;
  const auto shots = shoot_batch(&energy, 1, dc, grid);
  return shots[0];
}

std::vector<EnergyLevel> shoot_eigenvalues(const DiracConstants &dc,
                                           const PotentialParams &p,
                                           const RadialGrid &grid, int n_max,
                                           const OracleOptions &opt) {
  p.validate();
  const EnergyWindow win = bound_window(dc);
  const double trim = 1e-8 * dc.m;
  const double lo = win.lo + trim, hi = win.hi - trim;
  const int n = std::max(opt.scan_points, 8);
  std::vector<double> es(n);
  for (int i = 0; i < n; ++i)
    es[i] = lo + (hi - lo) * i / (n - 1);
  const auto samples = sample_phase(es, dc, grid);

  std::vector<EnergyLevel> out;
  for (int i = 0; i + 1 < n; ++i) {
    if (!samples[i].g || !samples[i + 1].g)
      continue;
    const double g0 = *samples[i].g, g1 = *samples[i + 1].g;
    const double g_min = std::min(g0, g1), g_max = std::max(g0, g1);
    for (int level = std::max(0, static_cast<int>(std::floor(g_min)) + 1);
         level <= std::min(n_max, static_cast<int>(std::floor(g_max)));
         ++level) {
      if (level == g_min)
        continue;
      const double e = multisect(es[i], es[i + 1], g0, level, dc, grid,
                                 opt.tol_e * dc.m);
      out.push_back({level, e, effective_eigenvalue(e, dc), Method::oracle});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const EnergyLevel &x, const EnergyLevel &y) {
              return x.energy < y.energy;
            });
  return out;
}

std::vector<EnergyLevel> oracle_spectrum(const DiracConstants &dc,
                                         const PotentialParams &p,
                                         const OracleOptions &opt) {
  return shoot_eigenvalues(dc, p, make_radial_grid(dc, p, opt), 1000, opt);
}

double ode_residual(const std::vector<double> &r, const std::vector<double> &f,
                    double energy, const DiracConstants &dc,
                    const PotentialParams &p, int stencil) {
  if (r.size() != f.size() || r.size() < 5)
    throw DomainError("ode_residual: need matching samples, at least 5");
  if (stencil != 3 && stencil != 5)
    throw DomainError("ode_residual: stencil must be 3 or 5");
  double peak = 0.0;
  for (double v : f)
    peak = std::max(peak, std::fabs(v));
  if (peak == 0.0)
    return 0.0;
  const double h = r[1] - r[0];
  const double pref = dc.m + energy - dc.c_spin;
  const double et = effective_eigenvalue(energy, dc);
  std::vector<double> k(r.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    k[i] = pref * potential_value(r[i], p) - et;
  return kernels::active().residual_max(f.data(), k.data(), f.size(),
                                        1.0 / (h * h), stencil) /
         peak;
}

} // namespace qdeform
