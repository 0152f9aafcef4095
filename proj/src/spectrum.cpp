#include "qdeform/spectrum.hpp"
#include "qdeform/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace qdeform {

const char *to_string(Method method) {
  switch (method) {
  case Method::closed_form_q_ge_1:
    return "closed-form-q>=1";
  case Method::transcendental_q_lt_1:
    return "transcendental-q<1";
  case Method::morse_exact:
    return "morse-exact";
  case Method::morse_asymptotic:
    return "morse-asymptotic";
  case Method::oracle:
    return "oracle";
  case Method::disputed_closed_form:
    return "disputed-closed-form";
  }
  return "unknown";
}

std::optional<Method> method_from_string(const std::string &tag) {
  for (Method m : {Method::closed_form_q_ge_1, Method::transcendental_q_lt_1,
                   Method::morse_exact, Method::morse_asymptotic,
                   Method::oracle, Method::disputed_closed_form}) {
    if (tag == to_string(m))
      return m;
  }
  return std::nullopt;
}

void SolverConfig::validate() const {
  if (scan_points < 100)
    throw ConfigError("solver.scan_points must be >= 100");
  if (!(tol_e > 0.0))
    throw ConfigError("solver.tol_e must be positive");
  if (max_levels <= 0)
    throw ConfigError("solver.max_levels must be positive");
}

// ---------------------------------------------------------------------------
// quantization conditions

std::optional<double> closed_form_condition(double energy, int n_r,
                                            const DiracConstants &dc,
                                            const PotentialParams &p) {
  ShapeParams sp;
  try {
    sp = shape_params(energy, dc, p);
  } catch (const DomainError &) {
    return std::nullopt;
  }
  const double root = outer_root(energy, dc, p);
  return sp.lambda + sp.eta + 0.25 * (1.0 - root) + static_cast<double>(n_r);
}

double quantization_argument(double q) {
  const double sq = std::sqrt(q);
  return 4.0 * sq / ((1.0 + sq) * (1.0 + sq));
}

double quantization_complement(double q) {
  // (1 - sqrt q)/(1 + sqrt q) = (1 - q)/(1 + sqrt q)^2 without cancellation
  const double sq = std::sqrt(q);
  const double ratio = (1.0 - q) / ((1.0 + sq) * (1.0 + sq));
  return ratio * ratio;
}

sf::ScaledValue transcendental_condition(double energy,
                                         const DiracConstants &dc,
                                         const PotentialParams &p) {
  const HypergeometricParams hp = hypergeometric_params(energy, dc, p);
  const double w0 = quantization_complement(p.q);
  if (w0 < 0.5)
    return sf::gauss_2f1_complement_scaled(hp.a, hp.b, hp.c, w0);
  return sf::gauss_2f1_scaled(hp.a, hp.b, hp.c, quantization_argument(p.q));
}

namespace {

struct MorseKummerArgs {
  double a, c, z;
};

MorseKummerArgs morse_kummer_args(double energy, const DiracConstants &dc,
                                  const PotentialParams &p) {
  const Strengths s = effective_strengths(energy, dc, p);
  const double et = effective_eigenvalue(energy, dc);
  if (!(et < 0.0))
    throw NonBindingError("morse: E~ >= 0");
  const double eta = std::sqrt(-et) / p.alpha;
  const double sq1 = std::sqrt(s.v1);
  return {0.5 - s.v2 / (2.0 * p.alpha * sq1) + eta, 2.0 * eta + 1.0,
          4.0 * sq1 / p.alpha};
}

} // namespace

sf::ScaledValue morse_condition(double energy, const DiracConstants &dc,
                                const PotentialParams &p) {
  const MorseKummerArgs k = morse_kummer_args(energy, dc, p);
  return sf::kummer_1f1_scaled(k.a, k.c, k.z);
}

double morse_asymptotic_condition(double energy, int n_r,
                                  const DiracConstants &dc,
                                  const PotentialParams &p) {
  const MorseKummerArgs k = morse_kummer_args(energy, dc, p);
  return k.a + static_cast<double>(n_r);
}

// ---------------------------------------------------------------------------
// scan + bisection

namespace {

using ConditionFn = std::function<std::optional<double>(double)>;

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

class RootScanner {
public:
  RootScanner(ConditionFn fn, const DiracConstants &dc,
              const SolverConfig &cfg, ScanDiagnostics *diag)
      : fn_(std::move(fn)), cfg_(cfg), diag_(diag) {
    cfg_.validate();
    const EnergyWindow w = bound_window(dc);
    const double trim = 1e-8 * dc.m;
    lo_ = w.lo + trim;
    hi_ = w.hi - trim;
  }

  //! All roots in increasing energy order.
  std::vector<double> roots() {
    const int n = cfg_.scan_points;
    std::vector<double> es(n);
    std::vector<std::optional<double>> vs(n);
    for (int i = 0; i < n; ++i) {
      es[i] = lo_ + (hi_ - lo_) * static_cast<double>(i) / (n - 1);
      vs[i] = evaluate(es[i]);
    }

    std::vector<bool> flagged(n, false);
    std::vector<std::pair<int, int>> cells; // consecutive valid samples
    int prev = -1;
    for (int i = 0; i < n; ++i) {
      if (!vs[i])
        continue;
      if (prev >= 0)
        cells.emplace_back(prev, i);
      prev = i;
    }
    std::vector<bool> brackets(cells.size(), false);
    for (std::size_t k = 0; k < cells.size(); ++k)
      brackets[k] = changes_sign(*vs[cells[k].first], *vs[cells[k].second]);

    std::vector<double> out;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const bool near = brackets[k] || (k > 0 && brackets[k - 1]) ||
                        (k + 1 < cells.size() && brackets[k + 1]);
      const auto [i, j] = cells[k];
      if (!near)
        continue;
      // Refine cells on and next to a sign change tenfold so that a pair of
      // close roots inside one coarse cell is not lost.
      double e_prev = es[i];
      std::optional<double> v_prev = vs[i];
      for (int s = 1; s <= 10; ++s) {
        const double e = s == 10 ? es[j] : es[i] + (es[j] - es[i]) * s / 10.0;
        const std::optional<double> v = s == 10 ? vs[j] : evaluate(e);
        if (!v)
          continue;
        if (changes_sign(*v_prev, *v))
          out.push_back(bisect(e_prev, e, *v_prev));
        e_prev = e;
        v_prev = v;
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [&](double a, double b) {
                            return std::fabs(a - b) <= cfg_.tol_e;
                          }),
              out.end());
    return out;
  }

private:
  static bool changes_sign(double a, double b) {
    return sign_of(a) != sign_of(b) && sign_of(a) != 0;
  }

  std::optional<double> evaluate(double e) {
    if (diag_)
      ++diag_->evaluated;
    try {
      std::optional<double> v = fn_(e);
      if (!v && diag_)
        ++diag_->skipped;
      return v;
    } catch (const Error &err) {
      if (diag_) {
        ++diag_->skipped;
        diag_->last_error = err.what();
      }
      return std::nullopt;
    }
  }

  double bisect(double lo, double hi, double f_lo) {
    const int s_lo = sign_of(f_lo);
    for (int it = 0; it < 200 && hi - lo > cfg_.tol_e; ++it) {
      double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi)
        break;
      std::optional<double> v = evaluate(mid);
      // step around isolated evaluation failures
      for (int nudge = 1; !v && nudge < 4; ++nudge) {
        mid = lo + (hi - lo) * (0.5 + 0.1 * nudge);
        v = evaluate(mid);
      }
      if (!v)
        throw ConvergenceError("bisection: condition cannot be evaluated near E=" +
                               std::to_string(mid));
      const int s = sign_of(*v);
      if (s == 0)
        return mid;
      if (s == s_lo)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  }

  ConditionFn fn_;
  SolverConfig cfg_;
  ScanDiagnostics *diag_;
  double lo_ = 0.0, hi_ = 0.0;
};

EnergyLevel make_level(int n_r, double energy, const DiracConstants &dc,
                       Method method) {
  return {n_r, energy, effective_eigenvalue(energy, dc), method};
}

std::vector<EnergyLevel> label_by_order(const std::vector<double> &roots,
                                        const DiracConstants &dc,
                                        Method method, int max_levels) {
  std::vector<EnergyLevel> out;
  for (std::size_t i = 0; i < roots.size() && static_cast<int>(i) < max_levels;
       ++i)
    out.push_back(make_level(static_cast<int>(i), roots[i], dc, method));
  return out;
}

void require_regime(const PotentialParams &p, Regime want, const char *who) {
  p.validate();
  if (p.regime() != want)
    throw DomainError(std::string(who) + ": potential is in the " +
                      to_string(p.regime()) + " regime, expected " +
                      to_string(want));
}

EnergyLevel closed_form_level(int n_r, const DiracConstants &dc,
                              const PotentialParams &p, const SolverConfig &cfg,
                              Method method) {
  if (n_r < 0)
    throw DomainError("closed-form level: n_r must be non-negative");
  RootScanner scanner(
      [&](double e) { return closed_form_condition(e, n_r, dc, p); }, dc, cfg,
      nullptr);
  const std::vector<double> roots = scanner.roots();
  if (roots.empty())
    throw NoRootError("level n_r=" + std::to_string(n_r) +
                          " is not bound by this potential",
                      0);
  // The condition is positive at the bottom of the window and decreases
  // through its first zero; a further pair of zeros would be a touch-and-go
  // artifact of the E-dependent strengths.
  return make_level(n_r, roots.front(), dc, method);
}

std::vector<EnergyLevel> closed_form_spectrum(const DiracConstants &dc,
                                              const PotentialParams &p,
                                              const SolverConfig &cfg,
                                              Method method) {
  std::vector<EnergyLevel> out;
  for (int n = 0; n < cfg.max_levels; ++n) {
    try {
      out.push_back(closed_form_level(n, dc, p, cfg, method));
    } catch (const NoRootError &) {
      break;
    }
  }
  return out;
}

std::optional<double> scaled_sign(const sf::ScaledValue &v) {
  return v.mantissa;
}

} // namespace

EnergyLevel solve_q_ge_1(int n_r, const DiracConstants &dc,
                         const PotentialParams &p, const SolverConfig &cfg) {
  require_regime(p, Regime::singular, "solve_q_ge_1");
  return closed_form_level(n_r, dc, p, cfg, Method::closed_form_q_ge_1);
}

std::vector<EnergyLevel> solve_q_lt_1(const DiracConstants &dc,
                                      const PotentialParams &p,
                                      const SolverConfig &cfg,
                                      ScanDiagnostics *diag) {
  require_regime(p, Regime::regular, "solve_q_lt_1");
  RootScanner scanner(
      [&](double e) {
        return scaled_sign(transcendental_condition(e, dc, p));
      },
      dc, cfg, diag);
  return label_by_order(scanner.roots(), dc, Method::transcendental_q_lt_1,
                        cfg.max_levels);
}

std::vector<EnergyLevel> solve_morse_exact(const DiracConstants &dc,
                                           const PotentialParams &p,
                                           const SolverConfig &cfg,
                                           ScanDiagnostics *diag) {
  require_regime(p, Regime::morse, "solve_morse_exact");
  RootScanner scanner(
      [&](double e) { return scaled_sign(morse_condition(e, dc, p)); }, dc,
      cfg, diag);
  return label_by_order(scanner.roots(), dc, Method::morse_exact,
                        cfg.max_levels);
}

EnergyLevel solve_morse_asymptotic(int n_r, const DiracConstants &dc,
                                   const PotentialParams &p,
                                   const SolverConfig &cfg) {
  require_regime(p, Regime::morse, "solve_morse_asymptotic");
  if (n_r < 0)
    throw DomainError("solve_morse_asymptotic: n_r must be non-negative");
  RootScanner scanner(
      [&](double e) -> std::optional<double> {
        return morse_asymptotic_condition(e, n_r, dc, p);
      },
      dc, cfg, nullptr);
  const std::vector<double> roots = scanner.roots();
  if (roots.empty())
    throw NoRootError("asymptotic Morse level n_r=" + std::to_string(n_r) +
                          " does not exist",
                      0);
  return make_level(n_r, roots.front(), dc, Method::morse_asymptotic);
}

std::vector<EnergyLevel> morse_asymptotic_spectrum(const DiracConstants &dc,
                                                   const PotentialParams &p,
                                                   const SolverConfig &cfg) {
  std::vector<EnergyLevel> out;
  for (int n = 0; n < cfg.max_levels; ++n) {
    try {
      out.push_back(solve_morse_asymptotic(n, dc, p, cfg));
    } catch (const NoRootError &) {
      break;
    }
  }
  return out;
}

std::vector<EnergyLevel> disputed_spectrum(const DiracConstants &dc,
                                           const PotentialParams &p,
                                           const SolverConfig &cfg) {
  require_regime(p, Regime::regular, "disputed_spectrum");
  return closed_form_spectrum(dc, p, cfg, Method::disputed_closed_form);
}

std::vector<EnergyLevel> spectrum(const DiracConstants &dc,
                                  const PotentialParams &p,
                                  const SolverConfig &cfg) {
  p.validate();
  switch (p.regime()) {
  case Regime::singular:
    return closed_form_spectrum(dc, p, cfg, Method::closed_form_q_ge_1);
  case Regime::regular:
    return solve_q_lt_1(dc, p, cfg);
  case Regime::morse:
    return solve_morse_exact(dc, p, cfg);
  }
  return {};
}

} // namespace qdeform
