#include "qdeform/effective.hpp"
#include "qdeform/error.hpp"
#include "support/gen.hpp"

#include <doctest.h>

#include <cmath>

using namespace qdeform;

TEST_CASE("E~ factorizes as (E - M)(E + M - C)") {
  testgen::Gen g(31);
  for (int i = 0; i < 10000; ++i) {
    const DiracConstants dc{g.uniform(0.1, 5), g.uniform(-2, 2)};
    const double e = g.uniform(-3, 3);
    const double expanded = e * e - dc.m * dc.m + dc.c_spin * (dc.m - e);
    CHECK(effective_eigenvalue(e, dc) ==
          doctest::Approx(expanded).epsilon(1e-15).scale(e * e + dc.m * dc.m + std::fabs(dc.c_spin * dc.m) + std::fabs(dc.c_spin * e)));
  }
}

TEST_CASE("window edges") {
  const DiracConstants dc{1, 0.3};
  const EnergyWindow w = bound_window(dc);
  CHECK(w.lo == doctest::Approx(-0.7));
  CHECK(w.hi == 1.0);
  CHECK(effective_eigenvalue(w.hi, dc) == 0.0);
  CHECK(effective_eigenvalue(w.lo, dc) == doctest::Approx(0.0).epsilon(1e-16));
  CHECK(effective_eigenvalue(0.5 * (w.lo + w.hi), dc) < 0.0);
  CHECK_THROWS_AS(bound_window({1, 2.0}), NonBindingError);
  CHECK_THROWS_AS(bound_window({0, 0}), NonBindingError);
}

TEST_CASE("a + b and c follow from lambda and eta") {
  testgen::Gen g(32);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    const DiracConstants dc = g.dirac();
    const PotentialParams p = g.potential(0.01, 0.99);
    const EnergyWindow w = bound_window(dc);
    const double e = g.uniform(w.lo + 1e-6, w.hi - 1e-6);
    ShapeParams sp;
    try {
      sp = shape_params(e, dc, p);
    } catch (const DomainError &) {
      continue;
    }
    const HypergeometricParams hp = hypergeometric_params(e, dc, p);
    CHECK(hp.a + hp.b == doctest::Approx(2 * (sp.eta + sp.lambda) + 0.5).epsilon(1e-15));
    CHECK(hp.c == doctest::Approx(2 * sp.eta + 1).epsilon(1e-15));
    CHECK(hp.c - hp.a - hp.b == doctest::Approx(0.5 - 2 * sp.lambda).epsilon(1e-14).scale(1.0));
    ++checked;
  }
  CHECK(checked > 5000);
}

TEST_CASE("shape parameters at a hand-checked point") {
  // M=1, C=0, E=0: P = 1, E~ = -1
  const DiracConstants dc{1, 0};
  const PotentialParams p{8, 2, 2, 4};
  const ShapeParams sp = shape_params(0.0, dc, p);
  // 1 + 4/4 (8/4 - 2/2) = 2
  CHECK(sp.lambda == doctest::Approx(0.25 * (1 + std::sqrt(2.0))));
  CHECK(sp.eta == doctest::Approx(0.5));
  // 1 + 4/(4*4) (8 + 2*2) = 4
  CHECK(outer_root(0.0, dc, p) == doctest::Approx(2.0));
  const Strengths s = effective_strengths(0.0, dc, p);
  CHECK(s.v1 == 8.0);
  CHECK(s.v2 == 2.0);
}

TEST_CASE("errors") {
  const DiracConstants dc{1, 0};
  CHECK_THROWS_AS(effective_strengths(-1.0, dc, {3, 1, 1, 1}), NonBindingError);
  CHECK_THROWS_AS(shape_params(1.0, dc, {3, 1, 1, 1}), NonBindingError);
  CHECK_THROWS_AS(shape_params(0.0, dc, {3, 1, 1, 0}), DomainError);
  // attractive core beyond the critical strength: complex lambda
  CHECK_THROWS_AS(shape_params(0.9, dc, {9, 10, 0.5, 1}), DomainError);
}

TEST_CASE("small-q forms approach the exact parameters") {
  const DiracConstants dc{1, 0.1};
  const PotentialParams p{25, 10, 1, 1e-8};
  const double e = 0.4;
  const MorseLimitParams lim = morse_limit_params(e, dc, p);
  const EffectiveParams ex = effective_params(e, dc, p);
  CHECK(lim.lambda_asymptotic == doctest::Approx(ex.lambda).epsilon(1e-3));
  CHECK(lim.a_limit == doctest::Approx(ex.a).epsilon(1e-3).scale(1.0));
  CHECK(ex.b / lim.b_growth == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(ex.e_tilde == doctest::Approx(effective_eigenvalue(e, dc)));
}
