#include "qdeform/deformed.hpp"
#include "qdeform/error.hpp"
#include "support/gen.hpp"

#include <doctest.h>

#include <cmath>

using namespace qdeform;

TEST_CASE("deformed functions reduce to the ordinary ones at q = 1") {
  for (double x : {-3.0, -0.4, 0.0, 0.7, 5.0}) {
    CHECK(sinh_q(x, 1.0) == doctest::Approx(std::sinh(x)).epsilon(1e-15));
    CHECK(cosh_q(x, 1.0) == doctest::Approx(std::cosh(x)).epsilon(1e-15));
    CHECK(tanh_q(x, 1.0) == doctest::Approx(std::tanh(x)).epsilon(1e-15));
  }
}

TEST_CASE("cosh_q^2 - sinh_q^2 = q") {
  testgen::Gen g(11);
  for (int i = 0; i < 2000; ++i) {
    const double q = g.uniform(0.0, 10.0);
    const double x = g.uniform(-4.0, 4.0);
    const double c = cosh_q(x, q), s = sinh_q(x, q);
    CHECK(c * c - s * s == doctest::Approx(q).epsilon(1e-12).scale(c * c));
  }
}

TEST_CASE("sinh_q is a shifted, scaled sinh for q > 0") {
  testgen::Gen g(12);
  for (int i = 0; i < 1000; ++i) {
    const double q = g.log_uniform(1e-4, 50.0);
    const double u = g.uniform(-3.0, 6.0);
    const double shift = 0.5 * std::log(q);
    CHECK(sinh_q(u, q) ==
          doctest::Approx(std::sqrt(q) * std::sinh(u - shift)).epsilon(1e-11).scale(cosh_q(u, q)));
    CHECK(cosh_q(u, q) ==
          doctest::Approx(std::sqrt(q) * std::cosh(u - shift)).epsilon(1e-12));
  }
}

TEST_CASE("no overflow for large arguments") {
  CHECK(std::isfinite(sinh_q(700.0, 3.0)));
  CHECK(tanh_q(800.0, 3.0) == 1.0);
  CHECK(tanh_q(-800.0, 3.0) == -1.0);
}

TEST_CASE("regimes and the singular point") {
  CHECK(PotentialParams{3, 1, 1, 0}.regime() == Regime::morse);
  CHECK(PotentialParams{3, 1, 1, 0.5}.regime() == Regime::regular);
  CHECK(PotentialParams{3, 1, 1, 1}.regime() == Regime::singular);
  CHECK(std::string(to_string(Regime::singular)) == "singular");

  const PotentialParams p{3, 1, 0.5, std::exp(2.0)};
  REQUIRE(singularity_radius(p).has_value());
  CHECK(*singularity_radius(p) == doctest::Approx(2.0));
  CHECK_FALSE(singularity_radius({3, 1, 1, 0.9}).has_value());
  CHECK(sinh_q(p.alpha * *singularity_radius(p), p.q) ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK(*singularity_radius({3, 1, 1, 1}) == 0.0);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(PotentialParams({1, 2, 1, 1}).validate(), DomainError);
  CHECK_THROWS_AS(PotentialParams({2, 1, 0, 1}).validate(), DomainError);
  CHECK_THROWS_AS(PotentialParams({2, 1, 1, -0.1}).validate(), DomainError);
  CHECK_THROWS_AS(PotentialParams({2, 0, 1, 1}).validate(), DomainError);
  CHECK_NOTHROW(PotentialParams({2, 1, 1, 0}).validate());
}

TEST_CASE("potential forms agree with the defining quotient") {
  testgen::Gen g(13);
  for (int i = 0; i < 2000; ++i) {
    const PotentialParams p{g.uniform(2, 30), g.uniform(0.1, 1.9), g.uniform(0.5, 2),
                            g.log_uniform(1e-3, 10)};
    const double r0 = shift_origin(p);
    const double r = std::max(r0, 0.0) + g.uniform(0.05, 6.0);
    const double direct = (p.v1 - p.v2 * cosh_q(p.alpha * r, p.q)) /
                          std::pow(sinh_q(p.alpha * r, p.q), 2);
    CHECK(potential_value(r, p) ==
          doctest::Approx(direct).epsilon(1e-11).scale(std::fabs(direct) + 1.0));
    CHECK(potential_at_offset(r - r0, p) ==
          doctest::Approx(direct).epsilon(1e-9).scale(std::fabs(direct) + 1.0));
  }
}

TEST_CASE("inverse-square core at r0 for q >= 1") {
  // x^2 V -> (V1/q - V2/sqrt q)/alpha^2 as x -> 0
  const PotentialParams p{7, 3, 1.3, 4};
  const double g = (p.v1 / p.q - p.v2 / std::sqrt(p.q)) / (p.alpha * p.alpha);
  for (double x : {1e-4, 1e-6, 1e-9}) {
    CHECK(x * x * potential_at_offset(x, p) == doctest::Approx(g).epsilon(1e-3));
  }
  CHECK_THROWS_AS(potential_value(0.1, p), DomainError);
  CHECK_THROWS_AS(potential_at_offset(0.0, p), DomainError);
  CHECK_THROWS_AS(potential_value(-1.0, {7, 3, 1, 0.5}), DomainError);
}

TEST_CASE("q = 0 is the Morse potential") {
  const PotentialParams p{25, 10, 1.2, 0};
  for (double r : {0.0, 0.3, 1.0, 4.0})
    CHECK(potential_value(r, p) == doctest::Approx(morse_value(r, 25, 10, 1.2)));
  // small q approaches Morse pointwise
  for (double r : {0.5, 1.0, 3.0}) {
    const double m = morse_value(r, 25, 10, 1.2);
    CHECK(potential_value(r, {25, 10, 1.2, 1e-8}) == doctest::Approx(m).epsilon(1e-6));
  }
}

TEST_CASE("Morse from well depth and equilibrium distance") {
  const auto [v1, v2] = morse_from_physical(2.0, 1.5, 0.8);
  // minimum of 4 V1 e^{-2ar} - 2 V2 e^{-ar} sits at re with depth -De
  const double re = std::log(4.0 * v1 / v2) / 0.8;
  CHECK(re == doctest::Approx(1.5));
  CHECK(morse_value(re, v1, v2, 0.8) == doctest::Approx(-2.0));
  CHECK_THROWS_AS(morse_from_physical(0.0, 1.0, 1.0), DomainError);
}
