#include "qdeform/error.hpp"
#include "qdeform/special.hpp"
#include "oracles/frozen_values.hpp"
#include "support/gen.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace qdeform;
using namespace qdeform::sf;

namespace {

// Plain term-by-term sum, for |z| well inside the unit disc.
double brute_2f1(double a, double b, double c, double z) {
  long double term = 1, sum = 1;
  for (int k = 0; k < 4000; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0L)) * z;
    sum += term;
    if (std::fabs(static_cast<double>(term)) < 1e-22L * std::fabs(static_cast<double>(sum)))
      break;
  }
  return static_cast<double>(sum);
}

double brute_1f1(double a, double c, double z) {
  long double term = 1, sum = 1;
  for (int k = 0; k < 4000; ++k) {
    term *= (a + k) / ((c + k) * (k + 1.0L)) * z;
    sum += term;
    if (std::fabs(static_cast<double>(term)) < 1e-22L * std::fabs(static_cast<double>(sum)) && k > -a)
      break;
  }
  return static_cast<double>(sum);
}

} // namespace

TEST_CASE("ln_gamma against frozen values and lgamma") {
  for (const auto &c : frozen::kLgamma)
    CHECK(ln_gamma(c.x) == doctest::Approx(c.value).epsilon(2e-14).scale(1.0));
  testgen::Gen g(21);
  for (int i = 0; i < 2000; ++i) {
    const double x = g.log_uniform(1e-3, 150.0);
    CHECK(ln_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-13).scale(1.0));
  }
  CHECK_THROWS_AS(ln_gamma(0.0), DomainError);
  CHECK_THROWS_AS(ln_gamma(-1.5), DomainError);
}

TEST_CASE("2F1 against frozen values") {
  for (const auto &c : frozen::kHyp2f1) {
    INFO("a=" << c.a << " b=" << c.b << " c=" << c.c << " z=" << c.z);
    CHECK(gauss_2f1(c.a, c.b, c.c, c.z) == doctest::Approx(c.value).epsilon(1e-11));
  }
}

TEST_CASE("2F1 closed forms") {
  for (double z : {-0.9, -0.3, 0.2, 0.6, 0.95}) {
    // 2F1(1, 1; 2; z) = -ln(1 - z)/z
    CHECK(gauss_2f1(1, 1, 2, z) == doctest::Approx(-std::log1p(-z) / z).epsilon(1e-13));
    // 2F1(a, b; b; z) = (1 - z)^-a
    CHECK(gauss_2f1(0.7, 2.3, 2.3, z) == doctest::Approx(std::pow(1 - z, -0.7)).epsilon(1e-12));
  }
  // z = 0 and a = 0
  CHECK(gauss_2f1(3.3, 1.2, 0.4, 0.0) == 1.0);
  CHECK(gauss_2f1(0.0, 1.2, 0.4, 0.9) == 1.0);
}

TEST_CASE("2F1 matches the brute-force sum for |z| <= 0.7") {
  testgen::Gen g(22);
  for (int i = 0; i < 500; ++i) {
    const double a = g.uniform(-3.5, 4), b = g.uniform(-3.5, 4);
    const double c = g.uniform(0.3, 6), z = g.uniform(-0.7, 0.7);
    const double ref = brute_2f1(a, b, c, z);
    CHECK(gauss_2f1(a, b, c, z) == doctest::Approx(ref).epsilon(1e-10).scale(std::fabs(ref) + 1e-3));
  }
}

TEST_CASE("2F1 symmetric in a, b and Pfaff / Euler consistent") {
  testgen::Gen g(23);
  for (int i = 0; i < 300; ++i) {
    const double a = g.uniform(0.1, 3), b = g.uniform(0.1, 3);
    const double c = g.uniform(0.5, 5), z = g.uniform(-3, 0.95);
    const double v = gauss_2f1(a, b, c, z);
    CHECK(gauss_2f1(b, a, c, z) == doctest::Approx(v).epsilon(1e-12));
    // Euler: 2F1(a,b;c;z) = (1-z)^{c-a-b} 2F1(c-a, c-b; c; z)
    const double euler = std::pow(1 - z, c - a - b) * gauss_2f1(c - a, c - b, c, z);
    CHECK(euler == doctest::Approx(v).epsilon(1e-9).scale(std::fabs(v) + 1e-6));
  }
}

TEST_CASE("2F1 at z = 1 is the Gauss sum") {
  const double a = 0.3, b = 0.8, c = 2.4;
  const double gauss = std::exp(ln_gamma(c) + ln_gamma(c - a - b) - ln_gamma(c - a) -
                                ln_gamma(c - b));
  CHECK(gauss_2f1(a, b, c, 1.0) == doctest::Approx(gauss).epsilon(1e-13));
  CHECK(gauss_2f1(a, b, c, 1.0 - 1e-9) == doctest::Approx(gauss).epsilon(1e-7));
  CHECK_THROWS_AS(gauss_2f1(1.5, 1.0, 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(gauss_2f1(0.5, 0.5, 1.0, 1.2), DomainError);
}

TEST_CASE("2F1 across an integer c - a - b is continuous") {
  // c - a - b = 1 exactly, and 1 +- 1e-7
  const double a = 1.3, b = 2.4;
  const double mid = gauss_2f1(a, b, a + b + 1.0, 0.8);
  CHECK(gauss_2f1(a, b, a + b + 1.0 + 1e-7, 0.8) == doctest::Approx(mid).epsilon(1e-6));
  CHECK(gauss_2f1(a, b, a + b + 1.0 - 1e-7, 0.8) == doctest::Approx(mid).epsilon(1e-6));
  const double zero = gauss_2f1(0.5, 0.5, 1.0, 0.9);
  CHECK(gauss_2f1(0.5, 0.5, 1.0 + 3e-8, 0.9) == doctest::Approx(zero).epsilon(1e-6));
}

TEST_CASE("complement form keeps precision near z = 1") {
  testgen::Gen g(24);
  for (int i = 0; i < 200; ++i) {
    const double a = g.uniform(0.2, 3), b = g.uniform(0.2, 3), c = g.uniform(0.5, 5);
    const double w = g.uniform(0.05, 0.45);
    const ScaledValue direct = gauss_2f1_scaled(a, b, c, 1.0 - w);
    const ScaledValue comp = gauss_2f1_complement_scaled(a, b, c, w);
    CHECK(comp.value() == doctest::Approx(direct.value()).epsilon(1e-9).scale(std::fabs(direct.value()) + 1e-6));
  }
  // w below double resolution of 1 - w: the value still follows the w-power law
  const double a = 1.2, b = 1.7, c = 2.1; // c - a - b = -0.8
  const double w1 = 1e-20, w2 = 2e-20;
  const double ratio = gauss_2f1_complement_scaled(a, b, c, w2).value() /
                       gauss_2f1_complement_scaled(a, b, c, w1).value();
  CHECK(ratio == doctest::Approx(std::pow(2.0, -0.8)).epsilon(1e-9));
}

TEST_CASE("2F1 scaled form survives overflow of the plain value") {
  const ScaledValue v = gauss_2f1_complement_scaled(40.0, 60.0, 3.0, 1e-300);
  CHECK(v.sign() == 1);
  CHECK(v.exponent > 1024);
  CHECK(std::isinf(v.value()));
}

TEST_CASE("2F1 poles and termination") {
  CHECK_THROWS_AS(gauss_2f1(0.5, 0.7, -2.0, 0.3), PoleError);
  // the series stops at k = 2 before reaching the pole at k = 3
  // 1 + (-2)(1)/(-3) z + (-2)(-1)(1)(2)/((-3)(-2) 2!) z^2 at z = 1/2
  CHECK(gauss_2f1(-2.0, 1.0, -3.0, 0.5) == doctest::Approx(17.0 / 12.0).epsilon(1e-14));
  // terminating series is exact for any z, including z > 1 of the polynomial
  CHECK(gauss_2f1(-1.0, 2.0, 4.0, 0.5) == doctest::Approx(0.75));
}

TEST_CASE("1F1 against frozen values") {
  for (const auto &c : frozen::kHyp1f1) {
    INFO("a=" << c.a << " c=" << c.c << " z=" << c.z);
    CHECK(kummer_1f1(c.a, c.c, c.z) == doctest::Approx(c.value).epsilon(1e-11));
  }
}

TEST_CASE("1F1 terminating example") {
  // 1 - 2*3/1.5 + (-2)(-1)/(1.5*2.5) * 9/2 = 1 - 4 + 2.4
  CHECK(kummer_1f1(-2.0, 1.5, 3.0) == doctest::Approx(-0.6).epsilon(1e-14));
}

TEST_CASE("1F1 identities") {
  testgen::Gen g(25);
  for (int i = 0; i < 400; ++i) {
    const double a = g.uniform(-3, 4), c = g.uniform(0.3, 6), z = g.uniform(-20, 20);
    const double v = kummer_1f1(a, c, z);
    // Kummer: 1F1(a; c; z) = e^z 1F1(c - a; c; -z)
    const double k = std::exp(z) * kummer_1f1(c - a, c, -z);
    CHECK(k == doctest::Approx(v).epsilon(1e-9).scale(std::fabs(v) + 1e-9 * std::exp(std::max(z, 0.0))));
  }
  for (double z : {-3.0, 0.5, 7.0}) {
    CHECK(kummer_1f1(2.5, 2.5, z) == doctest::Approx(std::exp(z)).epsilon(1e-13));
    CHECK(kummer_1f1(1.0, 2.0, z) == doctest::Approx(std::expm1(z) / z).epsilon(1e-13));
  }
  CHECK(kummer_1f1(0.4, 1.2, 0.0) == 1.0);
  CHECK_THROWS_AS(kummer_1f1(0.5, -1.0, 2.0), PoleError);
}

TEST_CASE("1F1 matches the brute-force sum") {
  testgen::Gen g(26);
  for (int i = 0; i < 400; ++i) {
    const double a = g.uniform(-4, 4), c = g.uniform(0.3, 6), z = g.uniform(0, 15);
    const double ref = brute_1f1(a, c, z);
    CHECK(kummer_1f1(a, c, z) == doctest::Approx(ref).epsilon(1e-10).scale(std::fabs(ref) + 1e-6));
  }
}

TEST_CASE("1F1 scaled value for huge arguments") {
  const ScaledValue v = kummer_1f1_scaled(0.5, 1.5, 2000.0);
  // ~ Gamma(c)/Gamma(a) e^z z^{a-c}
  const double log_expected = ln_gamma(1.5) - ln_gamma(0.5) + 2000.0 - std::log(2000.0);
  const double log_got = std::log(v.mantissa) + v.exponent * std::numbers::ln2;
  CHECK(log_got == doctest::Approx(log_expected).epsilon(1e-6));
}

TEST_CASE("Jacobi polynomials") {
  for (const auto &c : frozen::kJacobi)
    CHECK(jacobi_p(c.n, c.alpha, c.beta, c.x) == doctest::Approx(c.value).epsilon(1e-12));
  testgen::Gen g(27);
  for (int i = 0; i < 300; ++i) {
    const double al = g.uniform(-0.9, 4), be = g.uniform(-0.9, 4), x = g.uniform(-1, 1);
    CHECK(jacobi_p(0, al, be, x) == 1.0);
    CHECK(jacobi_p(1, al, be, x) ==
          doctest::Approx(0.5 * (al - be) + 0.5 * (al + be + 2) * x).epsilon(1e-12).scale(1.0));
    // three-term recurrence for n = 2
    const double n = 2;
    const double p1 = jacobi_p(1, al, be, x), p0 = 1.0;
    const double s = 2 * n + al + be;
    const double lhs = 2 * n * (n + al + be) * (s - 2) * jacobi_p(2, al, be, x);
    const double rhs = (s - 1) * ((s) * (s - 2) * x + al * al - be * be) * p1 -
                       2 * (n + al - 1) * (n + be - 1) * s * p0;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10).scale(std::fabs(rhs) + 1.0));
    // P_n^{(a,b)}(1) = binom(n + a, n)
    CHECK(jacobi_p(3, al, be, 1.0) ==
          doctest::Approx((al + 1) * (al + 2) * (al + 3) / 6.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(jacobi_p(-1, 0.5, 0.5, 0.0), DomainError);
  CHECK_THROWS_AS(jacobi_p(2, -1.5, 0.5, 0.0), DomainError);
}

TEST_CASE("confluent limit residual shrinks as beta grows") {
  const double r3 = confluent_limit_residual(-0.3, 2.5, 1.7, 1e3);
  const double r6 = confluent_limit_residual(-0.3, 2.5, 1.7, 1e6);
  CHECK(r3 > 0.0);
  CHECK(r3 / r6 >= 1e2);
  CHECK_THROWS_AS(confluent_limit_residual(0.5, 1.5, 3.0, 2.0), DomainError);
}
