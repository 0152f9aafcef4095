#pragma once
// Special functions used by the quantization conditions: log-gamma, the Gauss
// hypergeometric function 2F1, Kummer's 1F1 and Jacobi polynomials.
//
// Hypergeometric values can be astronomically large near z -> 1 (2F1) or for
// large z (1F1). The *_scaled variants return mantissa * 2^exponent so the
// root finders can work with signs and zeros without overflow.

namespace qdeform::sf {

struct ScaledValue {
  double mantissa = 0.0; //!< |mantissa| in [0.5, 1) unless the value is zero
  long exponent = 0;

  double value() const; //!< may overflow to +-inf
  int sign() const { return (mantissa > 0.0) - (mantissa < 0.0); }
};

//! ln Gamma(x) for x > 0 (Lanczos, g = 7). Throws DomainError for x <= 0.
double ln_gamma(double x);

//! Gauss series 2F1(a, b; c; z) for real z <= 1.
//!
//! Terminating series (a or b a non-positive integer) are summed exactly for
//! any z. Otherwise the direct series is used for |z| <= 1/2, the Pfaff
//! transformation for z < -1/2, and the connection formula in 1 - z for
//! 1/2 < z < 1 (evaluated in quad precision, with a symmetric parameter
//! perturbation when c - a - b is an integer). At z = 1 the Gauss sum is
//! returned when c - a - b > 0.
//!
//! Throws PoleError when c is a non-positive integer and the series does not
//! terminate first, ConvergenceError past 1e5 terms, DomainError for z > 1.
double gauss_2f1(double a, double b, double c, double z);
ScaledValue gauss_2f1_scaled(double a, double b, double c, double z);

//! 2F1(a, b; c; 1 - w) for 0 < w < 1/2 with w supplied directly, so that
//! arguments within rounding of z = 1 keep their full relative precision.
//! Falls back to gauss_2f1_scaled(a, b, c, 1 - w) outside that range.
ScaledValue gauss_2f1_complement_scaled(double a, double b, double c,
                                        double w);

//! Kummer's 1F1(a; c; z).
double kummer_1f1(double a, double c, double z);
ScaledValue kummer_1f1_scaled(double a, double c, double z);

//! Jacobi polynomial through its 2F1 representation
//!   P_n^(al,be)(x) = Gamma(n+al+1)/(n! Gamma(al+1)) 2F1(-n, n+al+be+1; al+1; (1-x)/2)
double jacobi_p(int n, double alpha, double beta, double x);

//! |2F1(alpha, beta; gamma; z/beta) - 1F1(alpha; gamma; z)|; tends to zero as
//! beta grows.
double confluent_limit_residual(double alpha, double gamma, double z,
                                double beta);

} // namespace qdeform::sf
