#include "qdeform/mesh.hpp"
#include "qdeform/error.hpp"

#include <cmath>

namespace qdeform {

double softplus(double t) {
  return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double logistic(double t) {
  if (t >= 0.0)
    return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double softplus_inverse(double y) {
  if (!(y > 0.0))
    throw DomainError("softplus_inverse: argument must be positive");
  // ln(e^y - 1)
  return y > 30.0 ? y + std::log(-std::expm1(-y)) : std::log(std::expm1(y));
}

RadialMesh RadialMesh::spanning(double r_left, double scale, double x_min,
                                double x_max, std::size_t n) {
  if (!(scale > 0.0) || !(x_min > 0.0) || !(x_max > x_min) || n < 3)
    throw DomainError("RadialMesh: invalid extent");
  RadialMesh m;
  m.r_left = r_left;
  m.scale = scale;
  m.t_min = softplus_inverse(x_min / scale);
  const double t_max = softplus_inverse(x_max / scale);
  m.dt = (t_max - m.t_min) / static_cast<double>(n - 1);
  m.n = n;
  return m;
}

double RadialMesh::offset(std::size_t i) const { return scale * softplus(t(i)); }

double RadialMesh::jacobian(std::size_t i) const {
  return scale * logistic(t(i));
}

std::vector<double> RadialMesh::simpson_weights() const {
  std::vector<double> w(n, 0.0);
  const std::size_t intervals = n - 1;
  const std::size_t even = intervals - intervals % 2;
  for (std::size_t i = 0; i + 2 <= even; i += 2) {
    w[i] += dt / 3.0;
    w[i + 1] += 4.0 * dt / 3.0;
    w[i + 2] += dt / 3.0;
  }
  if (even != intervals) {
    w[n - 2] += 0.5 * dt;
    w[n - 1] += 0.5 * dt;
  }
  for (std::size_t i = 0; i < n; ++i)
    w[i] *= jacobian(i);
  return w;
}

} // namespace qdeform
