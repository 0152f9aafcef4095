#pragma once
// Radial mesh r = r_left + s * ln(1 + e^t), uniform in t.
//
// Near the left boundary the spacing is geometric (r - r_left ~ s e^t), which
// resolves the power-law behaviour at r0 or 0 with a handful of points per
// decade; far away it is uniform with step s * dt.

#include <cstddef>
#include <vector>

namespace qdeform {

struct RadialMesh {
  double r_left = 0.0; //!< boundary the offsets are measured from
  double scale = 1.0;  //!< s, the tail spacing per unit t
  double t_min = 0.0;
  double dt = 0.0;
  std::size_t n = 0;

  //! Mesh whose offsets run from x_min to at least x_max with n points.
  static RadialMesh spanning(double r_left, double scale, double x_min,
                             double x_max, std::size_t n);

  double t(std::size_t i) const { return t_min + dt * static_cast<double>(i); }
  //! r - r_left, evaluated without cancellation.
  double offset(std::size_t i) const;
  double radius(std::size_t i) const { return r_left + offset(i); }
  //! dr/dt
  double jacobian(std::size_t i) const;
  //! Composite Simpson weights for integrals over r (jacobian included);
  //! a trailing odd interval is closed with the trapezoid rule.
  std::vector<double> simpson_weights() const;
};

//! ln(1 + e^t) without overflow.
double softplus(double t);
//! 1/(1 + e^-t)
double logistic(double t);
//! Inverse of softplus for y > 0.
double softplus_inverse(double y);

} // namespace qdeform
