#pragma once

#include "ymhd/group.hpp"

namespace ymhd {

// The fiber is the unit sphere S^2 embedded in R^3 with the round metric.
// All tensors below are in ambient form; tangent data is kept tangent by
// explicit projection against the base point.

struct FiberPoint {
  Vec3 coords;
};

struct TangentVector {
  FiberPoint base;
  Vec3 vec;
};

/// v - <v, y>y.
inline Vec3 project_tangent(const Vec3& y, const Vec3& v) {
  return v - v.dot(y) * y;
}

FiberPoint make_fiber_point(const Vec3& coords, double tol = 1e-8);
TangentVector make_tangent(const FiberPoint& y, const Vec3& v, double tol = 1e-8);

/// Value at y of the Killing vector field generated by xi.
TangentVector killing_field(const LieAlgebraElement& xi, const FiberPoint& y);

/// Covariant derivative of the Killing field of xi along w; equals the
/// tangential projection of the linear generator applied to w. Skew-symmetric
/// in the fiber metric.
TangentVector d1d2mu(const LieAlgebraElement& xi, const TangentVector& w);

/// Second fundamental form of S^2 in R^3: -<v, w> y. Normal-valued.
Vec3 second_fundamental_form(const FiberPoint& y, const TangentVector& v,
                             const TangentVector& w);

/// Constant-curvature sphere: R(x, z)w = <z, w>x - <x, w>z.
TangentVector curvature_N(const FiberPoint& y, const TangentVector& x,
                          const TangentVector& z, const TangentVector& w);

/// Great-circle exponential map; returns a unit vector.
FiberPoint fiber_exp(const FiberPoint& y, const TangentVector& v);

/// Pointwise version used in field loops (v tangent at y, |y| = 1).
Vec3 fiber_exp_point(const Vec3& y, const Vec3& v);

/// Deterministic orthonormal tangent frame at y.
void tangent_frame(const Vec3& y, Vec3& e1, Vec3& e2);

}  // namespace ymhd
