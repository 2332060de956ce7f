#include "ymhd/fiber.hpp"

#include <cmath>

namespace ymhd {

FiberPoint make_fiber_point(const Vec3& coords, double tol) {
  if (std::abs(coords.norm() - 1.0) > tol)
    throw DomainError("fiber point is not on the unit sphere");
  return {coords};
}

TangentVector make_tangent(const FiberPoint& y, const Vec3& v, double tol) {
  if (std::abs(v.dot(y.coords)) > tol * (1.0 + v.norm()))
    throw DomainError("vector is not tangent at its base point");
  return {y, v};
}

TangentVector killing_field(const LieAlgebraElement& xi, const FiberPoint& y) {
  if (std::abs(y.coords.norm() - 1.0) > 1e-8)
    throw DomainError("killing_field: base point is not unit");
  const Group& g = Group::get(xi.group);
  return {y, g.killing_apply(g.coefficients(xi.m), y.coords)};
}

TangentVector d1d2mu(const LieAlgebraElement& xi, const TangentVector& w) {
  if (std::abs(w.vec.dot(w.base.coords)) > 1e-8 * (1.0 + w.vec.norm()))
    throw DomainError("d1d2mu: w is not tangent at its base point");
  const Group& g = Group::get(xi.group);
  const Vec3 lv = g.killing_apply(g.coefficients(xi.m), w.vec);
  return {w.base, project_tangent(w.base.coords, lv)};
}

Vec3 second_fundamental_form(const FiberPoint& y, const TangentVector& v,
                             const TangentVector& w) {
  if ((v.base.coords - y.coords).norm() > 1e-10 ||
      (w.base.coords - y.coords).norm() > 1e-10)
    throw DomainError("second_fundamental_form: mismatched base points");
  return -v.vec.dot(w.vec) * y.coords;
}

TangentVector curvature_N(const FiberPoint& y, const TangentVector& x,
                          const TangentVector& z, const TangentVector& w) {
  if ((x.base.coords - y.coords).norm() > 1e-10 ||
      (z.base.coords - y.coords).norm() > 1e-10 ||
      (w.base.coords - y.coords).norm() > 1e-10)
    throw DomainError("curvature_N: mismatched base points");
  return {y, z.vec.dot(w.vec) * x.vec - x.vec.dot(w.vec) * z.vec};
}

Vec3 fiber_exp_point(const Vec3& y, const Vec3& v) {
  const double t = v.norm();
  if (t < 1e-300) return y;
  Vec3 r = std::cos(t) * y + std::sin(t) * (v / t);
  return r / r.norm();
}

FiberPoint fiber_exp(const FiberPoint& y, const TangentVector& v) {
  return {fiber_exp_point(y.coords, v.vec)};
}

void tangent_frame(const Vec3& y, Vec3& e1, Vec3& e2) {
  // Pick whichever axis is least aligned with y, then Gram-Schmidt.
  Vec3 a = Vec3::UnitZ();
  if (std::abs(y[2]) > 0.9) a = Vec3::UnitX();
  e1 = project_tangent(y, a);
  e1 /= e1.norm();
  e2 = y.cross(e1);
}

}  // namespace ymhd
