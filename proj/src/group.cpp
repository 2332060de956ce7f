#include "ymhd/group.hpp"

#include <cmath>

namespace ymhd {

namespace {
const Complex I(0.0, 1.0);

Mat2c pauli(int a) {
  Mat2c s;
  switch (a) {
    case 0: s << 0, 1, 1, 0; break;
    case 1: s << 0, -I, I, 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}
}  // namespace

std::string group_name(GroupKind k) { return k == GroupKind::U1 ? "u1" : "su2"; }

GroupKind group_from_name(const std::string& name) {
  if (name == "u1") return GroupKind::U1;
  if (name == "su2") return GroupKind::SU2;
  throw ConfigError("unknown group '" + name + "' (expected u1 or su2)");
}

Group::Group(GroupKind k) : kind_(k) {
  if (k == GroupKind::U1) {
    dim_ = 1;
    basis_[0] = Mat2c::Zero();
    basis_[0](0, 0) = I;
    basis_[1] = basis_[2] = Mat2c::Zero();
    gram_[0] = 2.0;  // -2 tr(i*i) = 2
    gram_[1] = gram_[2] = 0.0;
  } else {
    dim_ = 3;
    for (int a = 0; a < 3; ++a) {
      basis_[a] = -0.5 * I * pauli(a);
      gram_[a] = 1.0;  // orthonormal under -2 tr(xy)
    }
  }
}

const Group& Group::get(GroupKind k) {
  static const Group u1(GroupKind::U1);
  static const Group su2(GroupKind::SU2);
  return k == GroupKind::U1 ? u1 : su2;
}

LieAlgebraElement Group::algebra(const Vec3& coeff) const {
  Mat2c m = Mat2c::Zero();
  for (int a = 0; a < dim_; ++a) m += coeff[a] * basis_[a];
  return {kind_, m};
}

GroupElement Group::identity() const {
  return {kind_, Mat2c::Identity()};
}

Vec3 Group::coefficients(const Mat2c& m) const {
  Vec3 c = Vec3::Zero();
  for (int a = 0; a < dim_; ++a)
    c[a] = -2.0 * (basis_[a] * m).trace().real() / gram_[a];
  return c;
}

Vec3 Group::project_to_algebra(const Mat2c& m) const {
  if (kind_ == GroupKind::U1) {
    Vec3 c = Vec3::Zero();
    c[0] = m(0, 0).imag();
    return c;
  }
  Mat2c skew = 0.5 * (m - m.adjoint());
  skew -= 0.5 * skew.trace() * Mat2c::Identity();
  return coefficients(skew);
}

Vec3 Group::bracket_c(const Vec3& x, const Vec3& y) const {
  if (kind_ == GroupKind::U1) return Vec3::Zero();
  return x.cross(y);
}

double Group::inner_c(const Vec3& x, const Vec3& y) const {
  double s = 0.0;
  for (int a = 0; a < dim_; ++a) s += gram_[a] * x[a] * y[a];
  return s;
}

Vec3 Group::ad_c(const GroupElement& g, const Vec3& x) const {
  if (kind_ == GroupKind::U1) return x;
  return coefficients(g.m * algebra(x).m * g.m.adjoint());
}

Mat3 Group::fiber_rotation(const GroupElement& g) const {
  Mat3 r;
  if (kind_ == GroupKind::U1) {
    const double th = std::arg(g.m(0, 0));
    const double c = std::cos(th), s = std::sin(th);
    r << c, -s, 0, s, c, 0, 0, 0, 1;
    return r;
  }
  for (int c = 0; c < 3; ++c)
    for (int b = 0; b < 3; ++b)
      r(c, b) = -2.0 * (basis_[c] * g.m * basis_[b] * g.m.adjoint()).trace().real();
  return r;
}

Mat3 Group::killing_generator(const Vec3& xi) const {
  Mat3 l = Mat3::Zero();
  if (kind_ == GroupKind::U1) {
    l(0, 1) = -xi[0];
    l(1, 0) = xi[0];
    return l;
  }
  l << 0, -xi[2], xi[1], xi[2], 0, -xi[0], -xi[1], xi[0], 0;
  return l;
}

Vec3 Group::killing_apply(const Vec3& xi, const Vec3& v) const {
  if (kind_ == GroupKind::U1) return Vec3(-xi[0] * v[1], xi[0] * v[0], 0.0);
  return xi.cross(v);
}

GroupElement Group::exp(const Vec3& xi) const {
  if (kind_ == GroupKind::U1) {
    Mat2c m = Mat2c::Identity();
    m(0, 0) = std::polar(1.0, xi[0]);
    return {kind_, m};
  }
  const double theta = xi.norm();
  if (theta < 1e-300) return identity();
  const Vec3 n = xi / theta;
  Mat2c ns = Mat2c::Zero();
  for (int a = 0; a < 3; ++a) ns += n[a] * pauli(a);
  return {kind_, std::cos(0.5 * theta) * Mat2c::Identity() -
                     I * std::sin(0.5 * theta) * ns};
}

LieAlgebraElement bracket(const LieAlgebraElement& x, const LieAlgebraElement& y) {
  if (x.group != y.group) throw StructuralError("group mismatch in bracket");
  return {x.group, x.m * y.m - y.m * x.m};
}

double inner_g(const LieAlgebraElement& x, const LieAlgebraElement& y) {
  if (x.group != y.group) throw StructuralError("group mismatch in inner_g");
  return -2.0 * (x.m * y.m).trace().real();
}

bool is_anti_hermitian(const Mat2c& m, double tol) {
  return (m + m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Mat2c& m, double tol) {
  return (m * m.adjoint() - Mat2c::Identity()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace ymhd
