#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "ymhd/errors.hpp"

namespace ymhd {

using Complex = std::complex<double>;
using Mat2c = Eigen::Matrix2cd;
using Vec2c = Eigen::Vector2cd;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

enum class GroupKind { U1, SU2 };

std::string group_name(GroupKind k);
GroupKind group_from_name(const std::string& name);

/// Element of the structure algebra, stored as a 2x2 anti-Hermitian matrix.
/// For U(1) only the (0,0) entry is used (a purely imaginary scalar); the
/// unused block stays zero so that all matrix algebra is uniform.
struct LieAlgebraElement {
  GroupKind group;
  Mat2c m;
};

/// Group element as a 2x2 unitary matrix; U(1) elements sit in the (0,0)
/// entry with a 1 in the (1,1) slot.
struct GroupElement {
  GroupKind group;
  Mat2c m;
};

// The two structure groups acting on the sphere fiber S^2 in R^3:
//   U(1): rotation about the z-axis, generator i <-> J_z.
//   SU(2): adjoint action on su(2) ~ R^3, i.e. the double cover of SO(3).
//
// Algebra elements are expanded in a fixed basis eps_a; su(2) uses
// eps_a = -(i/2) sigma_a, which is orthonormal for <x,y> = -2 tr(xy) and has
// cross-product structure constants, so coefficient-space brackets and
// Killing fields are both plain cross products.
class Group {
 public:
  static const Group& get(GroupKind k);

  GroupKind kind() const { return kind_; }
  int dim() const { return dim_; }          // dim of the algebra: 1 or 3
  int matrix_dim() const { return kind_ == GroupKind::U1 ? 1 : 2; }

  const Mat2c& basis(int a) const { return basis_[a]; }
  double gram(int a) const { return gram_[a]; }  // <eps_a, eps_a>

  LieAlgebraElement algebra(const Vec3& coeff) const;
  GroupElement element(const Mat2c& m) const { return {kind_, m}; }
  GroupElement identity() const;

  /// Coefficients of an algebra element (assumes m is in the algebra).
  Vec3 coefficients(const Mat2c& m) const;
  /// Orthogonal projection of an arbitrary matrix onto the algebra,
  /// returned as basis coefficients. Used for discrete Maurer-Cartan data.
  Vec3 project_to_algebra(const Mat2c& m) const;

  /// Structure constants in coefficient space: [x, y]^c.
  Vec3 bracket_c(const Vec3& x, const Vec3& y) const;
  /// <x, y>_g in coefficient space (Gram-weighted dot product).
  double inner_c(const Vec3& x, const Vec3& y) const;

  /// Adjoint action on algebra coefficients.
  Vec3 ad_c(const GroupElement& g, const Vec3& x) const;

  /// Action of g on the ambient R^3 of the fiber (SO(3) matrix).
  Mat3 fiber_rotation(const GroupElement& g) const;
  /// Generator of the fiber action for algebra coefficients xi:
  /// d/dt fiber_rotation(exp(t xi)) at t=0, a skew 3x3 matrix.
  Mat3 killing_generator(const Vec3& xi) const;
  /// killing_generator(xi) * v without forming the matrix.
  Vec3 killing_apply(const Vec3& xi, const Vec3& v) const;

  GroupElement exp(const Vec3& xi) const;

 private:
  explicit Group(GroupKind k);

  GroupKind kind_;
  int dim_;
  Mat2c basis_[3];
  double gram_[3];
};

inline GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  if (a.group != b.group) throw StructuralError("group mismatch in product");
  return {a.group, a.m * b.m};
}

inline GroupElement inverse(const GroupElement& g) {
  return {g.group, g.m.adjoint()};
}

// --- spec-level algebra operations on matrix form ---

/// xy - yx.
LieAlgebraElement bracket(const LieAlgebraElement& x, const LieAlgebraElement& y);

/// Ad-invariant inner product, normalized as -2 tr(xy).
double inner_g(const LieAlgebraElement& x, const LieAlgebraElement& y);

/// Consistency guards used by constructors in tests and IO paths.
bool is_anti_hermitian(const Mat2c& m, double tol = 1e-12);
bool is_unitary(const Mat2c& m, double tol = 1e-12);

}  // namespace ymhd
