#pragma once

#include "ymhd/fiber.hpp"
#include "ymhd/operators.hpp"

namespace ymhd {

/// Gauge potential: algebra coefficients per node and frame direction,
/// units 1/length.
struct GaugeField {
  GroupKind group = GroupKind::U1;
  OneFormOf<Vec3> a;

  GaugeField() = default;
  GaugeField(GroupKind g, int n) : group(g), a(n, Vec3::Zero()) {}
  int n() const { return a.c[0].n; }
};

/// Section of the sphere bundle: one unit vector in R^3 per node.
struct SectionField {
  VecField u;
  SectionField() = default;
  explicit SectionField(int n, const Vec3& init = Vec3::UnitZ()) : u(n, init) {}
  int n() const { return u.n; }
};

/// Twisted spinor: 2-spinor tensor ambient R^3 per node, tangent along u.
struct TwistedSpinorField {
  TwistedField psi;
  TwistedSpinorField() = default;
  explicit TwistedSpinorField(int n) : psi(n, SpinorMat::Zero()) {}
  int n() const { return psi.n; }
};

struct GaugeTransformation {
  GroupKind group = GroupKind::U1;
  Field<Mat2c> g;
  GaugeTransformation() = default;
  GaugeTransformation(GroupKind k, int n) : group(k), g(n, Mat2c::Identity()) {}
  int n() const { return g.n; }
};

struct FieldState {
  GaugeField A;
  SectionField u;
  TwistedSpinorField psi;
  int n() const { return u.n(); }
};

FieldState zero_state(GroupKind g, int n, const Vec3& base = Vec3::UnitZ());

/// F_12 = D_x A_y - D_y A_x + [A_x, A_y] per node, algebra coefficients.
CoeffField curvature(const DiscreteDomain& dom, const GaugeField& A);

/// d_A u: per direction, tangential projection of D_a u + K_{A_a}(u).
OneFormOf<Vec3> vertical_differential(const DiscreteDomain& dom, const GaugeField& A,
                                      const SectionField& u);

FieldState apply_gauge(const DiscreteDomain& dom, const GaugeTransformation& g,
                       const FieldState& s);
GaugeField apply_gauge_A(const DiscreteDomain& dom, const GaugeTransformation& g,
                         const GaugeField& A);

GaugeTransformation compose(const GaugeTransformation& first,
                            const GaugeTransformation& then);

/// Worst violation of |<psi_s, u>| over nodes and spinor slots.
double max_tangency_violation(const SectionField& u, const TwistedSpinorField& psi);
/// Re-projection of every spinor slot onto the tangent plane at u.
void project_spinor_tangent(const SectionField& u, TwistedSpinorField& psi);
/// Worst deviation of |u| from 1.
double max_unit_violation(const SectionField& u);

// L^2 norms with the g-inner product / ambient metric, flat quadrature.
double l2_norm(const DiscreteDomain& dom, const GaugeField& A);
double l2_norm(const DiscreteDomain& dom, const VecField& w);
double l2_norm(const DiscreteDomain& dom, const TwistedSpinorField& psi);
double l4_norm(const DiscreteDomain& dom, const TwistedSpinorField& psi);

double pointwise_sq(const SpinorMat& m);

/// Sobolev-type norm used for gauge-fixing trend checks: sqrt(||A||^2 +
/// sum_dir ||D_dir A||^2).
double w12_norm(const DiscreteDomain& dom, const GaugeField& A);

}  // namespace ymhd
