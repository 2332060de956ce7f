#include "ymhd/fields.hpp"

#include <cmath>

namespace ymhd {

FieldState zero_state(GroupKind g, int n, const Vec3& base) {
  FieldState s;
  s.A = GaugeField(g, n);
  s.u = SectionField(n, base);
  s.psi = TwistedSpinorField(n);
  return s;
}

CoeffField curvature(const DiscreteDomain& dom, const GaugeField& A) {
  const Group& grp = Group::get(A.group);
  CoeffField dxAy = central_diff(dom, A.a.c[1], 0);
  CoeffField dyAx = central_diff(dom, A.a.c[0], 1);
  CoeffField f(A.n());
  for (size_t k = 0; k < f.size(); ++k)
    f.v[k] = dxAy.v[k] - dyAx.v[k] + grp.bracket_c(A.a.c[0].v[k], A.a.c[1].v[k]);
  return f;
}

OneFormOf<Vec3> vertical_differential(const DiscreteDomain& dom, const GaugeField& A,
                                      const SectionField& u) {
  const Group& grp = Group::get(A.group);
  OneFormOf<Vec3> d(u.n());
  for (int dir = 0; dir < 2; ++dir) {
    VecField du = central_diff(dom, u.u, dir);
    for (size_t k = 0; k < du.size(); ++k) {
      const Vec3& y = u.u.v[k];
      Vec3 q = du.v[k] + grp.killing_apply(A.a.c[dir].v[k], y);
      d.c[dir].v[k] = project_tangent(y, q);
    }
  }
  return d;
}

GaugeField apply_gauge_A(const DiscreteDomain& dom, const GaugeTransformation& g,
                         const GaugeField& A) {
  if (g.n() != A.n()) throw StructuralError("apply_gauge: size mismatch");
  const Group& grp = Group::get(A.group);
  GaugeField out(A.group, A.n());
  const double inv2h = 1.0 / (2.0 * dom.h);
  const int n = A.n();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const Mat2c& gij = g.g.at(i, j);
      const GroupElement ge{A.group, gij};
      const Mat2c ginv = gij.adjoint();
      for (int dir = 0; dir < 2; ++dir) {
        const int si = dir == 0 ? 1 : 0;
        const int sj = dir == 0 ? 0 : 1;
        // Ad_{g^-1} A + algebra projection of g^-1 (d0 g)
        Vec3 ad = grp.ad_c(inverse(ge), A.a.c[dir].at(i, j));
        Mat2c mc = ginv * (g.g.at(i + si, j + sj) - g.g.at(i - si, j - sj)) * inv2h;
        out.a.c[dir].at(i, j) = ad + grp.project_to_algebra(mc);
      }
    }
  return out;
}

FieldState apply_gauge(const DiscreteDomain& dom, const GaugeTransformation& g,
                       const FieldState& s) {
  if (g.n() != s.n()) throw StructuralError("apply_gauge: size mismatch");
  const Group& grp = Group::get(s.A.group);
  FieldState out;
  out.A = apply_gauge_A(dom, g, s.A);
  out.u = SectionField(s.n());
  out.psi = TwistedSpinorField(s.n());
  for (size_t k = 0; k < s.u.u.size(); ++k) {
    const GroupElement ge{s.A.group, g.g.v[k]};
    const Mat3 r = grp.fiber_rotation(inverse(ge));
    out.u.u.v[k] = r * s.u.u.v[k];
    // rotate the ambient slot of each spinor component: psi'_{s,i} = R_ij psi_{s,j}
    out.psi.psi.v[k] = s.psi.psi.v[k] * r.transpose().cast<Complex>();
  }
  return out;
}

GaugeTransformation compose(const GaugeTransformation& first,
                            const GaugeTransformation& then) {
  if (first.group != then.group || first.n() != then.n())
    throw StructuralError("compose: gauge mismatch");
  GaugeTransformation out(first.group, first.n());
  for (size_t k = 0; k < out.g.size(); ++k) out.g.v[k] = first.g.v[k] * then.g.v[k];
  return out;
}

double max_tangency_violation(const SectionField& u, const TwistedSpinorField& psi) {
  double worst = 0.0;
  for (size_t k = 0; k < psi.psi.size(); ++k) {
    const Vec2c dot = psi.psi.v[k] * u.u.v[k].cast<Complex>();
    worst = std::max(worst, std::max(std::abs(dot[0]), std::abs(dot[1])));
  }
  return worst;
}

void project_spinor_tangent(const SectionField& u, TwistedSpinorField& psi) {
  for (size_t k = 0; k < psi.psi.size(); ++k) {
    const Vec3& y = u.u.v[k];
    SpinorMat& m = psi.psi.v[k];
    const Vec2c dot = m * y.cast<Complex>();
    m -= dot * y.transpose().cast<Complex>();
  }
}

double max_unit_violation(const SectionField& u) {
  double worst = 0.0;
  for (const Vec3& y : u.u.v) worst = std::max(worst, std::abs(y.norm() - 1.0));
  return worst;
}

double l2_norm(const DiscreteDomain& dom, const GaugeField& A) {
  const Group& grp = Group::get(A.group);
  double s = 0.0;
  for (int dir = 0; dir < 2; ++dir)
    for (const Vec3& c : A.a.c[dir].v) s += grp.inner_c(c, c);
  return std::sqrt(s * dom.h * dom.h);
}

double l2_norm(const DiscreteDomain& dom, const VecField& w) {
  double s = 0.0;
  for (const Vec3& x : w.v) s += x.squaredNorm();
  return std::sqrt(s * dom.h * dom.h);
}

double pointwise_sq(const SpinorMat& m) { return m.squaredNorm(); }

double l2_norm(const DiscreteDomain& dom, const TwistedSpinorField& psi) {
  double s = 0.0;
  for (const SpinorMat& m : psi.psi.v) s += pointwise_sq(m);
  return std::sqrt(s * dom.h * dom.h);
}

double l4_norm(const DiscreteDomain& dom, const TwistedSpinorField& psi) {
  double s = 0.0;
  for (const SpinorMat& m : psi.psi.v) {
    const double p = pointwise_sq(m);
    s += p * p;
  }
  return std::pow(s * dom.h * dom.h, 0.25);
}

double w12_norm(const DiscreteDomain& dom, const GaugeField& A) {
  const Group& grp = Group::get(A.group);
  double s = 0.0;
  for (int dir = 0; dir < 2; ++dir) {
    for (const Vec3& c : A.a.c[dir].v) s += grp.inner_c(c, c);
    for (int dd = 0; dd < 2; ++dd) {
      CoeffField der = central_diff(dom, A.a.c[dir], dd);
      for (const Vec3& c : der.v) s += grp.inner_c(c, c);
    }
  }
  return std::sqrt(s * dom.h * dom.h);
}

}  // namespace ymhd
