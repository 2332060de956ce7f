#include "ymhd/euler_lagrange.hpp"

#include <cmath>

namespace ymhd {

namespace {

/// Unprojected combination D_dir u + K_{A_dir}(u) used by the u-gradient.
OneFormOf<Vec3> raw_vertical(const DiscreteDomain& dom, const GaugeField& A,
                             const SectionField& u) {
  const Group& grp = Group::get(A.group);
  OneFormOf<Vec3> q(u.n());
  for (int dir = 0; dir < 2; ++dir) {
    VecField du = central_diff(dom, u.u, dir);
    for (size_t k = 0; k < du.size(); ++k)
      q.c[dir].v[k] = du.v[k] + grp.killing_apply(A.a.c[dir].v[k], u.u.v[k]);
  }
  return q;
}

}  // namespace

OneFormOf<Vec3> q_psi(const DiscreteDomain& dom, GroupKind kind, const SectionField& u,
                      const TwistedSpinorField& psi) {
  (void)dom;
  const Group& grp = Group::get(kind);
  const Clifford& cl = standard_clifford();
  if (max_tangency_violation(u, psi) > 1e-6)
    throw DomainError("q_psi: spinor is not tangent along the section");
  OneFormOf<Vec3> q(psi.n(), Vec3::Zero());
  for (size_t k = 0; k < psi.psi.size(); ++k) {
    const SpinorMat& m = psi.psi.v[k];
    for (int dir = 0; dir < 2; ++dir)
      for (int a = 0; a < grp.dim(); ++a) {
        Vec3 ea = Vec3::Zero();
        ea[a] = 1.0;
        const Mat3 l = grp.killing_generator(ea);
        const SpinorMat lm = cl.g[dir] * (m * l.transpose().cast<Complex>());
        q.c[dir].v[k][a] = (m.conjugate().cwiseProduct(lm)).sum().real() / grp.gram(a);
      }
  }
  return q;
}

OneFormOf<Vec3> residual_A(const DiscreteDomain& dom, const FieldState& s,
                           const ActionParams& p) {
  const Group& grp = Group::get(s.A.group);
  const int n = s.n();
  OneFormOf<Vec3> res(n, Vec3::Zero());

  // curvature part: gradient of sum <W F, F> with W = ym_scale exp(-2 lambda)
  CoeffField f = curvature(dom, s.A);
  CoeffField g(n);
  const bool flat = dom.flat();
  for (size_t k = 0; k < g.size(); ++k) {
    const double w = p.ym_scale * (flat ? 1.0 : std::exp(-2.0 * dom.conformal_exponent[k]));
    g.v[k] = w * f.v[k];
  }
  CoeffField dyg = central_diff(dom, g, 1);
  CoeffField dxg = central_diff(dom, g, 0);
  for (size_t k = 0; k < g.size(); ++k) {
    res.c[0].v[k] = 2.0 * (dyg.v[k] + grp.bracket_c(s.A.a.c[1].v[k], g.v[k]));
    res.c[1].v[k] = -2.0 * (dxg.v[k] + grp.bracket_c(s.A.a.c[0].v[k], g.v[k]));
  }

  // section part: 2 <K_{eps_a}(u), d_A u> per basis element
  OneFormOf<Vec3> d = vertical_differential(dom, s.A, s.u);
  for (int dir = 0; dir < 2; ++dir)
    for (size_t k = 0; k < g.size(); ++k) {
      const Vec3& y = s.u.u.v[k];
      for (int a = 0; a < grp.dim(); ++a) {
        Vec3 ea = Vec3::Zero();
        ea[a] = 1.0;
        const double val = 2.0 * grp.killing_apply(ea, y).dot(d.c[dir].v[k]);
        res.c[dir].v[k][a] += val / grp.gram(a);
      }
    }

  // spinor part
  if (l2_norm(dom, s.psi) > 0.0) {
    OneFormOf<Vec3> q = q_psi(dom, s.A.group, s.u, s.psi);
    for (int dir = 0; dir < 2; ++dir)
      for (size_t k = 0; k < g.size(); ++k) res.c[dir].v[k] += q.c[dir].v[k];
  }
  return res;
}

VecField curvature_coupling(const DiscreteDomain& dom, const SectionField& u,
                            const GaugeField& A, const TwistedSpinorField& psi) {
  if (max_tangency_violation(u, psi) > 1e-6)
    throw DomainError("curvature_coupling: spinor is not tangent along the section");
  const Group& grp = Group::get(A.group);
  const Clifford& cl = standard_clifford();
  VecField out(u.n(), Vec3::Zero());
  TwistedField dx = central_diff(dom, psi.psi, 0);
  TwistedField dy = central_diff(dom, psi.psi, 1);
  const TwistedField* der[2] = {&dx, &dy};
  for (size_t k = 0; k < out.size(); ++k) {
    const Vec3& y = u.u.v[k];
    const SpinorMat& m = psi.psi.v[k];
    Vec3 grad = Vec3::Zero();
    for (int dir = 0; dir < 2; ++dir) {
      const Mat3 l = grp.killing_generator(A.a.c[dir].v[k]);
      const SpinorMat vfull = der[dir]->v[k] + m * l.transpose().cast<Complex>();
      const Vec2c vu = vfull * y.cast<Complex>();
      const Vec2c gvu = cl.g[dir] * vu;
      // two equal contributions: the projector variation inside the operator
      // and the normal part of the unprojected operator against the moving
      // tangency constraint of psi
      for (int i = 0; i < 3; ++i)
        grad[i] -= 2.0 * (m.col(i).dot(gvu)).real();  // Eigen dot conjugates m
    }
    out.v[k] = project_tangent(y, grad);
  }
  return out;
}

VecField residual_u(const DiscreteDomain& dom, const FieldState& s,
                    const ActionParams& p) {
  (void)p;
  const Group& grp = Group::get(s.A.group);
  const int n = s.n();
  OneFormOf<Vec3> q = raw_vertical(dom, s.A, s.u);
  OneFormOf<Vec3> d(n);
  ScalarField c[2] = {ScalarField(n, 0.0), ScalarField(n, 0.0)};
  for (int dir = 0; dir < 2; ++dir)
    for (size_t k = 0; k < q.c[dir].size(); ++k) {
      const Vec3& y = s.u.u.v[k];
      c[dir].v[k] = q.c[dir].v[k].dot(y);
      d.c[dir].v[k] = q.c[dir].v[k] - c[dir].v[k] * y;
    }

  VecField res(n, Vec3::Zero());
  for (int dir = 0; dir < 2; ++dir) {
    VecField div = central_diff(dom, d.c[dir], dir);
    for (size_t k = 0; k < res.size(); ++k) {
      res.v[k] -= 2.0 * div.v[k];
      res.v[k] -= 2.0 * grp.killing_apply(s.A.a.c[dir].v[k], d.c[dir].v[k]);
      res.v[k] -= 2.0 * c[dir].v[k] * d.c[dir].v[k];
    }
  }

  const bool with_psi = l2_norm(dom, s.psi) > 0.0;
  VecField cc;
  if (with_psi) cc = curvature_coupling(dom, s.u, s.A, s.psi);
  for (size_t k = 0; k < res.size(); ++k) {
    if (with_psi) res.v[k] += cc.v[k];
    res.v[k] = project_tangent(s.u.u.v[k], res.v[k]);
  }
  return res;
}

TwistedSpinorField residual_psi(const DiscreteDomain& dom, const FieldState& s) {
  return twisted_dirac(dom, s.A, s.u, s.psi);
}

double gauge_l2_inner(const DiscreteDomain& dom, GroupKind kind,
                      const OneFormOf<Vec3>& a, const OneFormOf<Vec3>& b) {
  const Group& grp = Group::get(kind);
  double s = 0.0;
  for (int dir = 0; dir < 2; ++dir)
    for (size_t k = 0; k < a.c[dir].size(); ++k)
      s += grp.inner_c(a.c[dir].v[k], b.c[dir].v[k]);
  return s * dom.h * dom.h;
}

double l2_norm(const DiscreteDomain& dom, const OneFormOf<Vec3>& a, GroupKind kind) {
  return std::sqrt(gauge_l2_inner(dom, kind, a, a));
}

double vec_l2_inner(const DiscreteDomain& dom, const VecField& a, const VecField& b) {
  double s = 0.0;
  for (size_t k = 0; k < a.size(); ++k) s += a.v[k].dot(b.v[k]);
  return s * dom.h * dom.h;
}

ResidualTriple residuals(const DiscreteDomain& dom, const FieldState& s,
                         const ActionParams& p) {
  ResidualTriple r;
  r.res_A = residual_A(dom, s, p);
  r.res_u = residual_u(dom, s, p);
  r.res_psi = residual_psi(dom, s);
  r.norm_A = l2_norm(dom, r.res_A, s.A.group);
  r.norm_u = l2_norm(dom, r.res_u);
  r.norm_psi = l4_norm(dom, r.res_psi);
  return r;
}

std::array<double, 3> residual_norms(const DiscreteDomain& dom, const FieldState& s,
                                     const ActionParams& p) {
  ResidualTriple r = residuals(dom, s, p);
  return {r.norm_A, r.norm_u, r.norm_psi};
}

}  // namespace ymhd
