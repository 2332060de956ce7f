#include "ymhd/action.hpp"

#include <cmath>

namespace ymhd {

ScalarField ym_density(const DiscreteDomain& dom, const GaugeField& A,
                       const ActionParams& p) {
  const Group& grp = Group::get(A.group);
  CoeffField f = curvature(dom, A);
  ScalarField out(A.n());
  const bool flat = dom.flat();
  for (size_t k = 0; k < out.size(); ++k) {
    double w = flat ? 1.0 : std::exp(-4.0 * dom.conformal_exponent[k]);
    out.v[k] = p.ym_scale * w * grp.inner_c(f.v[k], f.v[k]);
  }
  return out;
}

double yang_mills_energy(const DiscreteDomain& dom, const GaugeField& A,
                         const ActionParams& p) {
  return integrate(dom, ym_density(dom, A, p));
}

ScalarField higgs_density(const DiscreteDomain& dom, const GaugeField& A,
                          const SectionField& u) {
  OneFormOf<Vec3> d = vertical_differential(dom, A, u);
  ScalarField out(u.n());
  for (size_t k = 0; k < out.size(); ++k)
    out.v[k] = d.c[0].v[k].squaredNorm() + d.c[1].v[k].squaredNorm();
  return out;
}

double higgs_energy(const DiscreteDomain& dom, const GaugeField& A,
                    const SectionField& u) {
  // inverse-metric factor exp(-2 lambda) cancels the area element in 2D;
  // summed flat on purpose so the cancellation is exact.
  ScalarField den = higgs_density(dom, A, u);
  double s = 0.0;
  for (double x : den.v) s += x;
  return s * dom.h * dom.h;
}

TwistedSpinorField twisted_dirac(const DiscreteDomain& dom, const GaugeField& A,
                                 const SectionField& u, const TwistedSpinorField& psi) {
  if (max_tangency_violation(u, psi) > 1e-6)
    throw DomainError("twisted_dirac: spinor is not tangent along the section");
  const Clifford& cl = standard_clifford();
  const Group& grp = Group::get(A.group);
  TwistedSpinorField out(psi.n());
  TwistedField dx = central_diff(dom, psi.psi, 0);
  TwistedField dy = central_diff(dom, psi.psi, 1);
  for (size_t k = 0; k < out.psi.size(); ++k) {
    const Vec3& y = u.u.v[k];
    SpinorMat t = SpinorMat::Zero();
    const TwistedField* der[2] = {&dx, &dy};
    for (int dir = 0; dir < 2; ++dir) {
      // connection part: Killing generator acting on the ambient slot
      const Mat3 l = grp.killing_generator(A.a.c[dir].v[k]);
      SpinorMat v = der[dir]->v[k] + psi.psi.v[k] * l.transpose().cast<Complex>();
      t += cl.g[dir] * v;
    }
    const Vec2c dot = t * y.cast<Complex>();
    out.psi.v[k] = t - dot * y.transpose().cast<Complex>();
  }
  return out;
}

Complex twisted_inner_c(const DiscreteDomain& dom, const TwistedSpinorField& a,
                        const TwistedSpinorField& b) {
  Complex s(0, 0);
  for (size_t k = 0; k < a.psi.size(); ++k)
    s += (a.psi.v[k].conjugate().cwiseProduct(b.psi.v[k])).sum();
  return s * (dom.h * dom.h);
}

ScalarField dirac_density(const DiscreteDomain& dom, const GaugeField& A,
                          const SectionField& u, const TwistedSpinorField& psi) {
  TwistedSpinorField dpsi = twisted_dirac(dom, A, u, psi);
  ScalarField out(psi.n());
  for (size_t k = 0; k < out.size(); ++k)
    out.v[k] = (psi.psi.v[k].conjugate().cwiseProduct(dpsi.psi.v[k])).sum().real();
  return out;
}

double dirac_action(const DiscreteDomain& dom, const GaugeField& A,
                    const SectionField& u, const TwistedSpinorField& psi) {
  TwistedSpinorField dpsi = twisted_dirac(dom, A, u, psi);
  Complex pairing = twisted_inner_c(dom, psi, dpsi);
  const double scale = std::max(1.0, std::abs(pairing.real()));
  if (std::abs(pairing.imag()) > 1e-10 * scale)
    throw DomainError("dirac_action: pairing has a non-negligible imaginary part");
  return pairing.real();
}

ScalarField psi4_density(const DiscreteDomain& dom, const TwistedSpinorField& psi) {
  (void)dom;
  ScalarField out(psi.n());
  for (size_t k = 0; k < out.size(); ++k) {
    const double p = pointwise_sq(psi.psi.v[k]);
    out.v[k] = p * p;
  }
  return out;
}

double spinor_l4_energy(const DiscreteDomain& dom, const TwistedSpinorField& psi) {
  return integrate(dom, psi4_density(dom, psi));
}

ActionBreakdown action_total(const DiscreteDomain& dom, const FieldState& s,
                             const ActionParams& p) {
  ActionBreakdown b;
  b.yang_mills = yang_mills_energy(dom, s.A, p);
  b.higgs = higgs_energy(dom, s.A, s.u);
  b.dirac = dirac_action(dom, s.A, s.u, s.psi);
  b.total = b.yang_mills + b.higgs + b.dirac;
  b.spinor_l4 = spinor_l4_energy(dom, s.psi);
  return b;
}

}  // namespace ymhd
