#include "ymhd/operators.hpp"

#include <cmath>

namespace ymhd {

OneForm d0(const DiscreteDomain& dom, const ScalarField& f) {
  OneForm out(f.n);
  out.c[0] = central_diff(dom, f, 0);
  out.c[1] = central_diff(dom, f, 1);
  return out;
}

ScalarField d1(const DiscreteDomain& dom, const OneForm& a) {
  ScalarField dxy = central_diff(dom, a.c[1], 0);
  ScalarField dyx = central_diff(dom, a.c[0], 1);
  ScalarField out(a.c[0].n);
  for (size_t k = 0; k < out.size(); ++k) out.v[k] = dxy.v[k] - dyx.v[k];
  return out;
}

ScalarField codiff1(const DiscreteDomain& dom, const OneForm& a) {
  ScalarField dx = central_diff(dom, a.c[0], 0);
  ScalarField dy = central_diff(dom, a.c[1], 1);
  ScalarField out(a.c[0].n);
  for (size_t k = 0; k < out.size(); ++k) out.v[k] = -(dx.v[k] + dy.v[k]);
  return out;
}

CoeffField codiff1(const DiscreteDomain& dom, const OneFormOf<Vec3>& a) {
  CoeffField dx = central_diff(dom, a.c[0], 0);
  CoeffField dy = central_diff(dom, a.c[1], 1);
  CoeffField out(a.c[0].n);
  for (size_t k = 0; k < out.size(); ++k) out.v[k] = -(dx.v[k] + dy.v[k]);
  return out;
}

double integrate(const DiscreteDomain& dom, const ScalarField& f) {
  const double cell = dom.h * dom.h;
  double s = 0.0;
  if (dom.flat()) {
    for (double x : f.v) s += x;
    return s * cell;
  }
  for (size_t k = 0; k < f.v.size(); ++k)
    s += f.v[k] * std::exp(2.0 * dom.conformal_exponent[k]);
  return s * cell;
}

double l2_inner(const DiscreteDomain& dom, const ScalarField& f, const ScalarField& g) {
  double s = 0.0;
  for (size_t k = 0; k < f.v.size(); ++k) s += f.v[k] * g.v[k];
  return s * dom.h * dom.h;
}

double l2_norm(const DiscreteDomain& dom, const ScalarField& f) {
  return std::sqrt(l2_inner(dom, f, f));
}

double l2_inner(const DiscreteDomain& dom, const OneForm& a, const OneForm& b) {
  return l2_inner(dom, a.c[0], b.c[0]) + l2_inner(dom, a.c[1], b.c[1]);
}

const Clifford& standard_clifford() {
  static const Clifford cl = [] {
    Clifford c;
    c.g[0] << 0, 1, -1, 0;
    c.g[1] << 0, Complex(0, 1), Complex(0, 1), 0;
    return c;
  }();
  return cl;
}

Clifford corrupted_clifford() {
  Clifford c = standard_clifford();
  c.g[1] << 0, Complex(0, 1), Complex(0, -1), 0;  // Hermitian: breaks the relation
  return c;
}

Vec2c gamma(int direction, const Vec2c& psi) {
  if (direction != 1 && direction != 2)
    throw StructuralError("gamma: direction must be 1 or 2");
  return standard_clifford().g[direction - 1] * psi;
}

SpinorField dirac_plain(const DiscreteDomain& dom, const SpinorField& psi) {
  const Clifford& cl = standard_clifford();
  SpinorField dx = central_diff(dom, psi, 0);
  SpinorField dy = central_diff(dom, psi, 1);
  SpinorField out(psi.n);
  for (size_t k = 0; k < out.size(); ++k)
    out.v[k] = cl.g[0] * dx.v[k] + cl.g[1] * dy.v[k];
  return out;
}

Complex l2_inner_c(const DiscreteDomain& dom, const SpinorField& a, const SpinorField& b) {
  Complex s(0, 0);
  for (size_t k = 0; k < a.v.size(); ++k) s += a.v[k].dot(b.v[k]);
  return s * (dom.h * dom.h);
}

double l2_inner_re(const DiscreteDomain& dom, const SpinorField& a, const SpinorField& b) {
  return l2_inner_c(dom, a, b).real();
}

}  // namespace ymhd
