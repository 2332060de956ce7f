#pragma once

#include "ymhd/domain.hpp"

namespace ymhd {

// Discrete differential operators on the periodic grid. All first derivatives
// are central differences, so d1(d0 f) = 0 holds exactly and every operator
// has an exact adjoint with respect to the plain grid inner product.

/// Central difference of an arbitrary field component in direction dir (0=x).
template <typename T>
Field<T> central_diff(const DiscreteDomain& dom, const Field<T>& f, int dir) {
  Field<T> out(f.n);
  const int si = dir == 0 ? 1 : 0;
  const int sj = dir == 0 ? 0 : 1;
  const double inv2h = 1.0 / (2.0 * dom.h);
  for (int j = 0; j < f.n; ++j)
    for (int i = 0; i < f.n; ++i)
      out.at(i, j) = (f.at(i + si, j + sj) - f.at(i - si, j - sj)) * inv2h;
  return out;
}

OneForm d0(const DiscreteDomain& dom, const ScalarField& f);
ScalarField d1(const DiscreteDomain& dom, const OneForm& a);
/// Codifferential of a 1-form (negative divergence); exact adjoint of d0.
ScalarField codiff1(const DiscreteDomain& dom, const OneForm& a);

/// codiff1 for algebra/vector coefficient 1-forms, componentwise.
CoeffField codiff1(const DiscreteDomain& dom, const OneFormOf<Vec3>& a);

/// integral with the conformal area element exp(2 lambda) h^2.
double integrate(const DiscreteDomain& dom, const ScalarField& f);

double l2_norm(const DiscreteDomain& dom, const ScalarField& f);
double l2_inner(const DiscreteDomain& dom, const ScalarField& f, const ScalarField& g);
double l2_inner(const DiscreteDomain& dom, const OneForm& a, const OneForm& b);

// --- flat spin structure ---

/// The two gamma matrices. Both anti-Hermitian, gamma_a gamma_b + gamma_b
/// gamma_a = -2 delta_ab. The minus sign makes the Dirac operator
/// self-adjoint rather than anti-self-adjoint.
struct Clifford {
  Mat2c g[2];
};

const Clifford& standard_clifford();
/// Deliberately wrong substitute used by the fault-injection hook of the
/// invariant checker.
Clifford corrupted_clifford();

Vec2c gamma(int direction, const Vec2c& psi);  // direction is 1 or 2

/// Flat Dirac operator sum_a gamma_a D_a with central differences.
SpinorField dirac_plain(const DiscreteDomain& dom, const SpinorField& psi);

double l2_inner_re(const DiscreteDomain& dom, const SpinorField& a, const SpinorField& b);
Complex l2_inner_c(const DiscreteDomain& dom, const SpinorField& a, const SpinorField& b);

}  // namespace ymhd
