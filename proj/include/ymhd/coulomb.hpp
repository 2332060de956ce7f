#pragma once

#include "ymhd/fields.hpp"

namespace ymhd {

struct CoulombResult {
  GaugeTransformation g;
  GaugeField A;
  bool converged = true;
  double final_residual = 0.0;  // max-norm of codiff1(A)
  int iterations = 0;
  bool monotone = true;  // ||A|| non-increasing over accepted steps
};

/// U(1) only: solves (codiff1 . d0) theta = -codiff1(A) by Fourier
/// diagonalization of the exact difference symbol and returns g = exp(i theta)
/// together with the divergence-free representative A + i d0(theta). The
/// returned field satisfies codiff1(A') = 0 to rounding and ||A'|| <= ||A||;
/// it matches apply_gauge(g, A) up to the O(h^2) slack of the discrete
/// Maurer-Cartan form.
CoulombResult coulomb_fix_abelian(const DiscreteDomain& dom, const GaugeField& A);

struct DescentOptions {
  double tol = 1e-6;       // target max-norm of codiff1(A)
  int max_iterations = 2000;
  bool precondition = true;  // Fourier-preconditioned descent direction
};

/// Any group: minimizes ||A^g||_{L^2}^2 over pointwise gauge transformations
/// by descent with backtracking line search. Monotone in the norm; stops at
/// the divergence tolerance or the iteration cap (converged=false then).
CoulombResult coulomb_fix_descent(const DiscreteDomain& dom, const GaugeField& A,
                                  const DescentOptions& opt = {});

}  // namespace ymhd
