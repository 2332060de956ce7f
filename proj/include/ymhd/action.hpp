#pragma once

#include "ymhd/fields.hpp"

namespace ymhd {

/// Overall weight of the curvature term relative to the section and spinor
/// terms. The algebra inner product fixes only an overall scale, so the
/// split between the curvature and section energies is a convention; it is
/// exposed here instead of being hard-wired.
struct ActionParams {
  double ym_scale = 1.0;
};

struct ActionBreakdown {
  double yang_mills = 0.0;
  double higgs = 0.0;
  double dirac = 0.0;
  double total = 0.0;
  double spinor_l4 = 0.0;  // integral of |psi|^4, the spinor energy
};

// Pointwise densities. The section density is the frame-contracted square of
// the vertical differential; in two dimensions its inverse-metric factor
// cancels the conformal area element identically, so it is stored flat and
// integrated flat. The curvature density carries the leftover exp(-2 lambda).
ScalarField ym_density(const DiscreteDomain& dom, const GaugeField& A,
                       const ActionParams& p = {});
ScalarField higgs_density(const DiscreteDomain& dom, const GaugeField& A,
                          const SectionField& u);
ScalarField psi4_density(const DiscreteDomain& dom, const TwistedSpinorField& psi);
/// Re<psi, D psi> per node.
ScalarField dirac_density(const DiscreteDomain& dom, const GaugeField& A,
                          const SectionField& u, const TwistedSpinorField& psi);

double yang_mills_energy(const DiscreteDomain& dom, const GaugeField& A,
                         const ActionParams& p = {});
double higgs_energy(const DiscreteDomain& dom, const GaugeField& A,
                    const SectionField& u);

/// Twisted Dirac operator on spinors along u: the tangential projection of
/// gamma_a (D_a psi + L_{A_a} psi). Self-adjoint for the flat L^2 pairing on
/// tangent fields and exactly anti-commuting with the chirality matrix.
TwistedSpinorField twisted_dirac(const DiscreteDomain& dom, const GaugeField& A,
                                 const SectionField& u, const TwistedSpinorField& psi);

/// Real part of the L^2 pairing <psi, D psi>; asserts that the imaginary
/// part is at rounding level.
double dirac_action(const DiscreteDomain& dom, const GaugeField& A,
                    const SectionField& u, const TwistedSpinorField& psi);

double spinor_l4_energy(const DiscreteDomain& dom, const TwistedSpinorField& psi);

ActionBreakdown action_total(const DiscreteDomain& dom, const FieldState& s,
                             const ActionParams& p = {});

/// Hermitian L^2 pairing of twisted spinor fields (flat quadrature).
Complex twisted_inner_c(const DiscreteDomain& dom, const TwistedSpinorField& a,
                        const TwistedSpinorField& b);

}  // namespace ymhd
