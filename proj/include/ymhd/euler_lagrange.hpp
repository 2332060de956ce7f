#pragma once

#include <array>

#include "ymhd/action.hpp"

namespace ymhd {

/// The three first-variation residuals of the coupled action. Each residual
/// is the exact gradient of the discrete action with respect to its field,
/// for the L^2 pairings used throughout (algebra inner product for A,
/// ambient metric for u, real part of the Hermitian pairing for psi). Signs
/// and constant factors are therefore pinned by the finite-difference
/// directional derivative, not by hand.
struct ResidualTriple {
  OneFormOf<Vec3> res_A;   // algebra coefficients per direction
  VecField res_u;          // tangent at u per node
  TwistedSpinorField res_psi;
  double norm_A = 0.0;     // L^2
  double norm_u = 0.0;     // L^2
  double norm_psi = 0.0;   // L^4
};

/// A-gradient of the spinor pairing: per node, direction and basis element,
/// the pairing of psi against gamma_a applied to the Killing-rotated psi,
/// divided by the basis Gram factor. Quadratic in psi and frame-independent.
OneFormOf<Vec3> q_psi(const DiscreteDomain& dom, GroupKind kind, const SectionField& u,
                      const TwistedSpinorField& psi);

/// u-gradient of the spinor pairing (tangent at u). Tensorial in the
/// vertical differential: the continuum limit is the curvature contraction
/// <psi^i, gamma psi^j> R(., d_A u) of the sphere.
VecField curvature_coupling(const DiscreteDomain& dom, const SectionField& u,
                            const GaugeField& A, const TwistedSpinorField& psi);

OneFormOf<Vec3> residual_A(const DiscreteDomain& dom, const FieldState& s,
                           const ActionParams& p = {});
VecField residual_u(const DiscreteDomain& dom, const FieldState& s,
                    const ActionParams& p = {});
TwistedSpinorField residual_psi(const DiscreteDomain& dom, const FieldState& s);

ResidualTriple residuals(const DiscreteDomain& dom, const FieldState& s,
                         const ActionParams& p = {});

/// (||a||_L2, ||b||_L2, ||c||_L4).
std::array<double, 3> residual_norms(const DiscreteDomain& dom, const FieldState& s,
                                     const ActionParams& p = {});

double l2_norm(const DiscreteDomain& dom, const OneFormOf<Vec3>& a, GroupKind kind);

/// L^2 pairing of algebra-coefficient one-forms with the algebra inner
/// product; this is the pairing in which res_A is a gradient.
double gauge_l2_inner(const DiscreteDomain& dom, GroupKind kind,
                      const OneFormOf<Vec3>& a, const OneFormOf<Vec3>& b);

double vec_l2_inner(const DiscreteDomain& dom, const VecField& a, const VecField& b);

}  // namespace ymhd
