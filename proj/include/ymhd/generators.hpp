#pragma once

#include <random>

#include "ymhd/fields.hpp"

namespace ymhd {

// Continuum test fields: finite trigonometric sums that can be sampled onto
// grids of any resolution, so the same field supports convergence-order fits
// over h, h/2, h/4.

struct TrigTerm {
  double amp = 0.0;
  int mx = 0, my = 0;
  double phase = 0.0;
};

struct SmoothScalar {
  double L = 1.0;
  std::vector<TrigTerm> terms;

  double operator()(double x, double y) const;
  double dx(double x, double y) const;
  double dy(double x, double y) const;

  static SmoothScalar random(std::mt19937_64& rng, double L, int max_mode,
                             double amplitude);
};

ScalarField sample_scalar(const DiscreteDomain& dom, const SmoothScalar& f);

struct SmoothGauge {
  GroupKind kind = GroupKind::U1;
  SmoothScalar comp[2][3];  // direction x algebra coefficient

  static SmoothGauge random(std::mt19937_64& rng, GroupKind kind, double L,
                            int max_mode, double amplitude);
};

GaugeField sample_gauge(const DiscreteDomain& dom, const SmoothGauge& g);

struct SmoothSection {
  Vec3 base = Vec3::UnitZ();
  SmoothScalar v1, v2;  // tangent coordinates at base, pushed through fiber_exp

  static SmoothSection random(std::mt19937_64& rng, double L, int max_mode,
                              double amplitude);
};

SectionField sample_section(const DiscreteDomain& dom, const SmoothSection& s);

struct SmoothSpinor {
  SmoothScalar re[2][3], im[2][3];

  static SmoothSpinor random(std::mt19937_64& rng, double L, int max_mode,
                             double amplitude);
};

/// Sampled ambient spinor, tangentially projected along u.
TwistedSpinorField sample_spinor(const DiscreteDomain& dom, const SectionField& u,
                                 const SmoothSpinor& s);

struct SmoothGaugeTransform {
  GroupKind kind = GroupKind::U1;
  SmoothScalar xi[3];  // algebra coefficients; g = exp(xi(x))

  static SmoothGaugeTransform random(std::mt19937_64& rng, GroupKind kind, double L,
                                     int max_mode, double amplitude);
};

GaugeTransformation sample_gauge_transform(const DiscreteDomain& dom,
                                           const SmoothGaugeTransform& t);

GaugeTransformation random_constant_gauge(GroupKind kind, int n, std::mt19937_64& rng);

/// Degree-one bubble of concentration scale lambda centered at a node: the
/// inverse stereographic image of z/lambda in torus-minimal coordinates.
/// Its section energy density is 8 lambda^2 / (lambda^2 + |z|^2)^2.
SectionField bubble_section(const DiscreteDomain& dom, double lambda, int ci, int cj);
ScalarField bubble_density_analytic(const DiscreteDomain& dom, double lambda, int ci,
                                    int cj);

/// Tangent spinor spike with Gaussian envelope, projected along u.
TwistedSpinorField gaussian_spinor_spike(const DiscreteDomain& dom,
                                         const SectionField& u, double sigma, int ci,
                                         int cj, double amplitude);

/// Localized swirl potential: A_x ~ amp env z_y / sigma, A_y ~ -amp env z_x /
/// sigma in the first algebra coefficients. Decays like a Gaussian away from
/// the center, so patch energies see no seam.
GaugeField gaussian_gauge_bump(const DiscreteDomain& dom, GroupKind kind, double sigma,
                               int ci, int cj, double amplitude);

/// Section leaving the base point along a Gaussian-enveloped tangent bump.
SectionField gaussian_section_bump(const DiscreteDomain& dom, const Vec3& base,
                                   double sigma, int ci, int cj, double amplitude);

/// Smooth random triple with tangent spinor; workhorse for property tests.
FieldState random_smooth_state(const DiscreteDomain& dom, GroupKind kind,
                               std::uint64_t seed, double amp_A = 0.5,
                               double amp_u = 0.6, double amp_psi = 0.7);

}  // namespace ymhd
