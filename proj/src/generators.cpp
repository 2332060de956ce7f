#include "ymhd/generators.hpp"

#include <cmath>

#include "ymhd/fiber.hpp"

namespace ymhd {

namespace {
const double kTwoPi = 2.0 * M_PI;

double min_image(double d, double L) {
  d = std::fmod(d, L);
  if (d < -0.5 * L) d += L;
  if (d >= 0.5 * L) d -= L;
  return d;
}
}  // namespace

double SmoothScalar::operator()(double x, double y) const {
  double s = 0.0;
  for (const TrigTerm& t : terms)
    s += t.amp * std::sin(kTwoPi * (t.mx * x + t.my * y) / L + t.phase);
  return s;
}

double SmoothScalar::dx(double x, double y) const {
  double s = 0.0;
  for (const TrigTerm& t : terms)
    s += t.amp * (kTwoPi * t.mx / L) *
         std::cos(kTwoPi * (t.mx * x + t.my * y) / L + t.phase);
  return s;
}

double SmoothScalar::dy(double x, double y) const {
  double s = 0.0;
  for (const TrigTerm& t : terms)
    s += t.amp * (kTwoPi * t.my / L) *
         std::cos(kTwoPi * (t.mx * x + t.my * y) / L + t.phase);
  return s;
}

SmoothScalar SmoothScalar::random(std::mt19937_64& rng, double L, int max_mode,
                                  double amplitude) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_real_distribution<double> ph(0.0, kTwoPi);
  SmoothScalar f;
  f.L = L;
  for (int mx = -max_mode; mx <= max_mode; ++mx)
    for (int my = -max_mode; my <= max_mode; ++my) {
      if (mx == 0 && my == 0) continue;
      TrigTerm t;
      t.mx = mx;
      t.my = my;
      t.amp = amplitude * uni(rng) / (1.0 + mx * mx + my * my);
      t.phase = ph(rng);
      f.terms.push_back(t);
    }
  return f;
}

ScalarField sample_scalar(const DiscreteDomain& dom, const SmoothScalar& f) {
  ScalarField out(dom.n_side);
  for (int j = 0; j < dom.n_side; ++j)
    for (int i = 0; i < dom.n_side; ++i) out.at(i, j) = f(dom.x_of(i), dom.y_of(j));
  return out;
}

SmoothGauge SmoothGauge::random(std::mt19937_64& rng, GroupKind kind, double L,
                                int max_mode, double amplitude) {
  SmoothGauge g;
  g.kind = kind;
  const int dim = Group::get(kind).dim();
  for (int dir = 0; dir < 2; ++dir)
    for (int a = 0; a < dim; ++a)
      g.comp[dir][a] = SmoothScalar::random(rng, L, max_mode, amplitude);
  return g;
}

GaugeField sample_gauge(const DiscreteDomain& dom, const SmoothGauge& g) {
  GaugeField A(g.kind, dom.n_side);
  const int dim = Group::get(g.kind).dim();
  for (int j = 0; j < dom.n_side; ++j)
    for (int i = 0; i < dom.n_side; ++i)
      for (int dir = 0; dir < 2; ++dir) {
        Vec3 c = Vec3::Zero();
        for (int a = 0; a < dim; ++a)
          if (!g.comp[dir][a].terms.empty())
            c[a] = g.comp[dir][a](dom.x_of(i), dom.y_of(j));
        A.a.c[dir].at(i, j) = c;
      }
  return A;
}

SmoothSection SmoothSection::random(std::mt19937_64& rng, double L, int max_mode,
                                    double amplitude) {
  SmoothSection s;
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Vec3 b(uni(rng), uni(rng), uni(rng));
  if (b.norm() < 0.3) b = Vec3::UnitZ();
  s.base = b / b.norm();
  s.v1 = SmoothScalar::random(rng, L, max_mode, amplitude);
  s.v2 = SmoothScalar::random(rng, L, max_mode, amplitude);
  return s;
}

SectionField sample_section(const DiscreteDomain& dom, const SmoothSection& s) {
  SectionField u(dom.n_side);
  Vec3 e1, e2;
  tangent_frame(s.base, e1, e2);
  for (int j = 0; j < dom.n_side; ++j)
    for (int i = 0; i < dom.n_side; ++i) {
      const double a = s.v1(dom.x_of(i), dom.y_of(j));
      const double b = s.v2(dom.x_of(i), dom.y_of(j));
      u.u.at(i, j) = fiber_exp_point(s.base, a * e1 + b * e2);
    }
  return u;
}

SmoothSpinor SmoothSpinor::random(std::mt19937_64& rng, double L, int max_mode,
                                  double amplitude) {
  SmoothSpinor s;
  for (int sp = 0; sp < 2; ++sp)
    for (int i = 0; i < 3; ++i) {
      s.re[sp][i] = SmoothScalar::random(rng, L, max_mode, amplitude);
      s.im[sp][i] = SmoothScalar::random(rng, L, max_mode, amplitude);
    }
  return s;
}

TwistedSpinorField sample_spinor(const DiscreteDomain& dom, const SectionField& u,
                                 const SmoothSpinor& s) {
  TwistedSpinorField psi(dom.n_side);
  for (int j = 0; j < dom.n_side; ++j)
    for (int i = 0; i < dom.n_side; ++i) {
      SpinorMat m;
      for (int sp = 0; sp < 2; ++sp)
        for (int c = 0; c < 3; ++c)
          m(sp, c) = Complex(s.re[sp][c](dom.x_of(i), dom.y_of(j)),
                             s.im[sp][c](dom.x_of(i), dom.y_of(j)));
      psi.psi.at(i, j) = m;
    }
  project_spinor_tangent(u, psi);
  return psi;
}

SmoothGaugeTransform SmoothGaugeTransform::random(std::mt19937_64& rng, GroupKind kind,
                                                  double L, int max_mode,
                                                  double amplitude) {
  SmoothGaugeTransform t;
  t.kind = kind;
  const int dim = Group::get(kind).dim();
  for (int a = 0; a < dim; ++a)
    t.xi[a] = SmoothScalar::random(rng, L, max_mode, amplitude);
  return t;
}

GaugeTransformation sample_gauge_transform(const DiscreteDomain& dom,
                                           const SmoothGaugeTransform& t) {
  const Group& grp = Group::get(t.kind);
  GaugeTransformation g(t.kind, dom.n_side);
  for (int j = 0; j < dom.n_side; ++j)
    for (int i = 0; i < dom.n_side; ++i) {
      Vec3 xi = Vec3::Zero();
      for (int a = 0; a < grp.dim(); ++a)
        if (!t.xi[a].terms.empty()) xi[a] = t.xi[a](dom.x_of(i), dom.y_of(j));
      g.g.at(i, j) = grp.exp(xi).m;
    }
  return g;
}

GaugeTransformation random_constant_gauge(GroupKind kind, int n, std::mt19937_64& rng) {
  const Group& grp = Group::get(kind);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  Vec3 xi = Vec3::Zero();
  for (int a = 0; a < grp.dim(); ++a) xi[a] = uni(rng);
  GaugeTransformation g(kind, n);
  const Mat2c m = grp.exp(xi).m;
  for (auto& gm : g.g.v) gm = m;
  return g;
}

SectionField bubble_section(const DiscreteDomain& dom, double lambda, int ci, int cj) {
  // Inverse stereographic image of w/lambda, where w is the tangent warp of
  // the torus displacement. The warp sends the cut locus to infinity, so the
  // map closes up smoothly over the torus with degree one and its energy is
  // 8 pi up to the O(lambda^4/L^4) conformal defect of the warp.
  SectionField u(dom.n_side);
  const double L = dom.length;
  const double cx = dom.x_of(ci), cy = dom.y_of(cj);
  for (int j = 0; j < dom.n_side; ++j)
    for (int i = 0; i < dom.n_side; ++i) {
      const double zx = min_image(dom.x_of(i) - cx, L);
      const double zy = min_image(dom.y_of(j) - cy, L);
      const double wx = (L / M_PI) * std::tan(M_PI * zx / L);
      const double wy = (L / M_PI) * std::tan(M_PI * zy / L);
      const double r2 = wx * wx + wy * wy;
      const double den = lambda * lambda + r2;
      u.u.at(i, j) = Vec3(2.0 * lambda * wx / den, 2.0 * lambda * wy / den,
                          (r2 - lambda * lambda) / den);
    }
  return u;
}

ScalarField bubble_density_analytic(const DiscreteDomain& dom, double lambda, int ci,
                                    int cj) {
  // Exact pullback density of bubble_section; reduces to the plane profile
  // 8 lambda^2/(lambda^2 + |z|^2)^2 for |z| << L.
  ScalarField f(dom.n_side);
  const double L = dom.length;
  const double cx = dom.x_of(ci), cy = dom.y_of(cj);
  for (int j = 0; j < dom.n_side; ++j)
    for (int i = 0; i < dom.n_side; ++i) {
      const double zx = min_image(dom.x_of(i) - cx, L);
      const double zy = min_image(dom.y_of(j) - cy, L);
      const double wx = (L / M_PI) * std::tan(M_PI * zx / L);
      const double wy = (L / M_PI) * std::tan(M_PI * zy / L);
      const double dwx = 1.0 + (M_PI * wx / L) * (M_PI * wx / L);
      const double dwy = 1.0 + (M_PI * wy / L) * (M_PI * wy / L);
      const double den = lambda * lambda + wx * wx + wy * wy;
      f.at(i, j) = 4.0 * lambda * lambda * (dwx * dwx + dwy * dwy) / (den * den);
    }
  return f;
}

TwistedSpinorField gaussian_spinor_spike(const DiscreteDomain& dom,
                                         const SectionField& u, double sigma, int ci,
                                         int cj, double amplitude) {
  TwistedSpinorField psi(dom.n_side);
  const double cx = dom.x_of(ci), cy = dom.y_of(cj);
  for (int j = 0; j < dom.n_side; ++j)
    for (int i = 0; i < dom.n_side; ++i) {
      const double zx = min_image(dom.x_of(i) - cx, dom.length);
      const double zy = min_image(dom.y_of(j) - cy, dom.length);
      const double env = amplitude * std::exp(-(zx * zx + zy * zy) / (2.0 * sigma * sigma));
      Vec3 e1, e2;
      tangent_frame(u.u.at(i, j), e1, e2);
      SpinorMat m;
      for (int c = 0; c < 3; ++c) {
        m(0, c) = Complex(env * e1[c], 0.5 * env * e2[c]);
        m(1, c) = Complex(0.25 * env * e2[c], -env * e1[c]);
      }
      psi.psi.at(i, j) = m;
    }
  project_spinor_tangent(u, psi);
  return psi;
}

GaugeField gaussian_gauge_bump(const DiscreteDomain& dom, GroupKind kind, double sigma,
                               int ci, int cj, double amplitude) {
  GaugeField A(kind, dom.n_side);
  const Group& grp = Group::get(kind);
  const double cx = dom.x_of(ci), cy = dom.y_of(cj);
  for (int j = 0; j < dom.n_side; ++j)
    for (int i = 0; i < dom.n_side; ++i) {
      const double zx = min_image(dom.x_of(i) - cx, dom.length);
      const double zy = min_image(dom.y_of(j) - cy, dom.length);
      const double env =
          amplitude * std::exp(-(zx * zx + zy * zy) / (2.0 * sigma * sigma));
      Vec3 ax = Vec3::Zero(), ay = Vec3::Zero();
      ax[0] = env * zy / sigma;
      ay[0] = -env * zx / sigma;
      if (grp.dim() > 1) {
        ax[1] = 0.6 * env * zx / sigma;
        ay[2] = 0.4 * env * (zx + zy) / sigma;
      }
      A.a.c[0].at(i, j) = ax;
      A.a.c[1].at(i, j) = ay;
    }
  return A;
}

SectionField gaussian_section_bump(const DiscreteDomain& dom, const Vec3& base,
                                   double sigma, int ci, int cj, double amplitude) {
  SectionField u(dom.n_side);
  Vec3 e1, e2;
  tangent_frame(base, e1, e2);
  const double cx = dom.x_of(ci), cy = dom.y_of(cj);
  for (int j = 0; j < dom.n_side; ++j)
    for (int i = 0; i < dom.n_side; ++i) {
      const double zx = min_image(dom.x_of(i) - cx, dom.length);
      const double zy = min_image(dom.y_of(j) - cy, dom.length);
      const double env =
          amplitude * std::exp(-(zx * zx + zy * zy) / (2.0 * sigma * sigma));
      u.u.at(i, j) = fiber_exp_point(base, env * (e1 + 0.5 * (zx / sigma) * e2));
    }
  return u;
}

FieldState random_smooth_state(const DiscreteDomain& dom, GroupKind kind,
                               std::uint64_t seed, double amp_A, double amp_u,
                               double amp_psi) {
  std::mt19937_64 rng(seed);
  FieldState s;
  s.A = sample_gauge(dom, SmoothGauge::random(rng, kind, dom.length, 2, amp_A));
  s.u = sample_section(dom, SmoothSection::random(rng, dom.length, 2, amp_u));
  s.psi = sample_spinor(dom, s.u, SmoothSpinor::random(rng, dom.length, 2, amp_psi));
  return s;
}

}  // namespace ymhd
