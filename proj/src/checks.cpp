#include "ymhd/checks.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include "ymhd/blowup.hpp"
#include "ymhd/coulomb.hpp"
#include "ymhd/euler_lagrange.hpp"
#include "ymhd/fiber.hpp"
#include "ymhd/generators.hpp"
#include "ymhd/io.hpp"

namespace ymhd {

bool all_pass(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results)
    if (!r.pass) return false;
  return true;
}

namespace {

double rel(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-30});
}

/// Conservative order estimate from errors at h, h/2, h/4.
double fitted_order(double e0, double e1, double e2) {
  return std::min(std::log2(e0 / e1), std::log2(e1 / e2));
}

VecField sample_tangent_direction(const DiscreteDomain& dom, const SectionField& u,
                                  std::mt19937_64& rng) {
  SmoothScalar f[3] = {SmoothScalar::random(rng, dom.length, 2, 1.0),
                       SmoothScalar::random(rng, dom.length, 2, 1.0),
                       SmoothScalar::random(rng, dom.length, 2, 1.0)};
  VecField w(dom.n_side);
  for (int j = 0; j < dom.n_side; ++j)
    for (int i = 0; i < dom.n_side; ++i) {
      Vec3 v(f[0](dom.x_of(i), dom.y_of(j)), f[1](dom.x_of(i), dom.y_of(j)),
             f[2](dom.x_of(i), dom.y_of(j)));
      w.at(i, j) = project_tangent(u.u.at(i, j), v);
    }
  return w;
}

double fd_dir_A(const DiscreteDomain& dom, const FieldState& s, const ActionParams& p,
                const GaugeField& zeta, double delta) {
  FieldState sp = s, sm = s;
  for (int dir = 0; dir < 2; ++dir)
    for (size_t k = 0; k < zeta.a.c[dir].size(); ++k) {
      sp.A.a.c[dir].v[k] += delta * zeta.a.c[dir].v[k];
      sm.A.a.c[dir].v[k] -= delta * zeta.a.c[dir].v[k];
    }
  return (action_total(dom, sp, p).total - action_total(dom, sm, p).total) /
         (2.0 * delta);
}

double fd_dir_u(const DiscreteDomain& dom, const FieldState& s, const ActionParams& p,
                const VecField& w, double delta) {
  auto move = [&](double t) {
    FieldState out = s;
    for (size_t k = 0; k < s.u.u.size(); ++k)
      out.u.u.v[k] = fiber_exp_point(s.u.u.v[k], t * w.v[k]);
    out.psi = s.psi;
    project_spinor_tangent(out.u, out.psi);
    return action_total(dom, out, p).total;
  };
  return (move(delta) - move(-delta)) / (2.0 * delta);
}

double fd_dir_psi(const DiscreteDomain& dom, const FieldState& s, const ActionParams& p,
                  const TwistedSpinorField& eta, double delta) {
  FieldState sp = s, sm = s;
  for (size_t k = 0; k < eta.psi.size(); ++k) {
    sp.psi.psi.v[k] += delta * eta.psi.v[k];
    sm.psi.psi.v[k] -= delta * eta.psi.v[k];
  }
  return (action_total(dom, sp, p).total - action_total(dom, sm, p).total) /
         (2.0 * delta);
}

}  // namespace

std::vector<CheckResult> run_invariant_battery(const CheckOptions& opt) {
  std::vector<CheckResult> out;
  auto add = [&](const std::string& name, double measured, double tol,
                 bool larger = false) {
    CheckResult r;
    r.name = name;
    r.measured = measured;
    r.tolerance = tol;
    r.larger_is_better = larger;
    r.pass = larger ? measured >= tol : measured <= tol;
    out.push_back(r);
  };
  std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ull);

  // --- Clifford / spin structure ---
  const Clifford cl = opt.corrupt_gamma ? corrupted_clifford() : standard_clifford();
  {
    double worst = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        Mat2c m = cl.g[a] * cl.g[b] + cl.g[b] * cl.g[a];
        if (a == b) m += 2.0 * Mat2c::Identity();
        worst = std::max(worst, m.cwiseAbs().maxCoeff());
      }
    add("clifford_relation", worst, 1e-15);
    double herm = 0.0;
    for (int a = 0; a < 2; ++a)
      herm = std::max(herm, (cl.g[a] + cl.g[a].adjoint()).cwiseAbs().maxCoeff());
    add("gamma_anti_hermitian", herm, 1e-15);
  }
  {
    DiscreteDomain dom(24, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    SpinorField psi(24), phi(24);
    for (size_t k = 0; k < psi.size(); ++k) {
      psi.v[k] = Vec2c(Complex(gauss(rng), gauss(rng)), Complex(gauss(rng), gauss(rng)));
      phi.v[k] = Vec2c(Complex(gauss(rng), gauss(rng)), Complex(gauss(rng), gauss(rng)));
    }
    SpinorField dpsi = dirac_plain(dom, psi);
    SpinorField dphi = dirac_plain(dom, phi);
    const Complex lhs = l2_inner_c(dom, dpsi, phi);
    const Complex rhs = l2_inner_c(dom, psi, dphi);
    add("dirac_plain_self_adjoint", std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)),
        1e-12);

    const Mat2c chi = standard_clifford().g[0] * standard_clifford().g[1];
    SpinorField cpsi(24);
    for (size_t k = 0; k < psi.size(); ++k) cpsi.v[k] = chi * psi.v[k];
    SpinorField a = dirac_plain(dom, cpsi);
    double worst = 0.0;
    for (size_t k = 0; k < psi.size(); ++k)
      worst = std::max(worst, (chi * dpsi.v[k] + a.v[k]).norm());
    add("dirac_plain_chirality_anticommute", worst, 1e-12);
  }

  // --- exterior calculus ---
  {
    DiscreteDomain dom(32, 1.0);
    ScalarField f = sample_scalar(dom, SmoothScalar::random(rng, 1.0, 3, 1.0));
    ScalarField dd = d1(dom, d0(dom, f));
    double worst = 0.0;
    for (double x : dd.v) worst = std::max(worst, std::abs(x));
    add("d1_after_d0_zero", worst, 1e-13);

    ScalarField g = sample_scalar(dom, SmoothScalar::random(rng, 1.0, 3, 1.0));
    OneForm a = d0(dom, g);
    a.c[0].v[17] += 0.37;  // make the 1-form non-exact
    add("adjointness_d0_codiff1",
        rel(l2_inner(dom, d0(dom, f), a), l2_inner(dom, f, codiff1(dom, a))), 1e-12);

    // codiff1(d0 f) equals the wide five-point-compatible stencil
    ScalarField lap = codiff1(dom, d0(dom, f));
    double stencil_worst = 0.0;
    const double inv4h2 = 1.0 / (4.0 * dom.h * dom.h);
    for (int j = 0; j < 32; ++j)
      for (int i = 0; i < 32; ++i) {
        const double wide = (f.at(i + 2, j) + f.at(i - 2, j) + f.at(i, j + 2) +
                             f.at(i, j - 2) - 4.0 * f.at(i, j)) *
                            inv4h2;
        stencil_worst = std::max(stencil_worst, std::abs(lap.at(i, j) + wide));
      }
    add("codiff1_matches_wide_laplacian", stencil_worst, 1e-11);
  }
  {
    SmoothScalar f = SmoothScalar::random(rng, 1.0, 2, 1.0);
    double errs[3];
    int ns[3] = {16, 32, 64};
    for (int q = 0; q < 3; ++q) {
      DiscreteDomain dom(ns[q], 1.0);
      OneForm df = d0(dom, sample_scalar(dom, f));
      double worst = 0.0;
      for (int j = 0; j < ns[q]; ++j)
        for (int i = 0; i < ns[q]; ++i)
          worst = std::max(worst,
                           std::abs(df.c[0].at(i, j) - f.dx(dom.x_of(i), dom.y_of(j))));
      errs[q] = worst;
    }
    add("d0_convergence_order", fitted_order(errs[0], errs[1], errs[2]), 1.9, true);
  }
  {
    DiscreteDomain dom(16, 1.0);
    ScalarField one(16, 1.0);
    add("integrate_unit_area", std::abs(integrate(dom, one) - 1.0), 1e-12);
  }

  // --- algebra and fiber tensors ---
  {
    const Group& su2 = Group::get(GroupKind::SU2);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    auto rnd_alg = [&] {
      return su2.algebra(Vec3(uni(rng), uni(rng), uni(rng)));
    };
    LieAlgebraElement x = rnd_alg(), y = rnd_alg(), z = rnd_alg();
    add("bracket_antisymmetry", bracket(x, x).m.cwiseAbs().maxCoeff(), 1e-14);
    Mat2c jac = bracket(x, bracket(y, z)).m + bracket(y, bracket(z, x)).m +
                bracket(z, bracket(x, y)).m;
    add("bracket_jacobi", jac.cwiseAbs().maxCoeff(), 1e-13);

    GroupElement g = su2.exp(Vec3(uni(rng), uni(rng), uni(rng)));
    LieAlgebraElement ax{GroupKind::SU2, g.m * x.m * g.m.adjoint()};
    LieAlgebraElement ay{GroupKind::SU2, g.m * y.m * g.m.adjoint()};
    add("inner_ad_invariance", std::abs(inner_g(ax, ay) - inner_g(x, y)), 1e-12);

    double tang = 0.0, skew = 0.0, isom = 0.0;
    for (int t = 0; t < 100; ++t) {
      Vec3 yv(uni(rng), uni(rng), uni(rng));
      if (yv.norm() < 1e-3) yv = Vec3::UnitX();
      yv /= yv.norm();
      FiberPoint fp{yv};
      LieAlgebraElement xi = rnd_alg();
      TangentVector kf = killing_field(xi, fp);
      tang = std::max(tang, std::abs(kf.vec.dot(yv)));

      Vec3 e1, e2;
      tangent_frame(yv, e1, e2);
      TangentVector w1{fp, e1}, w2{fp, e2};
      const double s12 = d1d2mu(xi, w1).vec.dot(e2) + e1.dot(d1d2mu(xi, w2).vec);
      skew = std::max(skew, std::abs(s12));

      const Mat3 r = su2.fiber_rotation(su2.exp(0.3 * Vec3(uni(rng), uni(rng), uni(rng))));
      isom = std::max(isom, std::abs((r * e1).dot(r * e2) - e1.dot(e2)));
      isom = std::max(isom, std::abs((r * e1).squaredNorm() - 1.0));
    }
    add("killing_field_tangency", tang, 1e-12);
    add("d1d2mu_skew_symmetry", skew, 1e-12);
    add("group_action_isometry", isom, 1e-10);

    Vec3 yv = Vec3::UnitZ();
    FiberPoint fp{yv};
    Vec3 e1, e2;
    tangent_frame(yv, e1, e2);
    TangentVector tx{fp, e1}, tz{fp, e2}, tw{fp, 0.3 * e1 - 0.8 * e2};
    Vec3 bianchi = curvature_N(fp, tx, tz, tw).vec + curvature_N(fp, tz, tw, tx).vec +
                   curvature_N(fp, tw, tx, tz).vec;
    add("curvature_first_bianchi", bianchi.norm(), 1e-12);
    add("second_fundamental_form_normal",
        std::abs(second_fundamental_form(fp, tx, tz).dot(e1)) +
            std::abs(second_fundamental_form(fp, tx, tz).dot(e2)),
        1e-12);
    add("fiber_exp_unit_norm",
        std::abs(fiber_exp(fp, tw).coords.norm() - 1.0), 1e-12);
  }

  // --- gauge invariance ---
  {
    DiscreteDomain dom(16, 1.0);
    FieldState s = random_smooth_state(dom, GroupKind::SU2, opt.seed + 11);
    ActionBreakdown b0 = action_total(dom, s, opt.action);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      GaugeTransformation g = random_constant_gauge(GroupKind::SU2, 16, rng);
      ActionBreakdown b1 = action_total(dom, apply_gauge(dom, g, s), opt.action);
      worst = std::max({worst, rel(b0.yang_mills, b1.yang_mills),
                        rel(b0.higgs, b1.higgs),
                        std::abs(b0.dirac - b1.dirac) / std::max(1.0, std::abs(b0.dirac))});
    }
    add("gauge_invariance_constant", worst, 1e-10);
  }
  {
    std::mt19937_64 rng2(opt.seed + 21);
    SmoothGauge ga = SmoothGauge::random(rng2, GroupKind::SU2, 1.0, 2, 0.5);
    SmoothSection se = SmoothSection::random(rng2, 1.0, 2, 0.5);
    SmoothSpinor sp = SmoothSpinor::random(rng2, 1.0, 2, 0.5);
    SmoothGaugeTransform tr = SmoothGaugeTransform::random(rng2, GroupKind::SU2, 1.0, 2, 0.6);
    double errs[3];
    int ns[3] = {16, 32, 64};
    for (int q = 0; q < 3; ++q) {
      DiscreteDomain dom(ns[q], 1.0);
      FieldState s;
      s.A = sample_gauge(dom, ga);
      s.u = sample_section(dom, se);
      s.psi = sample_spinor(dom, s.u, sp);
      GaugeTransformation g = sample_gauge_transform(dom, tr);
      ActionBreakdown b0 = action_total(dom, s, opt.action);
      ActionBreakdown b1 = action_total(dom, apply_gauge(dom, g, s), opt.action);
      errs[q] = std::abs(b0.yang_mills - b1.yang_mills) + std::abs(b0.higgs - b1.higgs) +
                std::abs(b0.dirac - b1.dirac);
    }
    add("gauge_invariance_smooth_order", fitted_order(errs[0], errs[1], errs[2]), 1.9,
        true);
  }
  {
    DiscreteDomain dom(16, 1.0);
    FieldState s = random_smooth_state(dom, GroupKind::SU2, opt.seed + 31);
    GaugeTransformation g = random_constant_gauge(GroupKind::SU2, 16, rng);
    const Group& grp = Group::get(GroupKind::SU2);
    CoeffField f0 = curvature(dom, s.A);
    CoeffField f1 = curvature(dom, apply_gauge_A(dom, g, s.A));
    const GroupElement ge{GroupKind::SU2, g.g.v[0]};
    double worst = 0.0;
    for (size_t k = 0; k < f0.size(); ++k)
      worst = std::max(worst, (f1.v[k] - grp.ad_c(inverse(ge), f0.v[k])).norm());
    add("curvature_gauge_covariance_constant", worst, 1e-12);

    FieldState s2 = apply_gauge(dom, g, s);
    add("apply_gauge_preserves_tangency", max_tangency_violation(s2.u, s2.psi), 1e-12);
  }

  // --- twisted Dirac ---
  {
    DiscreteDomain dom(24, 1.0);
    FieldState s = random_smooth_state(dom, GroupKind::SU2, opt.seed + 41);
    TwistedSpinorField phi =
        sample_spinor(dom, s.u, SmoothSpinor::random(rng, 1.0, 2, 0.8));
    TwistedSpinorField dpsi = twisted_dirac(dom, s.A, s.u, s.psi);
    TwistedSpinorField dphi = twisted_dirac(dom, s.A, s.u, phi);
    const Complex lhs = twisted_inner_c(dom, dpsi, phi);
    const Complex rhs = twisted_inner_c(dom, s.psi, dphi);
    add("twisted_dirac_self_adjoint", std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)),
        1e-10);
    const Complex pairing = twisted_inner_c(dom, s.psi, dpsi);
    add("dirac_pairing_real", std::abs(pairing.imag()) / std::max(1.0, std::abs(pairing)),
        1e-10);
  }

  // --- conformal invariance ---
  {
    DiscreteDomain dom(16, 1.0);
    FieldState s = random_smooth_state(dom, GroupKind::U1, opt.seed + 51);
    const double h0 = higgs_energy(dom, s.A, s.u);
    const double d0v = dirac_action(dom, s.A, s.u, s.psi);
    DiscreteDomain cdom = dom;
    ScalarField lam = sample_scalar(dom, SmoothScalar::random(rng, 1.0, 2, 0.4));
    cdom.conformal_exponent.assign(lam.v.begin(), lam.v.end());
    add("conformal_invariance_higgs", std::abs(higgs_energy(cdom, s.A, s.u) - h0),
        1e-12);
    add("conformal_invariance_dirac",
        std::abs(dirac_action(cdom, s.A, s.u, s.psi) - d0v), 1e-12);
  }

  // --- gradient consistency (coarse; the acceptance suite re-runs larger) ---
  {
    DiscreteDomain dom(16, 1.0);
    FieldState s = random_smooth_state(dom, GroupKind::SU2, opt.seed + 61);
    ResidualTriple r = residuals(dom, s, opt.action);
    std::mt19937_64 rng3(opt.seed + 62);
    double worst_a = 0.0, worst_u = 0.0, worst_p = 0.0;
    for (int t = 0; t < 5; ++t) {
      GaugeField zeta =
          sample_gauge(dom, SmoothGauge::random(rng3, GroupKind::SU2, 1.0, 2, 1.0));
      const double fd = fd_dir_A(dom, s, opt.action, zeta, 1e-4);
      const double an = gauge_l2_inner(dom, GroupKind::SU2, r.res_A, zeta.a);
      worst_a = std::max(worst_a, rel(fd, an));

      VecField w = sample_tangent_direction(dom, s.u, rng3);
      const double fdu = fd_dir_u(dom, s, opt.action, w, 1e-4);
      const double anu = vec_l2_inner(dom, r.res_u, w);
      worst_u = std::max(worst_u, rel(fdu, anu));

      TwistedSpinorField eta =
          sample_spinor(dom, s.u, SmoothSpinor::random(rng3, 1.0, 2, 1.0));
      const double fdp = fd_dir_psi(dom, s, opt.action, eta, 1e-4);
      const double anp = 2.0 * twisted_inner_c(dom, r.res_psi, eta).real();
      worst_p = std::max(worst_p, rel(fdp, anp));
    }
    add("gradient_consistency_A", worst_a, 1e-4);
    add("gradient_consistency_u", worst_u, 1e-4);
    add("gradient_consistency_psi", worst_p, 1e-4);
  }

  // --- Coulomb gauge ---
  {
    DiscreteDomain dom(32, 1.0);
    std::mt19937_64 rng4(opt.seed + 71);
    GaugeField A =
        sample_gauge(dom, SmoothGauge::random(rng4, GroupKind::U1, 1.0, 3, 0.8));
    CoulombResult cr = coulomb_fix_abelian(dom, A);
    add("coulomb_abelian_divergence", cr.final_residual, 1e-10);
    add("coulomb_abelian_contraction", l2_norm(dom, cr.A) - l2_norm(dom, A), 1e-12);

    GaugeField B =
        sample_gauge(dom, SmoothGauge::random(rng4, GroupKind::SU2, 1.0, 2, 0.4));
    DescentOptions dopt;
    dopt.tol = 1e-6;
    CoulombResult dr = coulomb_fix_descent(dom, B, dopt);
    add("coulomb_descent_divergence", dr.final_residual, 1e-4);
    add("coulomb_descent_monotone", dr.monotone ? 0.0 : 1.0, 0.5);
  }

  // --- scaling identities (grid-aligned zoom: exact up to support leakage) ---
  {
    const int n_src = 64;
    DiscreteDomain dom(n_src, 1.0);
    const int c = n_src / 2;
    FieldState s;
    s.A = gaussian_gauge_bump(dom, GroupKind::SU2, 0.05, c, c, 0.8);
    s.u = gaussian_section_bump(dom, Vec3::UnitZ(), 0.05, c, c, 0.9);
    s.psi = gaussian_spinor_spike(dom, s.u, 0.05, c, c, 1.0);
    const double r = 0.5;
    auto [tdom, ts] = rescale(dom, s, c, c, r, n_src / 2);

    add("scaling_curvature_r2",
        rel(yang_mills_energy(tdom, ts.A), r * r * yang_mills_energy(dom, s.A)), 1e-3);
    add("scaling_higgs_invariant",
        rel(higgs_energy(tdom, ts.A, ts.u), higgs_energy(dom, s.A, s.u)), 1e-3);
    add("scaling_dirac_invariant",
        rel(dirac_action(tdom, ts.A, ts.u, ts.psi), dirac_action(dom, s.A, s.u, s.psi)),
        1e-3);
    const double l2t = l2_norm(tdom, ts.psi);
    const double l2s = l2_norm(dom, s.psi);
    add("scaling_spinor_l2_anomaly", rel(l2t * l2t, l2s * l2s / r), 1e-3);
  }

  // --- ball energies ---
  {
    DiscreteDomain dom(48, 1.0);
    FieldState s = zero_state(GroupKind::U1, 48);
    s.u = bubble_section(dom, 0.08, 24, 24);
    double prev = 0.0, worst = 0.0;
    for (double rr = 0.05; rr <= 0.45; rr += 0.05) {
      const double e = ball_energy(dom, s, {24, 24, rr, EnergyKind::Higgs});
      worst = std::max(worst, prev - e);
      prev = e;
    }
    add("ball_energy_monotone_in_radius", worst, 1e-12);
  }

  // --- snapshot round trip ---
  {
    DiscreteDomain dom(12, 1.0);
    FieldState s = random_smooth_state(dom, GroupKind::SU2, opt.seed + 81);
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "ymhd_check";
    fs::create_directories(base);
    const std::string pbin = (base / "roundtrip.bin").string();
    const std::string ptxt = (base / "roundtrip.txt").string();
    write_snapshot(pbin, dom, s, true);
    write_snapshot(ptxt, dom, s, false);
    auto [d1s, s1] = read_snapshot(pbin);
    auto [d2s, s2] = read_snapshot(ptxt);
    double worst_bin = 0.0, worst_txt = 0.0;
    for (size_t k = 0; k < s.u.u.size(); ++k) {
      worst_bin = std::max(worst_bin, (s1.u.u.v[k] - s.u.u.v[k]).cwiseAbs().maxCoeff());
      worst_bin =
          std::max(worst_bin, (s1.psi.psi.v[k] - s.psi.psi.v[k]).cwiseAbs().maxCoeff());
      worst_txt = std::max(worst_txt, (s2.u.u.v[k] - s.u.u.v[k]).cwiseAbs().maxCoeff());
      for (int dir = 0; dir < 2; ++dir) {
        worst_bin = std::max(
            worst_bin, (s1.A.a.c[dir].v[k] - s.A.a.c[dir].v[k]).cwiseAbs().maxCoeff());
        worst_txt = std::max(
            worst_txt, (s2.A.a.c[dir].v[k] - s.A.a.c[dir].v[k]).cwiseAbs().maxCoeff());
      }
    }
    fs::remove(pbin);
    fs::remove(ptxt);
    add("snapshot_roundtrip_binary", worst_bin, 0.0);
    add("snapshot_roundtrip_text", worst_txt, 1e-15);
  }

  return out;
}

}  // namespace ymhd
