#include "ymhd/coulomb.hpp"

#include <cmath>

#include "ymhd/fft.hpp"

namespace ymhd {

namespace {

double max_div_norm(const DiscreteDomain& dom, const GaugeField& A) {
  const Group& grp = Group::get(A.group);
  CoeffField div = codiff1(dom, A.a);
  double worst = 0.0;
  for (const Vec3& c : div.v) worst = std::max(worst, std::sqrt(grp.inner_c(c, c)));
  return worst;
}

GaugeTransformation exp_field(GroupKind kind, const CoeffField& xi, double scale) {
  const Group& grp = Group::get(kind);
  GaugeTransformation g(kind, xi.n);
  for (size_t k = 0; k < xi.size(); ++k) g.g.v[k] = grp.exp(scale * xi.v[k]).m;
  return g;
}

}  // namespace

CoulombResult coulomb_fix_abelian(const DiscreteDomain& dom, const GaugeField& A) {
  if (A.group != GroupKind::U1)
    throw UnsupportedError("coulomb_fix_abelian requires the abelian group; use coulomb_fix_descent");

  // rhs = -codiff1(A) in the single algebra coefficient
  ScalarField rhs(A.n());
  {
    CoeffField div = codiff1(dom, A.a);
    for (size_t k = 0; k < rhs.size(); ++k) rhs.v[k] = -div.v[k][0];
  }
  ScalarField theta = poisson_hodge(dom, rhs);
  OneForm dth = d0(dom, theta);

  CoulombResult res;
  res.A = A;
  for (size_t k = 0; k < theta.size(); ++k) {
    res.A.a.c[0].v[k][0] += dth.c[0].v[k];
    res.A.a.c[1].v[k][0] += dth.c[1].v[k];
  }
  res.g = GaugeTransformation(GroupKind::U1, A.n());
  for (size_t k = 0; k < theta.size(); ++k) {
    res.g.g.v[k] = Mat2c::Identity();
    res.g.g.v[k](0, 0) = std::polar(1.0, theta.v[k]);
  }
  res.final_residual = max_div_norm(dom, res.A);
  res.iterations = 1;
  return res;
}

CoulombResult coulomb_fix_descent(const DiscreteDomain& dom, const GaugeField& A,
                                  const DescentOptions& opt) {
  const Group& grp = Group::get(A.group);
  CoulombResult res;
  res.g = GaugeTransformation(A.group, A.n());
  res.A = A;
  res.monotone = true;

  double norm2 = l2_norm(dom, res.A);
  norm2 *= norm2;
  res.final_residual = max_div_norm(dom, res.A);

  for (int it = 0; it < opt.max_iterations && res.final_residual > opt.tol; ++it) {
    CoeffField div = codiff1(dom, res.A.a);
    CoeffField dir(div.n);
    if (opt.precondition) {
      for (int a = 0; a < grp.dim(); ++a) {
        ScalarField comp(div.n);
        for (size_t k = 0; k < comp.size(); ++k) comp.v[k] = div.v[k][a];
        ScalarField sol = poisson_hodge(dom, comp);
        for (size_t k = 0; k < comp.size(); ++k) dir.v[k][a] = -sol.v[k];
      }
    } else {
      const double s = dom.h * dom.h;
      for (size_t k = 0; k < div.size(); ++k) dir.v[k] = -s * div.v[k];
    }

    bool accepted = false;
    double step = 1.0;
    for (int half = 0; half < 40; ++half, step *= 0.5) {
      GaugeTransformation g_step = exp_field(A.group, dir, step);
      GaugeField cand = apply_gauge_A(dom, g_step, res.A);
      double cn = l2_norm(dom, cand);
      cn *= cn;
      if (cn <= norm2) {
        res.A = cand;
        res.g = compose(res.g, g_step);
        norm2 = cn;
        accepted = true;
        break;
      }
    }
    res.iterations = it + 1;
    res.final_residual = max_div_norm(dom, res.A);
    if (!accepted) {
      res.converged = false;
      return res;
    }
  }
  res.converged = res.final_residual <= opt.tol;
  return res;
}

}  // namespace ymhd
