#include "ymhd/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ymhd/fft.hpp"

namespace ymhd {

FlowMode flow_mode_from_name(const std::string& name) {
  if (name == "harmonic_section_flow") return FlowMode::HarmonicSectionFlow;
  if (name == "coupled_flow") return FlowMode::CoupledFlow;
  if (name == "alternating_dirac") return FlowMode::AlternatingDirac;
  throw ConfigError("unknown flow mode '" + name + "'");
}

std::string flow_mode_name(FlowMode m) {
  switch (m) {
    case FlowMode::HarmonicSectionFlow: return "harmonic_section_flow";
    case FlowMode::CoupledFlow: return "coupled_flow";
    default: return "alternating_dirac";
  }
}

void FlowConfig::validate() const {
  if (dt <= 0.0) throw ConfigError("flow.dt must be positive");
  if (tol_residual <= 0.0) throw ConfigError("flow.tol_residual must be positive");
  if (max_steps < 0) throw ConfigError("flow.max_steps must be non-negative");
  if (psi_norm < 0.0) throw ConfigError("flow.psi_norm must be non-negative");
}

namespace {

constexpr double kMinStep = 1e-12;

TraceRow make_row(const DiscreteDomain& dom, const FieldState& s,
                  const ActionParams& p, int step) {
  TraceRow row;
  row.step = step;
  row.action = action_total(dom, s, p);
  ResidualTriple r = residuals(dom, s, p);
  row.res_a = r.norm_A;
  row.res_u = r.norm_u;
  row.res_psi = r.norm_psi;
  ScalarField hd = higgs_density(dom, s.A, s.u);
  for (double x : hd.v) row.max_higgs_density = std::max(row.max_higgs_density, x);
  ScalarField p4 = psi4_density(dom, s.psi);
  for (double x : p4.v) row.max_psi4_density = std::max(row.max_psi4_density, x);
  return row;
}

SectionField step_section(const SectionField& u, const VecField& dir, double dt) {
  SectionField out(u.n());
  for (size_t k = 0; k < u.u.size(); ++k)
    out.u.v[k] = fiber_exp_point(u.u.v[k], dt * dir.v[k]);
  return out;
}

VecField negate(const VecField& w) {
  VecField out(w.n);
  for (size_t k = 0; k < w.size(); ++k) out.v[k] = -w.v[k];
  return out;
}

/// FD spot check of <grad, dir> against the objective along dir.
double spot_check_u(const DiscreteDomain& dom, const FieldState& s,
                    const ActionParams& p, const VecField& res) {
  const double nrm = l2_norm(dom, res);
  if (nrm == 0.0) return 0.0;
  VecField w(res.n);
  for (size_t k = 0; k < w.size(); ++k) w.v[k] = res.v[k] / nrm;
  const double delta = 1e-5;
  FieldState sp = s, sm = s;
  sp.u = step_section(s.u, w, delta);
  sm.u = step_section(s.u, w, -delta);
  sp.psi = s.psi;
  sm.psi = s.psi;
  project_spinor_tangent(sp.u, sp.psi);
  project_spinor_tangent(sm.u, sm.psi);
  const double fd = (action_total(dom, sp, p).total - action_total(dom, sm, p).total) /
                    (2.0 * delta);
  const double an = vec_l2_inner(dom, res, w);
  return std::abs(fd - an) / std::max({std::abs(fd), std::abs(an), 1e-30});
}

struct AuStepper {
  double dt_A;
  double dt_u;
  double dt_cap;
  bool stagnated = false;

  explicit AuStepper(double dt) : dt_A(dt), dt_u(dt), dt_cap(dt) {}

  // One sweep: an A-substep then a u-substep, each with its own
  // backtracking. Returns false if no progress was possible.
  bool sweep(const DiscreteDomain& dom, FieldState& s, const ActionParams& p,
             double& total) {
    bool any = false;

    OneFormOf<Vec3> ra = residual_A(dom, s, p);
    bool ok = false;
    while (dt_A >= kMinStep) {
      FieldState cand = s;
      for (int dir = 0; dir < 2; ++dir)
        for (size_t k = 0; k < cand.A.a.c[dir].size(); ++k)
          cand.A.a.c[dir].v[k] -= dt_A * ra.c[dir].v[k];
      const double t2 = action_total(dom, cand, p).total;
      if (t2 <= total) {
        s = cand;
        total = t2;
        ok = true;
        break;
      }
      dt_A *= 0.5;
    }
    if (ok) {
      any = true;
      dt_A = std::min(dt_A * 1.5, dt_cap);
    }

    VecField ru = residual_u(dom, s, p);
    ok = false;
    while (dt_u >= kMinStep) {
      FieldState cand = s;
      cand.u = step_section(s.u, negate(ru), dt_u);
      cand.psi = s.psi;
      project_spinor_tangent(cand.u, cand.psi);
      const double t2 = action_total(dom, cand, p).total;
      if (t2 <= total) {
        s = cand;
        total = t2;
        ok = true;
        break;
      }
      dt_u *= 0.5;
    }
    if (ok) {
      any = true;
      dt_u = std::min(dt_u * 1.5, dt_cap);
    }

    stagnated = !any;
    return any;
  }
};

}  // namespace

FlowResult heat_flow_harmonic_section(const DiscreteDomain& dom, const GaugeField& A,
                                      const SectionField& u0, const FlowConfig& cfg,
                                      const SnapshotHook& hook) {
  cfg.validate();
  if (cfg.mode != FlowMode::HarmonicSectionFlow)
    throw ConfigError("heat_flow_harmonic_section requires mode=harmonic_section_flow");

  FlowResult out;
  out.state.A = A;
  out.state.u = u0;
  out.state.psi = TwistedSpinorField(u0.n());

  double energy = higgs_energy(dom, A, out.state.u);
  FieldState& s = out.state;
  VecField res = residual_u(dom, s, cfg.action);
  double rnorm = l2_norm(dom, res);

  out.trace.rows.push_back(make_row(dom, s, cfg.action, 0));
  if (hook) hook(0, s);

  double dt = cfg.dt;
  int accepted = 0;
  while (accepted < cfg.max_steps) {
    if (rnorm <= cfg.tol_residual) {
      out.trace.converged = true;
      break;
    }
    if (cfg.spot_check_interval > 0 && accepted > 0 &&
        accepted % cfg.spot_check_interval == 0) {
      out.trace.max_spot_check_error =
          std::max(out.trace.max_spot_check_error, spot_check_u(dom, s, cfg.action, res));
    }

    bool ok = false;
    while (dt >= kMinStep) {
      SectionField u_new = step_section(s.u, negate(res), dt);
      const double e_new = higgs_energy(dom, A, u_new);
      if (e_new <= energy) {
        s.u = u_new;
        energy = e_new;
        ok = true;
        break;
      }
      dt *= 0.5;
    }
    if (!ok) {
      out.trace.stagnated = true;
      break;
    }
    dt = std::min(dt * 1.5, cfg.dt);
    ++accepted;

    res = residual_u(dom, s, cfg.action);
    rnorm = l2_norm(dom, res);
    if (accepted % cfg.record_interval == 0 || rnorm <= cfg.tol_residual) {
      out.trace.rows.push_back(make_row(dom, s, cfg.action, accepted));
      if (hook) hook(accepted, s);
    }
  }
  if (rnorm <= cfg.tol_residual) out.trace.converged = true;
  if (out.trace.rows.back().step != accepted)
    out.trace.rows.push_back(make_row(dom, s, cfg.action, accepted));
  return out;
}

FlowResult coupled_flow(const DiscreteDomain& dom, const FieldState& state0,
                        const FlowConfig& cfg, const SnapshotHook& hook) {
  cfg.validate();
  if (l2_norm(dom, state0.psi) != 0.0)
    throw DomainError("coupled_flow requires psi = 0");

  FlowResult out;
  out.state = state0;
  FieldState& s = out.state;
  double total = action_total(dom, s, cfg.action).total;

  out.trace.rows.push_back(make_row(dom, s, cfg.action, 0));
  if (hook) hook(0, s);

  AuStepper stepper(cfg.dt);
  int step = 0;
  while (step < cfg.max_steps) {
    TraceRow& last = out.trace.rows.back();
    if (std::max(last.res_a, last.res_u) <= cfg.tol_residual) {
      out.trace.converged = true;
      break;
    }
    if (!stepper.sweep(dom, s, cfg.action, total)) {
      out.trace.stagnated = true;
      break;
    }
    ++step;
    if (cfg.spot_check_interval > 0 && step % cfg.spot_check_interval == 0) {
      VecField ru = residual_u(dom, s, cfg.action);
      out.trace.max_spot_check_error = std::max(out.trace.max_spot_check_error,
                                                spot_check_u(dom, s, cfg.action, ru));
    }
    if (step % cfg.record_interval == 0 || step == cfg.max_steps) {
      out.trace.rows.push_back(make_row(dom, s, cfg.action, step));
      if (hook) hook(step, s);
    }
  }
  if (out.trace.rows.back().step != step)
    out.trace.rows.push_back(make_row(dom, s, cfg.action, step));
  {
    const TraceRow& last = out.trace.rows.back();
    if (std::max(last.res_a, last.res_u) <= cfg.tol_residual) out.trace.converged = true;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Eigenmodes of the twisted Dirac operator
// ---------------------------------------------------------------------------

namespace {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// The twisted Dirac operator expressed in per-node orthonormal tangent
/// frames, acting on C^{2 spinor x 2 frame x nodes}. Frame coordinates remove
/// the tangency constraint, so the operator is plainly Hermitian.
class FrameDiracOp {
 public:
  FrameDiracOp(const DiscreteDomain& dom, const GaugeField& A, const SectionField& u)
      : dom_(dom), A_(A), u_(u), n_(u.n()), fft_(u.n()) {
    e1_.resize(dom.nodes());
    e2_.resize(dom.nodes());
    for (size_t k = 0; k < dom.nodes(); ++k) tangent_frame(u.u.v[k], e1_[k], e2_[k]);
    symbol_.resize(dom.nodes());
    const double invh2 = 1.0 / (dom.h * dom.h);
    for (int l = 0; l < n_; ++l) {
      const double sy = std::sin(2.0 * M_PI * l / n_);
      for (int m = 0; m < n_; ++m) {
        const double sx = std::sin(2.0 * M_PI * m / n_);
        symbol_[size_t(l) * n_ + m] = (sx * sx + sy * sy) * invh2;
      }
    }
  }

  size_t dim() const { return 4 * dom_.nodes(); }

  TwistedSpinorField to_ambient(const CVec& x) const {
    TwistedSpinorField psi(n_);
    const size_t nn = dom_.nodes();
    for (size_t k = 0; k < nn; ++k) {
      SpinorMat m = SpinorMat::Zero();
      for (int sp = 0; sp < 2; ++sp) {
        const Complex c1 = x[size_t(sp * 2 + 0) * nn + k];
        const Complex c2 = x[size_t(sp * 2 + 1) * nn + k];
        for (int i = 0; i < 3; ++i) m(sp, i) = c1 * e1_[k][i] + c2 * e2_[k][i];
      }
      psi.psi.v[k] = m;
    }
    return psi;
  }

  CVec from_ambient(const TwistedSpinorField& psi) const {
    const size_t nn = dom_.nodes();
    CVec x(dim());
    for (size_t k = 0; k < nn; ++k) {
      const SpinorMat& m = psi.psi.v[k];
      for (int sp = 0; sp < 2; ++sp) {
        Complex c1(0, 0), c2(0, 0);
        for (int i = 0; i < 3; ++i) {
          c1 += m(sp, i) * e1_[k][i];
          c2 += m(sp, i) * e2_[k][i];
        }
        x[size_t(sp * 2 + 0) * nn + k] = c1;
        x[size_t(sp * 2 + 1) * nn + k] = c2;
      }
    }
    return x;
  }

  CVec apply(const CVec& x) const {
    return from_ambient(twisted_dirac(dom_, A_, u_, to_ambient(x)));
  }

  CVec apply_sq_shifted(const CVec& x, double eps) const {
    return apply(apply(x)) + eps * x;
  }

  /// Approximate inverse of the flat squared operator + eps, per component
  /// plane in Fourier space.
  CVec precondition(const CVec& r, double eps) const {
    const size_t nn = dom_.nodes();
    CVec out(dim());
    std::vector<Complex> buf(nn);
    for (int comp = 0; comp < 4; ++comp) {
      for (size_t k = 0; k < nn; ++k) buf[k] = r[size_t(comp) * nn + k];
      fft_.forward(buf);
      for (size_t k = 0; k < nn; ++k) buf[k] /= (symbol_[k] + eps);
      fft_.inverse(buf);
      for (size_t k = 0; k < nn; ++k) out[size_t(comp) * nn + k] = buf[k];
    }
    return out;
  }

 private:
  const DiscreteDomain& dom_;
  const GaugeField& A_;
  const SectionField& u_;
  int n_;
  Fft2 fft_;
  std::vector<Vec3> e1_, e2_;
  std::vector<double> symbol_;
};

CVec pcg_solve(const FrameDiracOp& op, const CVec& b, double eps, double rtol,
               int maxit) {
  CVec x = CVec::Zero(b.size());
  CVec r = b;
  CVec z = op.precondition(r, eps);
  CVec p = z;
  double rz = r.dot(z).real();
  const double bnorm = b.norm();
  for (int it = 0; it < maxit && r.norm() > rtol * bnorm; ++it) {
    CVec ap = op.apply_sq_shifted(p, eps);
    const double alpha = rz / p.dot(ap).real();
    x += alpha * p;
    r -= alpha * ap;
    z = op.precondition(r, eps);
    const double rz_new = r.dot(z).real();
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  return x;
}

void orthonormalize(std::vector<CVec>& v) {
  for (size_t i = 0; i < v.size(); ++i) {
    for (size_t j = 0; j < i; ++j) v[i] -= v[j].dot(v[i]) * v[j];
    for (size_t j = 0; j < i; ++j) v[i] -= v[j].dot(v[i]) * v[j];  // re-orthogonalize
    const double nrm = v[i].norm();
    if (nrm < 1e-14) throw DomainError("eigensolver: subspace collapsed");
    v[i] /= nrm;
  }
}

struct RitzSet {
  std::vector<double> lambda;     // sorted by |lambda|
  std::vector<CVec> vec;
  std::vector<double> resid;
};

/// Rayleigh-Ritz for the operator on the span of [basis, op(basis)]. The
/// enrichment makes degenerate +-lambda shells resolvable: a slice of a
/// squared-operator eigenspace need not be invariant under the operator
/// itself, but its enrichment is.
RitzSet ritz_pairs_enriched(const FrameDiracOp& op, const std::vector<CVec>& basis) {
  std::vector<CVec> enriched = basis;
  for (const CVec& v : basis) enriched.push_back(op.apply(v));
  // drop near-dependent directions while orthonormalizing
  std::vector<CVec> y;
  for (CVec& v : enriched) {
    for (const CVec& w : y) v -= w.dot(v) * w;
    for (const CVec& w : y) v -= w.dot(v) * w;
    const double nrm = v.norm();
    if (nrm > 1e-8) y.push_back(v / nrm);
  }
  const int m = int(y.size());
  std::vector<CVec> dv(m);
  for (int i = 0; i < m; ++i) dv[i] = op.apply(y[i]);
  CMat h(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) h(i, j) = y[i].dot(dv[j]);
  h = 0.5 * (h + h.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMat> es(h);

  std::vector<int> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(es.eigenvalues()[a]) < std::abs(es.eigenvalues()[b]);
  });

  RitzSet out;
  for (int oi = 0; oi < m; ++oi) {
    const int j = order[oi];
    const double lam = es.eigenvalues()[j];
    CVec v = CVec::Zero(y[0].size());
    CVec dvv = CVec::Zero(y[0].size());
    for (int i = 0; i < m; ++i) {
      v += es.eigenvectors()(i, j) * y[i];
      dvv += es.eigenvectors()(i, j) * dv[i];
    }
    out.lambda.push_back(lam);
    out.resid.push_back((dvv - lam * v).norm() / v.norm());
    out.vec.push_back(std::move(v));
  }
  return out;
}

RitzSet bottom_spectrum(const DiscreteDomain& dom, const GaugeField& A,
                        const SectionField& u, int count, const EigenOptions& opt,
                        bool* converged) {
  FrameDiracOp op(dom, A, u);
  // The discrete kernel is up to 16-dimensional (the difference symbol also
  // vanishes on the Nyquist modes), and near-degenerate clusters must fit
  // inside the block for the iteration to settle.
  const int m = std::min<int>(std::max(count + 8, 24), int(op.dim()));
  const double two_pi_over_l = 2.0 * M_PI / dom.length;
  const double eps = 1e-4 * two_pi_over_l * two_pi_over_l;

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<CVec> x(m);
  for (int i = 0; i < m; ++i) {
    x[i] = CVec(op.dim());
    for (size_t k = 0; k < op.dim(); ++k) x[i][k] = Complex(gauss(rng), gauss(rng));
  }
  orthonormalize(x);

  RitzSet rs;
  *converged = false;
  for (int outer = 0; outer < opt.max_outer; ++outer) {
    for (int i = 0; i < m; ++i) x[i] = pcg_solve(op, x[i], eps, 1e-10, opt.max_cg);
    orthonormalize(x);

    // restart from the Ritz vectors of the squared operator (sigma ascending);
    // selecting by |lambda| of the first-order operator would keep
    // +-canceling mixtures and stall on symmetric shells
    {
      std::vector<CVec> bx(m);
      for (int i = 0; i < m; ++i) bx[i] = op.apply(op.apply(x[i]));
      CMat hb(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) hb(i, j) = x[i].dot(bx[j]);
      hb = 0.5 * (hb + hb.adjoint()).eval();
      Eigen::SelfAdjointEigenSolver<CMat> es(hb);  // ascending eigenvalues
      std::vector<CVec> rot(m, CVec::Zero(op.dim()));
      for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) rot[j] += es.eigenvectors()(i, j) * x[i];
      x = std::move(rot);
    }

    // extraction: split the +-pairs on the enriched space
    rs = ritz_pairs_enriched(op, x);
    bool ok = int(rs.lambda.size()) >= count;
    for (int i = 0; i < count && i < int(rs.lambda.size()); ++i)
      ok = ok && rs.resid[i] <= opt.tol;
    if (ok) {
      *converged = true;
      break;
    }
  }
  return rs;
}

}  // namespace

EigenmodeResult dirac_eigenmode(const DiscreteDomain& dom, const GaugeField& A,
                                const SectionField& u, int k, const EigenOptions& opt) {
  if (k < 0) throw StructuralError("dirac_eigenmode: k must be >= 0");
  bool conv = false;
  RitzSet rs = bottom_spectrum(dom, A, u, k + 1, opt, &conv);
  FrameDiracOp op(dom, A, u);

  EigenmodeResult out;
  out.converged = conv;
  out.lambda = rs.lambda[k];
  out.residual = rs.resid[k];
  out.psi = op.to_ambient(rs.vec[k]);

  double scale;
  if (opt.psi_norm > 0.0) {
    const double l4 = l4_norm(dom, out.psi);
    scale = opt.psi_norm / l4;
  } else {
    scale = 1.0 / l2_norm(dom, out.psi);
  }
  for (SpinorMat& m : out.psi.psi.v) m *= scale;
  return out;
}

std::vector<double> dirac_spectrum_bottom(const DiscreteDomain& dom, const GaugeField& A,
                                          const SectionField& u, int count,
                                          const EigenOptions& opt) {
  bool conv = false;
  RitzSet rs = bottom_spectrum(dom, A, u, count, opt, &conv);
  std::vector<double> out(rs.lambda.begin(),
                          rs.lambda.begin() + std::min<size_t>(count, rs.lambda.size()));
  return out;
}

FlowResult alternating_search(const DiscreteDomain& dom, const FieldState& state0,
                              const FlowConfig& cfg, const SnapshotHook& hook) {
  cfg.validate();
  if (cfg.psi_norm == 0.0) {
    FieldState s0 = state0;
    s0.psi = TwistedSpinorField(state0.n());
    return coupled_flow(dom, s0, cfg, hook);
  }

  FlowResult out;
  out.state = state0;
  FieldState& s = out.state;
  if (max_tangency_violation(s.u, s.psi) > 1e-6)
    throw DomainError("alternating_search: psi is not tangent along u");

  double total = action_total(dom, s, cfg.action).total;
  out.trace.rows.push_back(make_row(dom, s, cfg.action, 0));
  if (hook) hook(0, s);

  AuStepper stepper(cfg.dt);
  int step = 0;
  for (int outer = 0; outer < cfg.outer_iterations; ++outer) {
    // phase (i): descend (A, u) at fixed psi
    for (int inner = 0; inner < cfg.inner_steps; ++inner) {
      if (!stepper.sweep(dom, s, cfg.action, total)) {
        out.trace.stagnated = true;
        break;
      }
      ++step;
      if (step % cfg.record_interval == 0) {
        out.trace.rows.push_back(make_row(dom, s, cfg.action, step));
        if (hook) hook(step, s);
      }
    }
    if (out.trace.stagnated) break;

    // phase (ii): replace psi by the lowest-|lambda| eigenmode
    EigenOptions eopt;
    eopt.psi_norm = cfg.psi_norm;
    eopt.seed = cfg.seed + 1 + outer;
    EigenmodeResult mode = dirac_eigenmode(dom, s.A, s.u, 0, eopt);
    s.psi = mode.psi;
    total = action_total(dom, s, cfg.action).total;
    ++step;
    out.trace.rows.push_back(make_row(dom, s, cfg.action, step));
    if (hook) hook(step, s);
  }
  return out;
}

}  // namespace ymhd
