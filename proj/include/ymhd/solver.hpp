#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ymhd/euler_lagrange.hpp"

namespace ymhd {

enum class FlowMode { HarmonicSectionFlow, CoupledFlow, AlternatingDirac };

FlowMode flow_mode_from_name(const std::string& name);
std::string flow_mode_name(FlowMode m);

struct FlowConfig {
  double dt = 0.05;                // initial time step (backtracking halves it)
  int max_steps = 10000;
  double tol_residual = 1e-6;      // stop when the relevant residual norms are below
  FlowMode mode = FlowMode::HarmonicSectionFlow;
  double psi_norm = 0.0;           // L^4 normalization of the spinor iterate
  std::uint64_t seed = 0;
  int record_interval = 1;
  int spot_check_interval = 100;   // finite-difference gradient spot check; 0 = off
  int outer_iterations = 8;        // alternating scheme
  int inner_steps = 40;            // (A,u) steps per alternating phase
  ActionParams action;

  void validate() const;
};

struct TraceRow {
  int step = 0;
  ActionBreakdown action;
  double res_a = 0.0, res_u = 0.0, res_psi = 0.0;
  double max_higgs_density = 0.0;
  double max_psi4_density = 0.0;
};

struct FlowTrace {
  std::vector<TraceRow> rows;
  bool converged = false;
  bool stagnated = false;           // step size underflow
  double max_spot_check_error = 0.0;
};

struct FlowResult {
  FieldState state;
  FlowTrace trace;
};

/// Called on every recorded step; used by the CLI to emit snapshots.
using SnapshotHook = std::function<void(int step, const FieldState&)>;

/// Gradient flow of the section energy at fixed gauge potential, psi = 0.
/// Explicit steps along the sphere exponential with backtracking; the section
/// energy is non-increasing across accepted steps.
FlowResult heat_flow_harmonic_section(const DiscreteDomain& dom, const GaugeField& A,
                                      const SectionField& u0, const FlowConfig& cfg,
                                      const SnapshotHook& hook = {});

/// Simultaneous descent on (A, u) with independent backtracking line
/// searches, psi = 0. Total action non-increasing.
FlowResult coupled_flow(const DiscreteDomain& dom, const FieldState& state0,
                        const FlowConfig& cfg, const SnapshotHook& hook = {});

struct EigenmodeResult {
  double lambda = 0.0;
  TwistedSpinorField psi;
  bool converged = false;
  double residual = 0.0;  // ||D psi - lambda psi||_L2 / ||psi||_L2
};

struct EigenOptions {
  double tol = 1e-9;        // relative eigenpair residual
  int max_outer = 60;
  int max_cg = 400;
  double psi_norm = 0.0;    // L^4 normalization of the returned mode (0: L^2 = 1)
  std::uint64_t seed = 1;
};

/// k-th smallest-|lambda| eigenpair of the twisted Dirac operator restricted
/// to tangent fields. Subspace iteration on the inverse of D^2 (shifted by a
/// small epsilon), with Fourier-preconditioned conjugate-gradient inner
/// solves, then a Rayleigh-Ritz split of D inside the converged subspace.
EigenmodeResult dirac_eigenmode(const DiscreteDomain& dom, const GaugeField& A,
                                const SectionField& u, int k,
                                const EigenOptions& opt = {});

/// Returns the full set of Ritz pairs used by dirac_eigenmode (ascending
/// |lambda|); test hook for spectrum checks.
std::vector<double> dirac_spectrum_bottom(const DiscreteDomain& dom, const GaugeField& A,
                                          const SectionField& u, int count,
                                          const EigenOptions& opt = {});

/// Alternation between (A, u) descent at fixed psi and replacing psi with the
/// lowest-|lambda| eigenmode rescaled to cfg.psi_norm in L^4. Produces a
/// sequence of states whose residual norms are recorded per outer iteration;
/// no convergence to a coupled critical point is claimed. With psi_norm = 0
/// this reduces exactly to coupled_flow.
FlowResult alternating_search(const DiscreteDomain& dom, const FieldState& state0,
                              const FlowConfig& cfg, const SnapshotHook& hook = {});

}  // namespace ymhd
