#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ymhd/blowup.hpp"
#include "ymhd/solver.hpp"

namespace ymhd {

/// Flat key = value configuration with '#' comments and dotted section keys.
struct RunConfig {
  int n_side = 32;
  double length = 1.0;
  GroupKind group = GroupKind::U1;
  int fiber_dim = 2;

  ActionParams action;
  FlowConfig flow;

  double epsilon0 = 0.1;
  std::vector<double> radii = {0.05, 0.1, 0.2};
  int stride = 1;

  std::uint64_t seed = 0;
  bool binary = false;
  int snapshot_interval = 0;  // 0: first and last only

  std::string init_kind = "constant";
  double init_amplitude_a = 0.3;
  double init_amplitude_u = 0.5;
  double init_amplitude_psi = 0.5;
  double bubble_lambda = 0.05;
  int bubble_center_i = -1;  // -1: grid center
  int bubble_center_j = -1;

  int rescale_center_i = 0;
  int rescale_center_j = 0;
  double rescale_ratio = 0.5;
  int rescale_target_n = 64;

  bool corrupt_gamma = false;  // fault-injection hook for check-invariants

  void validate() const;
};

RunConfig parse_config_text(const std::string& text, const std::string& source_name);
RunConfig parse_config_file(const std::string& path);

/// Initial data from the configured generator spec.
FieldState make_initial_state(const DiscreteDomain& dom, const RunConfig& cfg);

// --- snapshot files ---
// Header line "YMHD1 <n_side> <length> <group> <fiber_dim>", then node-major
// rows of A (2 dim_g reals), u (3 reals), psi (12 reals, interleaved complex).
// Text payload has 17 significant digits; binary payload is little-endian
// 64-bit floats. Readers distinguish the two by the exact byte length of a
// binary payload.

void write_snapshot(const std::string& path, const DiscreteDomain& dom,
                    const FieldState& s, bool binary);
std::pair<DiscreteDomain, FieldState> read_snapshot(const std::string& path);

void write_trace_csv(const std::string& path, const FlowTrace& trace);
void write_report_csv(const std::string& path, const ConcentrationReport& rep);
std::string report_summary(const ConcentrationReport& rep);

/// Density grids |F|^2, |d_A u|^2, |psi|^4, Re<psi, D psi> as n x n CSV
/// files; their plain h^2 quadrature reproduces the action breakdown.
void write_plotdata(const std::string& dir, const DiscreteDomain& dom,
                    const FieldState& s, const ActionParams& p);

std::string format_g17(double v);

}  // namespace ymhd
