#pragma once

#include <string>
#include <vector>

#include "ymhd/action.hpp"

namespace ymhd {

enum class EnergyKind { Higgs, SpinorL4, YangMills };

std::string energy_kind_name(EnergyKind k);

struct BallEnergySpec {
  int center_i = 0;
  int center_j = 0;
  double radius = 0.0;
  EnergyKind which = EnergyKind::Higgs;
};

/// Quadrature of the chosen density over nodes within the torus ball.
/// Monotone non-decreasing in the radius. Radius must lie in (0, length/2].
double ball_energy(const DiscreteDomain& dom, const FieldState& s,
                   const BallEnergySpec& spec);

struct FlaggedPoint {
  int i = 0, j = 0;
  double energy = 0.0;  // liminf proxy at the smallest scanned radius
};

struct ConcentrationReport {
  double epsilon0 = 0.0;
  std::vector<double> radii;
  int stride = 1;
  std::vector<FlaggedPoint> s1, s2, s3;  // section, spinor, curvature energy
  bool s2_subset_s1 = true;
  bool s3_empty = true;
  std::vector<std::string> warnings;

  struct Row {
    int i = 0, j = 0;
    double radius = 0.0;
    EnergyKind kind = EnergyKind::Higgs;
    double energy = 0.0;
    bool flagged = false;
  };
  std::vector<Row> rows;
};

/// Scans a snapshot sequence for energy concentration. The liminf over the
/// sequence is replaced by the minimum over its tail half; a point enters a
/// concentration set when that proxy stays >= epsilon0 at the smallest
/// scanned radius. Containment expectations (no curvature concentration,
/// spinor set inside the section set) are reported as warnings, not errors.
ConcentrationReport concentration_scan(const DiscreteDomain& dom,
                                       const std::vector<FieldState>& snapshots,
                                       double epsilon0,
                                       const std::vector<double>& radii, int stride = 1);

/// Zooms into the ball of radius r*length/2 around the given node:
/// A_r(x) = r A(c + rx), u_r(x) = u(c + rx), psi_r(x) = sqrt(r) psi(c + rx),
/// bilinearly interpolated onto a target_n grid of the same side length,
/// with the section renormalized and the spinor re-projected.
std::pair<DiscreteDomain, FieldState> rescale(const DiscreteDomain& dom,
                                              const FieldState& s, int center_i,
                                              int center_j, double r, int target_n);

struct BubbleParam {
  int snapshot = 0;
  int i = 0, j = 0;
  double lambda = 0.0;
};

struct BubbleExtraction {
  std::vector<BubbleParam> bubbles;
  // rescaled state around each recovered (center, lambda), patch side
  // view_diameters * lambda
  std::vector<std::pair<DiscreteDomain, FieldState>> rescaled;
};

struct BubbleOptions {
  int target_n = 64;
  double view_diameters = 10.0;  // rescaled patch side in units of lambda
};

/// Per snapshot, the smallest radius at which the best ball captures
/// epsilon0/4 of the joint section + spinor energy, and the achieving
/// center. Snapshots whose total joint energy is below epsilon0/4 yield no
/// bubble.
BubbleExtraction extract_bubble(const DiscreteDomain& dom,
                                const std::vector<FieldState>& snapshots,
                                double epsilon0, const BubbleOptions& opt = {});

}  // namespace ymhd
