#include "ymhd/blowup.hpp"

#include <algorithm>
#include <cmath>

#include "ymhd/fft.hpp"

namespace ymhd {

std::string energy_kind_name(EnergyKind k) {
  switch (k) {
    case EnergyKind::Higgs: return "higgs";
    case EnergyKind::SpinorL4: return "spinor_l4";
    default: return "yang_mills";
  }
}

namespace {

ScalarField density_of(const DiscreteDomain& dom, const FieldState& s, EnergyKind k) {
  switch (k) {
    case EnergyKind::Higgs: return higgs_density(dom, s.A, s.u);
    case EnergyKind::SpinorL4: return psi4_density(dom, s.psi);
    default: return ym_density(dom, s.A);
  }
}

}  // namespace

double ball_energy(const DiscreteDomain& dom, const FieldState& s,
                   const BallEnergySpec& spec) {
  if (spec.radius <= 0.0 || spec.radius > 0.5 * dom.length)
    throw DomainError("ball_energy: radius must lie in (0, length/2]");
  ScalarField den = density_of(dom, s, spec.which);
  const double cell = dom.h * dom.h;
  double sum = 0.0;
  for (int j = 0; j < dom.n_side; ++j)
    for (int i = 0; i < dom.n_side; ++i)
      if (dom.node_distance(i, j, spec.center_i, spec.center_j) <= spec.radius)
        sum += den.at(i, j) * cell;
  return sum;
}

ConcentrationReport concentration_scan(const DiscreteDomain& dom,
                                       const std::vector<FieldState>& snapshots,
                                       double epsilon0,
                                       const std::vector<double>& radii, int stride) {
  if (snapshots.size() < 2)
    throw StructuralError("concentration_scan needs at least 2 snapshots");
  if (radii.empty()) throw StructuralError("concentration_scan needs a radius list");
  if (stride < 1) throw StructuralError("concentration_scan: stride must be >= 1");
  for (double r : radii)
    if (r <= 0.0 || r > 0.5 * dom.length)
      throw DomainError("concentration_scan: radius outside (0, length/2]");

  ConcentrationReport rep;
  rep.epsilon0 = epsilon0;
  rep.radii = radii;
  rep.stride = stride;
  std::vector<double> sorted_radii = radii;
  std::sort(sorted_radii.begin(), sorted_radii.end());
  const double r_min = sorted_radii.front();

  const size_t tail_start = snapshots.size() / 2;
  const EnergyKind kinds[3] = {EnergyKind::Higgs, EnergyKind::SpinorL4,
                               EnergyKind::YangMills};

  for (int ki = 0; ki < 3; ++ki) {
    // densities of the tail snapshots
    std::vector<ScalarField> dens;
    for (size_t t = tail_start; t < snapshots.size(); ++t)
      dens.push_back(density_of(dom, snapshots[t], kinds[ki]));

    for (double r : sorted_radii) {
      ScalarField proxy(dom.n_side, 0.0);
      bool first = true;
      for (const ScalarField& d : dens) {
        ScalarField ball = ball_sum_all_centers(dom, d, r);
        if (first) {
          proxy = ball;
          first = false;
        } else {
          for (size_t k = 0; k < proxy.size(); ++k)
            proxy.v[k] = std::min(proxy.v[k], ball.v[k]);
        }
      }
      for (int j = 0; j < dom.n_side; j += stride)
        for (int i = 0; i < dom.n_side; i += stride) {
          const double e = proxy.at(i, j);
          const bool flagged = e >= epsilon0;
          rep.rows.push_back({i, j, r, kinds[ki], e, flagged});
          if (flagged && r == r_min) {
            FlaggedPoint fp{i, j, e};
            if (ki == 0) rep.s1.push_back(fp);
            if (ki == 1) rep.s2.push_back(fp);
            if (ki == 2) rep.s3.push_back(fp);
          }
        }
    }
  }

  auto contains = [](const std::vector<FlaggedPoint>& set, int i, int j) {
    for (const FlaggedPoint& p : set)
      if (p.i == i && p.j == j) return true;
    return false;
  };
  for (const FlaggedPoint& p : rep.s2)
    if (!contains(rep.s1, p.i, p.j)) {
      rep.s2_subset_s1 = false;
      rep.warnings.push_back("spinor energy concentrates at (" + std::to_string(p.i) +
                             "," + std::to_string(p.j) +
                             ") without section concentration");
    }
  if (!rep.s3.empty()) {
    rep.s3_empty = false;
    rep.warnings.push_back("curvature energy concentrates at " +
                           std::to_string(rep.s3.size()) +
                           " point(s); expected none for approximating sequences");
  }
  return rep;
}

std::pair<DiscreteDomain, FieldState> rescale(const DiscreteDomain& dom,
                                              const FieldState& s, int center_i,
                                              int center_j, double r, int target_n) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("rescale: need 0 < r < 1");
  if (target_n < 4) throw StructuralError("rescale: target_n too small");

  DiscreteDomain tdom(target_n, dom.length);
  FieldState out = zero_state(s.A.group, target_n);
  const double cx = dom.x_of(center_i);
  const double cy = dom.y_of(center_j);
  const double sqrt_r = std::sqrt(r);

  // bilinear interpolation with periodic wrap, in source grid units; the
  // accumulator type is pinned to avoid returning Eigen expression views
  auto sample = [&]<typename Get>(double sx, double sy, Get get) {
    const double gx = sx / dom.h;
    const double gy = sy / dom.h;
    const int i0 = int(std::floor(gx)), j0 = int(std::floor(gy));
    const double fx = gx - i0, fy = gy - j0;
    using T = decltype(get(0, 0));
    T out = (1 - fx) * (1 - fy) * get(i0, j0);
    out += fx * (1 - fy) * get(i0 + 1, j0);
    out += (1 - fx) * fy * get(i0, j0 + 1);
    out += fx * fy * get(i0 + 1, j0 + 1);
    return out;
  };

  for (int j = 0; j < target_n; ++j)
    for (int i = 0; i < target_n; ++i) {
      const double xi = (i - target_n / 2) * tdom.h;
      const double eta = (j - target_n / 2) * tdom.h;
      const double sx = cx + r * xi;
      const double sy = cy + r * eta;

      for (int dir = 0; dir < 2; ++dir)
        out.A.a.c[dir].at(i, j) =
            r * sample(sx, sy, [&](int a, int b) -> Vec3 { return s.A.a.c[dir].at(a, b); });

      Vec3 uu = sample(sx, sy, [&](int a, int b) -> Vec3 { return s.u.u.at(a, b); });
      if (uu.norm() < 1e-8) uu = s.u.u.at(int(std::round(sx / dom.h)), int(std::round(sy / dom.h)));
      out.u.u.at(i, j) = uu / uu.norm();

      out.psi.psi.at(i, j) =
          sqrt_r *
          sample(sx, sy, [&](int a, int b) -> SpinorMat { return s.psi.psi.at(a, b); });
    }
  project_spinor_tangent(out.u, out.psi);
  return {std::move(tdom), std::move(out)};
}

BubbleExtraction extract_bubble(const DiscreteDomain& dom,
                                const std::vector<FieldState>& snapshots,
                                double epsilon0, const BubbleOptions& opt) {
  BubbleExtraction out;
  const double target = 0.25 * epsilon0;

  for (size_t k = 0; k < snapshots.size(); ++k) {
    ScalarField hd = higgs_density(dom, snapshots[k].A, snapshots[k].u);
    ScalarField p4 = psi4_density(dom, snapshots[k].psi);
    ScalarField joint(dom.n_side);
    for (size_t q = 0; q < joint.size(); ++q) joint.v[q] = hd.v[q] + p4.v[q];

    double total = 0.0;
    for (double x : joint.v) total += x;
    total *= dom.h * dom.h;
    if (total < target) continue;  // criterion not attainable for this snapshot

    auto sup_ball = [&](double rho, int* bi, int* bj) {
      ScalarField b = ball_sum_all_centers(dom, joint, rho);
      double best = -1.0;
      for (int j = 0; j < dom.n_side; ++j)
        for (int i = 0; i < dom.n_side; ++i)
          if (b.at(i, j) > best) {
            best = b.at(i, j);
            if (bi) *bi = i;
            if (bj) *bj = j;
          }
      return best;
    };

    double lo = 0.0, hi = 0.5 * dom.length;
    if (sup_ball(hi, nullptr, nullptr) < target) continue;
    for (int it = 0; it < 48 && (hi - lo) > 1e-12 * dom.length; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (sup_ball(mid, nullptr, nullptr) >= target)
        hi = mid;
      else
        lo = mid;
    }
    int bi = 0, bj = 0;
    sup_ball(hi, &bi, &bj);

    BubbleParam bp;
    bp.snapshot = int(k);
    bp.i = bi;
    bp.j = bj;
    bp.lambda = hi;
    out.bubbles.push_back(bp);

    double r = opt.view_diameters * hi / dom.length;
    r = std::min(std::max(r, 4.0 * dom.h / dom.length), 0.999);
    out.rescaled.push_back(rescale(dom, snapshots[k], bi, bj, r, opt.target_n));
  }
  return out;
}

}  // namespace ymhd
