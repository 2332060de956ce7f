#pragma once

#include <cmath>
#include <vector>

#include "ymhd/group.hpp"

namespace ymhd {

/// Periodic n x n grid of nodes on the flat 2-torus of side `length`, with an
/// optional log conformal factor per node (metric exp(2*lambda) * delta).
struct DiscreteDomain {
  int n_side = 0;
  double length = 0.0;
  double h = 0.0;
  std::vector<double> conformal_exponent;  // lambda, size n_side^2

  DiscreteDomain() = default;
  DiscreteDomain(int n, double len)
      : n_side(n), length(len), h(len / n), conformal_exponent(size_t(n) * n, 0.0) {
    if (n <= 0 || len <= 0.0) throw StructuralError("domain needs n_side > 0, length > 0");
  }

  int wrap(int i) const {
    int r = i % n_side;
    return r < 0 ? r + n_side : r;
  }
  size_t idx(int i, int j) const { return size_t(wrap(j)) * n_side + wrap(i); }
  size_t nodes() const { return size_t(n_side) * n_side; }

  double x_of(int i) const { return i * h; }
  double y_of(int j) const { return j * h; }

  double lambda_at(int i, int j) const { return conformal_exponent[idx(i, j)]; }
  bool flat() const {
    for (double l : conformal_exponent)
      if (l != 0.0) return false;
    return true;
  }

  /// Geodesic distance on the torus between node (i1,j1) and (i2,j2),
  /// measured in length units with the flat metric.
  double node_distance(int i1, int j1, int i2, int j2) const {
    int di = std::abs(wrap(i1) - wrap(i2));
    int dj = std::abs(wrap(j1) - wrap(j2));
    di = std::min(di, n_side - di);
    dj = std::min(dj, n_side - dj);
    return h * std::sqrt(double(di) * di + double(dj) * dj);
  }
};

template <typename T>
struct Field {
  int n = 0;
  std::vector<T> v;

  Field() = default;
  explicit Field(int n_side) : n(n_side), v(size_t(n_side) * n_side) {}
  Field(int n_side, const T& init) : n(n_side), v(size_t(n_side) * n_side, init) {}

  int wrap(int i) const {
    int r = i % n;
    return r < 0 ? r + n : r;
  }
  T& at(int i, int j) { return v[size_t(wrap(j)) * n + wrap(i)]; }
  const T& at(int i, int j) const { return v[size_t(wrap(j)) * n + wrap(i)]; }
  size_t size() const { return v.size(); }
};

using ScalarField = Field<double>;
using VecField = Field<Vec3>;              // R^3-valued (sections, tangent data)
using CoeffField = Field<Vec3>;            // algebra coefficients (up to dim g)
using SpinorField = Field<Vec2c>;          // plain 2-spinors
using SpinorMat = Eigen::Matrix<Complex, 2, 3>;  // 2-spinor tensor ambient R^3
using TwistedField = Field<SpinorMat>;

/// Scalar 1-form: one value per frame direction per node.
struct OneForm {
  ScalarField c[2];
  OneForm() = default;
  explicit OneForm(int n) : c{ScalarField(n, 0.0), ScalarField(n, 0.0)} {}
};

template <typename T>
struct OneFormOf {
  Field<T> c[2];
  OneFormOf() = default;
  explicit OneFormOf(int n) : c{Field<T>(n), Field<T>(n)} {}
  OneFormOf(int n, const T& init) : c{Field<T>(n, init), Field<T>(n, init)} {}
};

}  // namespace ymhd
