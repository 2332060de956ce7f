#pragma once

#include <vector>

#include "ymhd/domain.hpp"

namespace ymhd {

/// 2D complex FFT on an n x n grid (row-major, x fastest), FFTW-backed.
class Fft2 {
 public:
  explicit Fft2(int n);
  ~Fft2();
  Fft2(const Fft2&) = delete;
  Fft2& operator=(const Fft2&) = delete;

  void forward(std::vector<Complex>& data) const;   // in place, unnormalized
  void inverse(std::vector<Complex>& data) const;   // in place, divides by n^2

  int n() const { return n_; }

 private:
  int n_;
  void* plan_fwd_;
  void* plan_bwd_;
  mutable std::vector<Complex> buf_;
};

/// Solves (codiff1 . d0) theta = rhs on the torus with the exact symbol of the
/// central-difference operators. Components of rhs in the kernel of the
/// symbol (the constant mode and, for even n, the three Nyquist modes) are
/// dropped; the solution has zero mean.
ScalarField poisson_hodge(const DiscreteDomain& dom, const ScalarField& rhs);

/// Circular correlation of a density with the indicator of a radius-r disk:
/// out(c) = sum_y density(y) * [dist(c, y) <= r] * h^2, evaluated for every
/// center at once.
ScalarField ball_sum_all_centers(const DiscreteDomain& dom, const ScalarField& density,
                                 double radius);

}  // namespace ymhd
