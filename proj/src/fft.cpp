#include "ymhd/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace ymhd {

namespace {
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fft2::Fft2(int n) : n_(n), buf_(size_t(n) * n) {
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto* p = reinterpret_cast<fftw_complex*>(buf_.data());
  plan_fwd_ = fftw_plan_dft_2d(n, n, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_2d(n, n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft2::~Fft2() {
  std::lock_guard<std::mutex> lock(plan_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

void Fft2::forward(std::vector<Complex>& data) const {
  buf_ = data;
  fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_),
                   reinterpret_cast<fftw_complex*>(buf_.data()),
                   reinterpret_cast<fftw_complex*>(buf_.data()));
  data = buf_;
}

void Fft2::inverse(std::vector<Complex>& data) const {
  buf_ = data;
  fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_),
                   reinterpret_cast<fftw_complex*>(buf_.data()),
                   reinterpret_cast<fftw_complex*>(buf_.data()));
  const double inv = 1.0 / (double(n_) * n_);
  for (size_t k = 0; k < data.size(); ++k) data[k] = buf_[k] * inv;
}

ScalarField poisson_hodge(const DiscreteDomain& dom, const ScalarField& rhs) {
  const int n = dom.n_side;
  Fft2 fft(n);
  std::vector<Complex> data(rhs.v.begin(), rhs.v.end());
  fft.forward(data);

  // symbol of codiff1 . d0: (sin^2(2 pi m/n) + sin^2(2 pi l/n)) / h^2
  const double invh2 = 1.0 / (dom.h * dom.h);
  for (int l = 0; l < n; ++l) {
    const double sy = std::sin(2.0 * M_PI * l / n);
    for (int m = 0; m < n; ++m) {
      const double sx = std::sin(2.0 * M_PI * m / n);
      const double sym = (sx * sx + sy * sy) * invh2;
      Complex& c = data[size_t(l) * n + m];
      c = sym > 1e-14 * invh2 ? c / sym : Complex(0, 0);
    }
  }
  fft.inverse(data);

  ScalarField out(n);
  for (size_t k = 0; k < out.size(); ++k) out.v[k] = data[k].real();
  return out;
}

ScalarField ball_sum_all_centers(const DiscreteDomain& dom, const ScalarField& density,
                                 double radius) {
  const int n = dom.n_side;
  Fft2 fft(n);
  std::vector<Complex> d(density.v.begin(), density.v.end());
  std::vector<Complex> mask(size_t(n) * n, Complex(0, 0));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (dom.node_distance(i, j, 0, 0) <= radius)
        mask[size_t(j) * n + i] = Complex(1, 0);
  fft.forward(d);
  fft.forward(mask);
  // disk indicator is even, so correlation equals convolution
  for (size_t k = 0; k < d.size(); ++k) d[k] *= mask[k];
  fft.inverse(d);
  ScalarField out(n);
  const double cell = dom.h * dom.h;
  for (size_t k = 0; k < out.size(); ++k) out.v[k] = d[k].real() * cell;
  return out;
}

}  // namespace ymhd
