#include <doctest.h>

#include <cmath>
#include <random>

#include "ymhd/generators.hpp"
#include "ymhd/operators.hpp"

using namespace ymhd;

namespace {
SpinorField random_spinor_field(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  SpinorField f(n);
  for (auto& v : f.v) v = Vec2c(Complex(g(rng), g(rng)), Complex(g(rng), g(rng)));
  return f;
}
}  // namespace

TEST_CASE("d0 on constants and linearity") {
  DiscreteDomain dom(16, 2.0);
  ScalarField c(16, 3.7);
  OneForm dc = d0(dom, c);
  for (int dir = 0; dir < 2; ++dir)
    for (double x : dc.c[dir].v) CHECK(x == 0.0);

  std::mt19937_64 rng(1);
  ScalarField f = sample_scalar(dom, SmoothScalar::random(rng, 2.0, 2, 1.0));
  ScalarField g = sample_scalar(dom, SmoothScalar::random(rng, 2.0, 2, 1.0));
  ScalarField sum(16);
  for (size_t k = 0; k < sum.size(); ++k) sum.v[k] = f.v[k] + g.v[k];
  OneForm a = d0(dom, f), b = d0(dom, g), s = d0(dom, sum);
  for (int dir = 0; dir < 2; ++dir)
    for (size_t k = 0; k < s.c[dir].size(); ++k)
      CHECK(s.c[dir].v[k] == a.c[dir].v[k] + b.c[dir].v[k]);
}

TEST_CASE("d0 is second order on smooth fields") {
  const double L = 1.0;
  auto err_at = [&](int n) {
    DiscreteDomain dom(n, L);
    ScalarField f(n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) f.at(i, j) = std::sin(2.0 * M_PI * dom.x_of(i) / L);
    OneForm df = d0(dom, f);
    double worst = 0.0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double exact = (2.0 * M_PI / L) * std::cos(2.0 * M_PI * dom.x_of(i) / L);
        worst = std::max(worst, std::abs(df.c[0].at(i, j) - exact));
      }
    return worst;
  };
  const double e16 = err_at(16), e32 = err_at(32), e64 = err_at(64);
  CHECK(std::log2(e16 / e32) >= 1.9);
  CHECK(std::log2(e32 / e64) >= 1.9);
}

TEST_CASE("d1 after d0 vanishes identically") {
  DiscreteDomain dom(32, 1.0);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 5; ++t) {
    ScalarField f = sample_scalar(dom, SmoothScalar::random(rng, 1.0, 3, 2.0));
    ScalarField dd = d1(dom, d0(dom, f));
    double worst = 0.0;
    for (double x : dd.v) worst = std::max(worst, std::abs(x));
    CHECK(worst <= 1e-13);
  }
  OneForm zero(32);
  ScalarField z = d1(dom, zero);
  for (double x : z.v) CHECK(x == 0.0);
}

TEST_CASE("d1 of a shear form") {
  const double L = 1.0;
  auto err_at = [&](int n) {
    DiscreteDomain dom(n, L);
    OneForm a(n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        a.c[0].at(i, j) = -std::sin(2.0 * M_PI * dom.y_of(j) / L);
    ScalarField f = d1(dom, a);
    double worst = 0.0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double exact = (2.0 * M_PI / L) * std::cos(2.0 * M_PI * dom.y_of(j) / L);
        worst = std::max(worst, std::abs(f.at(i, j) - exact));
      }
    return worst;
  };
  CHECK(std::log2(err_at(16) / err_at(32)) >= 1.9);
}

TEST_CASE("codiff1 adjointness and the wide stencil") {
  DiscreteDomain dom(24, 1.3);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) {
    ScalarField f = sample_scalar(dom, SmoothScalar::random(rng, 1.3, 2, 1.0));
    OneForm a;
    a.c[0] = sample_scalar(dom, SmoothScalar::random(rng, 1.3, 2, 1.0));
    a.c[1] = sample_scalar(dom, SmoothScalar::random(rng, 1.3, 2, 1.0));
    const double lhs = l2_inner(dom, d0(dom, f), a);
    const double rhs = l2_inner(dom, f, codiff1(dom, a));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));

    ScalarField lap = codiff1(dom, d0(dom, f));
    const double inv4h2 = 1.0 / (4.0 * dom.h * dom.h);
    double worst = 0.0;
    for (int j = 0; j < 24; ++j)
      for (int i = 0; i < 24; ++i) {
        const double wide = (f.at(i + 2, j) + f.at(i - 2, j) + f.at(i, j + 2) +
                             f.at(i, j - 2) - 4.0 * f.at(i, j)) *
                            inv4h2;
        worst = std::max(worst, std::abs(lap.at(i, j) + wide));
      }
    CHECK(worst <= 1e-11);
  }
  OneForm zero(24);
  for (double x : codiff1(dom, zero).v) CHECK(x == 0.0);
}

TEST_CASE("gamma matrices satisfy the Clifford relation") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    Vec2c psi(Complex(g(rng), g(rng)), Complex(g(rng), g(rng)));
    Vec2c phi(Complex(g(rng), g(rng)), Complex(g(rng), g(rng)));
    CHECK((gamma(1, gamma(1, psi)) + psi).norm() <= 1e-15);
    CHECK((gamma(2, gamma(2, psi)) + psi).norm() <= 1e-15);
    CHECK((gamma(1, gamma(2, psi)) + gamma(2, gamma(1, psi))).norm() <= 1e-15);
    for (int dir = 1; dir <= 2; ++dir) {
      const Complex s = phi.dot(gamma(dir, psi)) + gamma(dir, phi).dot(psi);
      CHECK(std::abs(s) <= 1e-14);
    }
  }
  CHECK_THROWS_AS(gamma(3, Vec2c::Zero()), StructuralError);
}

TEST_CASE("plain Dirac operator") {
  DiscreteDomain dom(32, 1.0);
  std::mt19937_64 rng(5);

  SpinorField c(32, Vec2c(Complex(1.0, -0.5), Complex(0.25, 2.0)));
  for (auto& v : dirac_plain(dom, c).v) CHECK(v.norm() == 0.0);

  SpinorField psi = random_spinor_field(32, rng);
  SpinorField phi = random_spinor_field(32, rng);
  const Complex lhs = l2_inner_c(dom, dirac_plain(dom, psi), phi);
  const Complex rhs = l2_inner_c(dom, psi, dirac_plain(dom, phi));
  CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));

  // anti-commutes with the chirality matrix
  const Mat2c chi = standard_clifford().g[0] * standard_clifford().g[1];
  SpinorField cpsi(32);
  for (size_t k = 0; k < psi.size(); ++k) cpsi.v[k] = chi * psi.v[k];
  SpinorField d1f = dirac_plain(dom, cpsi);
  SpinorField d2f = dirac_plain(dom, psi);
  double worst = 0.0;
  for (size_t k = 0; k < psi.size(); ++k)
    worst = std::max(worst, (d1f.v[k] + chi * d2f.v[k]).norm());
  CHECK(worst <= 1e-12);
}

TEST_CASE("plane waves are eigenspinors of the discrete symbol") {
  const int n = 32;
  DiscreteDomain dom(n, 1.0);
  const int mx = 3, my = -2;
  const double kx = 2.0 * M_PI * mx / dom.length;
  const double ky = 2.0 * M_PI * my / dom.length;

  // discrete symbol: i sin(k h)/h per direction
  const Complex I(0, 1);
  Mat2c sym = I * (std::sin(kx * dom.h) / dom.h) * standard_clifford().g[0] +
              I * (std::sin(ky * dom.h) / dom.h) * standard_clifford().g[1];
  Eigen::ComplexEigenSolver<Mat2c> es(sym);
  for (int mode = 0; mode < 2; ++mode) {
    const Complex lambda = es.eigenvalues()[mode];
    CHECK(std::abs(lambda.imag()) <= 1e-12);  // Hermitian symbol
    Vec2c p0 = es.eigenvectors().col(mode);
    SpinorField psi(n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        psi.at(i, j) = std::exp(I * (kx * dom.x_of(i) + ky * dom.y_of(j))) * p0;
    SpinorField dpsi = dirac_plain(dom, psi);
    double worst = 0.0;
    for (size_t k = 0; k < psi.size(); ++k)
      worst = std::max(worst, (dpsi.v[k] - lambda * psi.v[k]).norm());
    CHECK(worst <= 1e-12 * std::abs(lambda.real() == 0.0 ? 1.0 : lambda.real()));
  }
}

TEST_CASE("integration on the torus") {
  DiscreteDomain dom(64, 2.5);
  ScalarField one(64, 1.0);
  CHECK(integrate(dom, one) == doctest::Approx(2.5 * 2.5).epsilon(1e-13));

  ScalarField s(64), s2(64);
  for (int j = 0; j < 64; ++j)
    for (int i = 0; i < 64; ++i) {
      const double v = std::sin(2.0 * M_PI * dom.x_of(i) / dom.length);
      s.at(i, j) = v;
      s2.at(i, j) = v * v;
    }
  CHECK(std::abs(integrate(dom, s)) <= 1e-12);
  CHECK(std::abs(integrate(dom, s2) - 2.5 * 2.5 / 2.0) <= 1e-10);
}
