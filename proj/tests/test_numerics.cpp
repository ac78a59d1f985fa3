#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rmtlab/complex_linalg.hpp"
#include "rmtlab/ensembles.hpp"
#include "rmtlab/ode.hpp"
#include "rmtlab/quadrature.hpp"
#include "rmtlab/rng.hpp"
#include "rmtlab/special_functions.hpp"

using namespace rmtlab;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Cofactor-expansion determinant: the independent oracle for the LU path.
cdouble cofactor_det(const ComplexMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  cdouble det = 0.0;
  double sign = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    ComplexMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t jj = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == col) continue;
        minor(i - 1, jj++) = m(i, j);
      }
    }
    det += sign * m(0, col) * cofactor_det(minor);
    sign = -sign;
  }
  return det;
}

ComplexMatrix random_matrix(std::size_t n, RngStream& rng) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.complex_normal();
  return m;
}

// Weierstrass-product log G(1+z), independent of the implementation path.
double barnes_oracle_1p(double z) {
  constexpr double euler_gamma = 0.57721566490153286060651209008240243;
  const long K = 1000000;
  double sum = 0.0;
  for (long k = K; k >= 1; --k) {
    const double x = z / k;
    sum += k * std::log1p(x) - z + z * z / (2.0 * k);
  }
  // tail of sum_{k>K} [z^3/(3k^2) - z^4/(4k^3) + z^5/(5k^4)]
  const double K1 = static_cast<double>(K);
  const double s2 = 1.0 / K1 - 1.0 / (2.0 * K1 * K1) + 1.0 / (6.0 * K1 * K1 * K1);
  const double s3 = 1.0 / (2.0 * K1 * K1) - 1.0 / (2.0 * K1 * K1 * K1);
  const double s4 = 1.0 / (3.0 * K1 * K1 * K1);
  sum += std::pow(z, 3) / 3.0 * s2 - std::pow(z, 4) / 4.0 * s3 + std::pow(z, 5) / 5.0 * s4;
  return 0.5 * z * std::log(kTwoPi) - 0.5 * (z + z * z * (1.0 + euler_gamma)) + sum;
}

}  // namespace

TEST_CASE("lu_determinant identity and diagonal") {
  CHECK(std::abs(lu_determinant(ComplexMatrix::identity(4)) - cdouble(1.0)) < 1e-14);
  ComplexMatrix d(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = cdouble(0.0, 3.0);
  CHECK(std::abs(lu_determinant(d) - cdouble(0.0, 6.0)) < 1e-14);
}

TEST_CASE("lu_determinant matches cofactor expansion on a seeded 5x5") {
  RngStream rng(7);
  const ComplexMatrix m = random_matrix(5, rng);
  const cdouble lu = lu_determinant(m);
  const cdouble oracle = cofactor_det(m);
  CHECK(std::abs(lu - oracle) <= 1e-10 * std::abs(oracle));
}

TEST_CASE("lu_determinant is multiplicative on random 6x6 pairs") {
  RngStream rng(11);
  for (int trial = 0; trial < 8; ++trial) {
    const ComplexMatrix a = random_matrix(6, rng);
    const ComplexMatrix b = random_matrix(6, rng);
    const cdouble lhs = lu_determinant(a * b);
    const cdouble rhs = lu_determinant(a) * lu_determinant(b);
    CHECK(std::abs(lhs - rhs) <= 1e-8 * std::abs(rhs));
  }
}

TEST_CASE("lu_determinant rejects non-square input") {
  ComplexMatrix m(2, 3);
  CHECK_THROWS_AS(lu_determinant(m), DimensionError);
}

TEST_CASE("eigenangles of the identity and of diag(i, -i)") {
  const auto a = eigenangles_unitary(ComplexMatrix::identity(3));
  REQUIRE(a.size() == 3);
  for (double x : a) CHECK(std::abs(x) < 1e-9);

  ComplexMatrix d(2, 2);
  d(0, 0) = cdouble(0.0, 1.0);
  d(1, 1) = cdouble(0.0, -1.0);
  const auto b = eigenangles_unitary(d);
  CHECK(b[0] == doctest::Approx(kPi / 2).epsilon(1e-10));
  CHECK(b[1] == doctest::Approx(3 * kPi / 2).epsilon(1e-10));
}

TEST_CASE("eigenangles of the 3-cycle are cube roots of unity") {
  ComplexMatrix p(3, 3);
  p(0, 1) = 1.0;
  p(1, 2) = 1.0;
  p(2, 0) = 1.0;
  const auto a = eigenangles_unitary(p);
  REQUIRE(a.size() == 3);
  CHECK(a[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(a[1] == doctest::Approx(kTwoPi / 3).epsilon(1e-9));
  CHECK(a[2] == doctest::Approx(2 * kTwoPi / 3).epsilon(1e-9));
}

TEST_CASE("eigenangle sum reproduces the trace of Haar unitaries") {
  RngStream rng(3);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 3 + 2 * trial;
    const ComplexMatrix u = haar_matrix(Group{GroupKind::U, n}, rng);
    const auto angles = eigenangles_unitary(u);
    cdouble sum = 0.0;
    for (double a : angles) sum += std::polar(1.0, a);
    CHECK(std::abs(sum - u.trace()) < 1e-8);
  }
}

TEST_CASE("eigenangles rejects clearly non-unitary input") {
  ComplexMatrix m(2, 2);
  m(0, 0) = 2.0;
  m(1, 1) = 1.0;
  CHECK_THROWS_AS(eigenangles_unitary(m), PreconditionError);
}

TEST_CASE("log Barnes G special values and recursion") {
  CHECK(std::abs(log_barnes_g(1.0)) < 1e-12);
  CHECK(std::abs(log_barnes_g(2.0)) < 1e-12);
  CHECK(std::abs(log_barnes_g(3.0)) < 1e-12);                   // G(3) = 1
  CHECK(log_barnes_g(4.0) == doctest::Approx(std::log(2.0)));   // G(4) = 2
  for (double x = 0.5; x <= 10.5; x += 1.0) {
    const double lhs = log_barnes_g(x + 1.0);
    const double rhs = std::lgamma(x) + log_barnes_g(x);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
  }
  CHECK_THROWS_AS(log_barnes_g(-1.0), DomainError);
}

TEST_CASE("log Barnes G at 1/2 matches the Weierstrass-product oracle") {
  const double oracle = barnes_oracle_1p(-0.5);  // log G(1/2)
  CHECK(std::abs(log_barnes_g(0.5) - oracle) < 1e-9);
}

TEST_CASE("complex log Barnes G agrees with the real path and conjugates") {
  for (double x : {0.7, 1.3, 2.6}) {
    CHECK(log_barnes_g(cdouble(x, 0.0)).real() == doctest::Approx(log_barnes_g(x)).epsilon(1e-12));
    const cdouble up = log_barnes_g(cdouble(x, 0.4));
    const cdouble dn = log_barnes_g(cdouble(x, -0.4));
    CHECK(std::abs(up - std::conj(dn)) < 1e-10);
  }
}

TEST_CASE("fourier coefficients of simple symbols") {
  QuadratureSpec spec;
  auto one = [](double) { return cdouble(1.0); };
  CHECK(std::abs(fourier_coefficient(one, 0, spec) - cdouble(1.0)) < 1e-12);
  CHECK(std::abs(fourier_coefficient(one, 1, spec)) < 1e-12);

  auto z = [](double t) { return std::polar(1.0, t); };
  CHECK(std::abs(fourier_coefficient(z, 1, spec) - cdouble(1.0)) < 1e-12);

  auto abs2 = [](double t) { return cdouble(2.0 - 2.0 * std::cos(t)); };  // |1-z|^2
  CHECK(std::abs(fourier_coefficient(abs2, 0, spec) - cdouble(2.0)) < 1e-11);
  CHECK(std::abs(fourier_coefficient(abs2, 1, spec) - cdouble(-1.0)) < 1e-11);
  CHECK(std::abs(fourier_coefficient(abs2, -1, spec) - cdouble(-1.0)) < 1e-11);
  CHECK(std::abs(fourier_coefficient(abs2, 2, spec)) < 1e-11);
}

TEST_CASE("fourier coefficients obey conjugate symmetry for real symbols") {
  QuadratureSpec spec;
  spec.singularities = {1.0};
  auto f = [](double t) {
    return cdouble(std::pow(2.0 * std::abs(std::sin(0.5 * (t - 1.0))), 0.6) * (2.0 + std::sin(t)));
  };
  for (long j : {1L, 3L, 7L}) {
    const cdouble plus = fourier_coefficient(f, j, spec);
    const cdouble minus = fourier_coefficient(f, -j, spec);
    CHECK(std::abs(minus - std::conj(plus)) < 1e-9);
  }
}

TEST_CASE("quadrature handles an integrable endpoint singularity") {
  QuadratureSpec spec;
  spec.singularities = {0.0};
  // int_0^{2pi} |theta|^{-1/2} dtheta = 2 sqrt(2 pi)
  const double v = integrate([](double t) { return 1.0 / std::sqrt(t); }, 0.0, kTwoPi, spec);
  CHECK(v == doctest::Approx(2.0 * std::sqrt(kTwoPi)).epsilon(1e-8));
}

TEST_CASE("ode_solve on constant, exponential and logistic problems") {
  auto zero = [](double, const std::vector<double>&, std::vector<double>& dy) { dy[0] = 0.0; };
  auto sol0 = ode_solve(zero, 0.0, 1.0, {1.0}, 1e-10);
  CHECK(sol0.eval(0.7)[0] == doctest::Approx(1.0).epsilon(1e-12));

  auto expo = [](double, const std::vector<double>& y, std::vector<double>& dy) { dy[0] = y[0]; };
  auto sol1 = ode_solve(expo, 0.0, 1.0, {1.0}, 1e-10);
  CHECK(sol1.eval(1.0)[0] == doctest::Approx(std::exp(1.0)).epsilon(1e-9));

  auto logistic = [](double, const std::vector<double>& y, std::vector<double>& dy) {
    dy[0] = y[0] * (1.0 - y[0]);
  };
  auto sol2 = ode_solve(logistic, 0.0, 1.0, {0.5}, 1e-10);
  CHECK(sol2.eval(1.0)[0] == doctest::Approx(1.0 / (1.0 + std::exp(-1.0))).epsilon(1e-9));
  // dense output against the closed form mid-interval
  CHECK(sol2.eval(0.3)[0] == doctest::Approx(1.0 / (1.0 + std::exp(-0.3))).epsilon(1e-7));
}

TEST_CASE("rng streams replay and separate") {
  RngStream a(42, 1), b(42, 1), c(42, 2);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  bool differs = false;
  RngStream a2(42, 1);
  for (int i = 0; i < 100; ++i) differs |= (a2.next_u64() != c.next_u64());
  CHECK(differs);
}

TEST_CASE("polar-method normals have the right first moments") {
  RngStream rng(5);
  double sum = 0.0, sum2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sum2 += x * x;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sum2 / n - 1.0) < 0.02);
}
