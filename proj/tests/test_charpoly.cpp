#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rmtlab/charpoly.hpp"
#include "rmtlab/ensembles.hpp"

using namespace rmtlab;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

EnsembleSample one_eigenvalue_at(double phi) {
  EnsembleSample s;
  s.group = Group{GroupKind::U, 1};
  s.angles = {phi};
  return s;
}
}  // namespace

TEST_CASE("im_log_factor branch formula") {
  CHECK(im_log_factor(1.0, 1.0) == doctest::Approx(kPi / 2));         // phi == theta
  CHECK(im_log_factor(kPi, 0.0) == doctest::Approx(0.0));             // log(1 - e^{i pi}) = log 2
  CHECK(im_log_factor(0.0, kPi) == doctest::Approx(0.0));             // conjugate case
  CHECK(im_log_factor(2.0, 0.5) == doctest::Approx(-kPi / 2 + 0.75));
  CHECK(im_log_factor(0.5, 2.0) == doctest::Approx(kPi / 2 - 0.75));
}

TEST_CASE("log_charpoly with a single eigenvalue at pi") {
  const EnsembleSample s = one_eigenvalue_at(kPi);
  const cdouble v = log_charpoly(s, 0.0);
  CHECK(v.real() == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("log_charpoly hits -inf exactly on the spectrum") {
  const EnsembleSample s = one_eigenvalue_at(1.0);
  const cdouble v = log_charpoly(s, 1.0);
  CHECK(std::isinf(v.real()));
  CHECK(v.real() < 0.0);
  CHECK(v.imag() == doctest::Approx(kPi / 2));
}

TEST_CASE("exp(log_charpoly) equals det(I - e^{-i theta} U)") {
  RngStream rng(61);
  const Group g{GroupKind::U, 6};
  const ComplexMatrix u = haar_matrix(g, rng);
  EnsembleSample s;
  s.group = g;
  s.angles = eigenangles_unitary(u);

  RngStream thetas(62);
  for (int trial = 0; trial < 100; ++trial) {
    const double theta = thetas.uniform(0.0, kTwoPi);
    ComplexMatrix m = ComplexMatrix::identity(6);
    const cdouble phase = std::polar(1.0, -theta);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) m(i, j) -= phase * u(i, j);
    const cdouble det = lu_determinant(m);
    const cdouble expv = std::exp(log_charpoly(s, theta));
    CHECK(std::abs(expv - det) <= 1e-8 * std::max(1.0, std::abs(det)));
  }
}

TEST_CASE("Fourier coefficients of log_charpoly are -Tr(U^k)/k") {
  RngStream rng(67);
  const Group g{GroupKind::U, 5};
  const EnsembleSample s = sample(g, rng);
  const int grid_n = 4096;
  for (int k = 1; k <= 5; ++k) {
    cdouble acc = 0.0;
    for (int i = 0; i < grid_n; ++i) {
      const double theta = kTwoPi * (i + 0.5) / grid_n;
      // coefficient of e^{-ik theta}: integrate against e^{+ik theta}
      acc += log_charpoly(s, theta) * std::polar(1.0, k * theta);
    }
    acc /= grid_n;
    const cdouble expect = -s.trace_power(k) / static_cast<double>(k);
    CHECK(std::abs(acc - expect) < 1e-6);
  }
}

TEST_CASE("conjugation symmetry for symplectic samples") {
  RngStream rng(71);
  const EnsembleSample s = sample(Group{GroupKind::Sp, 3}, rng);
  for (double theta : {0.3, 1.1, 2.9}) {
    const cdouble a = log_charpoly(s, theta);
    const cdouble b = log_charpoly(s, kTwoPi - theta);
    CHECK(std::abs(b - std::conj(a)) < 1e-9);
  }
}

TEST_CASE("truncated field trivial cases") {
  RngStream rng(73);
  const EnsembleSample s = sample(Group{GroupKind::Sp, 2}, rng);
  CHECK(std::abs(truncated_field(s, 1.0, 0, 0.3, 0.1) - cdouble(1.0)) < 1e-14);
  CHECK(std::abs(truncated_field(s, 1.0, 10, 0.0, 0.0) - cdouble(1.0)) < 1e-14);
}

TEST_CASE("truncated field approximates |p|^{2 alpha} away from the spectrum") {
  RngStream rng(79);
  // self-conjugate spectrum so the truncation formula matches the field
  for (int trial = 0; trial < 20; ++trial) {
    const EnsembleSample s = sample(Group{GroupKind::Sp, 4}, rng);
    double theta = rng.uniform(0.0, kTwoPi);
    const auto far = [&](double t) {
      for (double a : s.full_spectrum()) {
        double d = std::abs(t - a);
        d = std::min(d, kTwoPi - d);
        if (d < 0.3) return false;
      }
      return true;
    };
    if (!far(theta)) continue;
    const double alpha = 0.2;
    const cdouble truncated = truncated_field(s, theta, 50, alpha, 0.0);
    const double exact = field_value(s, theta, alpha, 0.0);
    CHECK(std::abs(truncated.real() / exact - 1.0) < 0.02);
  }
}

TEST_CASE("field_on_grid trivial and single-eigenvalue cases") {
  const EnsembleSample s = one_eigenvalue_at(kPi);
  const auto all_ones = field_on_grid(s, {0.0, 1.0, 2.0}, 0.0, 0.0);
  for (const auto& v : all_ones.values) CHECK(std::abs(v - cdouble(1.0)) < 1e-14);

  const auto f = field_on_grid(s, {0.0}, 0.5, 0.0);
  CHECK(f.values[0].real() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("Monte Carlo mean of |p(0)|^2 over U(20) is 21") {
  RngStream rng(83);
  const Group g{GroupKind::U, 20};
  const int samples = 10000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < samples; ++i) {
    const EnsembleSample s = sample(g, rng);
    const double v = field_value(s, 0.0, 1.0, 0.0);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / samples;
  const double se = std::sqrt(std::max(0.0, sum2 / samples - mean * mean) / samples);
  CHECK(std::abs(mean - 21.0) < 3.0 * se);
}
