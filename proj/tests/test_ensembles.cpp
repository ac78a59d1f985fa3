#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rmtlab/ensembles.hpp"

using namespace rmtlab;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// One-sample Kolmogorov-Smirnov p-value (asymptotic tail sum).
double ks_p_value(std::vector<double> values, const std::function<double(double)>& cdf) {
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double f = cdf(values[i]);
    d = std::max(d, std::abs(f - (i + 1) / n));
    d = std::max(d, std::abs(f - i / n));
  }
  const double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k)
    p += 2.0 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k * lambda * lambda);
  return std::clamp(p, 0.0, 1.0);
}

double two_sample_ks_p(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) ++i;
    else ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                             static_cast<double>(j) / b.size()));
  }
  const double ne = static_cast<double>(a.size()) * b.size() / (a.size() + b.size());
  const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k)
    p += 2.0 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k * lambda * lambda);
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace

TEST_CASE("haar matrices are unitary and respect determinant signs") {
  RngStream rng(17);
  for (GroupKind kind : {GroupKind::U, GroupKind::SO, GroupKind::SOminus, GroupKind::Sp}) {
    Group g{kind, 4};
    const ComplexMatrix u = haar_matrix(g, rng);
    ComplexMatrix gram = u.adjoint() * u;
    for (std::size_t i = 0; i < gram.rows(); ++i) gram(i, i) -= 1.0;
    CHECK(gram.max_abs() < 1e-12);
    if (kind == GroupKind::SO)
      CHECK(lu_determinant(u).real() == doctest::Approx(1.0).epsilon(1e-10));
    if (kind == GroupKind::SOminus)
      CHECK(lu_determinant(u).real() == doctest::Approx(-1.0).epsilon(1e-10));
  }
}

TEST_CASE("symplectic samples satisfy U J U^T = J") {
  RngStream rng(19);
  const int n = 3;
  const ComplexMatrix u = haar_matrix(Group{GroupKind::Sp, n}, rng);
  ComplexMatrix j(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    j(i, i + n) = 1.0;
    j(i + n, i) = -1.0;
  }
  // u j u^T
  ComplexMatrix ut(2 * n, 2 * n);
  for (int a = 0; a < 2 * n; ++a)
    for (int b = 0; b < 2 * n; ++b) ut(a, b) = u(b, a);
  ComplexMatrix lhs = u * j * ut;
  for (int a = 0; a < 2 * n; ++a)
    for (int b = 0; b < 2 * n; ++b) lhs(a, b) -= j(a, b);
  CHECK(lhs.max_abs() < 1e-10);
}

TEST_CASE("U(1) angles are uniform (KS)") {
  RngStream rng(23);
  std::vector<double> angles;
  for (int i = 0; i < 10000; ++i) angles.push_back(sample(Group{GroupKind::U, 1}, rng).angles[0]);
  const double p = ks_p_value(angles, [](double x) { return x / kTwoPi; });
  CHECK(p > 0.01);
}

TEST_CASE("Sp(2) nontrivial angle follows (2/pi) sin^2") {
  RngStream rng(29);
  std::vector<double> angles;
  for (int i = 0; i < 10000; ++i) angles.push_back(sample(Group{GroupKind::Sp, 1}, rng).angles[0]);
  // CDF of (2/pi) sin^2 on [0, pi): (theta - sin theta cos theta)/pi
  const double p = ks_p_value(
      angles, [](double x) { return (x - std::sin(x) * std::cos(x)) / kPi; });
  CHECK(p > 0.01);
}

TEST_CASE("fixed eigenvalue bookkeeping per group") {
  RngStream rng(31);
  const EnsembleSample so5 = sample(Group{GroupKind::SO, 5}, rng);
  CHECK(so5.fixed_plus_one == 1);
  CHECK(so5.fixed_minus_one == 0);
  CHECK(so5.angles.size() == 2);

  const EnsembleSample som5 = sample(Group{GroupKind::SOminus, 5}, rng);
  CHECK(som5.fixed_plus_one == 0);
  CHECK(som5.fixed_minus_one == 1);

  const EnsembleSample som4 = sample(Group{GroupKind::SOminus, 4}, rng);
  CHECK(som4.fixed_plus_one == 1);
  CHECK(som4.fixed_minus_one == 1);
  CHECK(som4.angles.size() == 1);
}

TEST_CASE("full spectrum is conjugation-closed for non-unitary groups") {
  RngStream rng(37);
  for (GroupKind kind : {GroupKind::SO, GroupKind::SOminus, GroupKind::Sp}) {
    const EnsembleSample s = sample(Group{kind, 4}, rng);
    const auto spec = s.full_spectrum();
    for (double a : spec) {
      const double mirror = (a == 0.0) ? 0.0 : kTwoPi - a;
      const bool found = std::any_of(spec.begin(), spec.end(), [&](double b) {
        return std::abs(b - mirror) < 1e-7 || std::abs(b - mirror - kTwoPi) < 1e-7;
      });
      CHECK(found);
    }
  }
}

TEST_CASE("weyl density closed forms") {
  CHECK(weyl_density(Group{GroupKind::U, 1}, {1.0}) == doctest::Approx(1.0 / kTwoPi));
  CHECK(weyl_density(Group{GroupKind::SO, 2}, {2.0}) == doctest::Approx(1.0 / kPi));
  CHECK(weyl_density(Group{GroupKind::Sp, 1}, {kPi / 2}) == doctest::Approx(2.0 / kPi));
  CHECK_THROWS_AS(weyl_density(Group{GroupKind::Sp, 1}, {4.0}), DomainError);
}

TEST_CASE("ds_trace_moment closed forms") {
  // a = b with a_3 = 1 only: 3
  CHECK(*ds_trace_moment({{3, 1}}, {{3, 1}}, 5) == doctest::Approx(3.0));
  // a = b with a_1 = 2 only: 1^2 2! = 2
  CHECK(*ds_trace_moment({{1, 2}}, {{1, 2}}, 4) == doctest::Approx(2.0));
  // unmatched exponents vanish
  CHECK(*ds_trace_moment({{1, 1}}, {}, 4) == doctest::Approx(0.0));
  // out of regime
  CHECK(!ds_trace_moment({{5, 1}}, {{5, 1}}, 3).has_value());
}

TEST_CASE("Monte Carlo E|Tr U^k|^2 agrees with min(k, n)") {
  RngStream rng(41);
  const Group g{GroupKind::U, 5};
  const int samples = 4000;
  for (int k : {1, 3, 7}) {
    double sum = 0.0, sum2 = 0.0;
    RngStream local(41, k);
    for (int i = 0; i < samples; ++i) {
      const EnsembleSample s = sample(g, local);
      const double v = std::norm(s.trace_power(k));
      sum += v;
      sum2 += v * v;
    }
    const double mean = sum / samples;
    const double se = std::sqrt(std::max(0.0, sum2 / samples - mean * mean) / samples);
    const double expect = std::min(k, 5);
    CHECK(std::abs(mean - expect) < 3.5 * se + 1e-9);
  }
}

TEST_CASE("metropolis chain matches the direct sampler on Sp(2)") {
  RngStream rng(43);
  const Group g{GroupKind::Sp, 1};
  const MetropolisResult chain = metropolis_weyl(g, 11000, 1000, 1, rng);
  std::vector<double> mcmc;
  for (const auto& s : chain.samples) mcmc.push_back(s.angles[0]);
  std::vector<double> direct;
  RngStream rng2(47);
  for (int i = 0; i < 10000; ++i) direct.push_back(sample(g, rng2).angles[0]);
  CHECK(two_sample_ks_p(mcmc, direct) > 0.001);
  CHECK(chain.acceptance_rate > 0.2);
}

TEST_CASE("metropolis on U(1) accepts everything") {
  RngStream rng(53);
  const MetropolisResult chain = metropolis_weyl(Group{GroupKind::U, 1}, 500, 100, 1, rng);
  CHECK(chain.acceptance_rate == doctest::Approx(1.0));
}

TEST_CASE("metropolis U(5) second trace moment") {
  RngStream rng(59);
  const MetropolisResult chain = metropolis_weyl(Group{GroupKind::U, 5}, 21000, 1000, 2, rng);
  double sum = 0.0, sum2 = 0.0;
  for (const auto& s : chain.samples) {
    const double v = std::norm(s.trace_power(1));
    sum += v;
    sum2 += v * v;
  }
  const double n = static_cast<double>(chain.samples.size());
  const double mean = sum / n;
  const double se = std::sqrt(std::max(0.0, sum2 / n - mean * mean) / n);
  // correlated draws: allow 3 SE with an autocorrelation margin
  CHECK(std::abs(mean - 1.0) < 3.0 * se * 3.0 + 0.05);
}
