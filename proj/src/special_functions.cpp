#include "rmtlab/special_functions.hpp"

#include <cmath>
#include <numbers>

namespace rmtlab {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454836;
// zeta'(-1) = 1/12 - log(Glaisher)
constexpr double kZetaPrimeMinusOne = -0.16542114370045092921391966024278064;

const double kLanczosG = 7.0;
const double kLanczosCoef[9] = {0.99999999999980993,     676.5203681218851,
                                -1259.1392167224028,     771.32342877765313,
                                -176.61502916214059,     12.507343278686905,
                                -0.13857109526572012,    9.9843695780195716e-6,
                                1.5056327351493116e-7};

// Asymptotic expansion of log G(1+z), valid for large |z| with Re z > 0.
std::complex<double> log_barnes_g_asymptotic_1p(std::complex<double> z) {
  const std::complex<double> lz = std::log(z);
  const std::complex<double> z2 = z * z;
  std::complex<double> s = z2 * (0.5 * lz - 0.75) + 0.5 * kLogTwoPi * z - lz / 12.0 +
                           kZetaPrimeMinusOne;
  // Correction terms B_{2k+2} / (4 k (k+1) z^{2k}).
  const std::complex<double> iz2 = 1.0 / z2;
  std::complex<double> p = iz2;
  s -= p / 240.0;
  p *= iz2;
  s += p / 1008.0;
  p *= iz2;
  s -= p / 1440.0;
  p *= iz2;
  s += p / 1056.0;
  p *= iz2;
  s -= p * (691.0 / 327600.0);
  p *= iz2;
  s += p / 144.0;
  return s;
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  if (z.real() <= 0.0)
    throw DomainError("log_gamma: requires Re(z) > 0");
  // Lanczos with the shift z -> z (series indexed from z-1).
  std::complex<double> x = kLanczosCoef[0];
  for (int i = 1; i < 9; ++i) x += kLanczosCoef[i] / (z + static_cast<double>(i - 1));
  const std::complex<double> t = z + kLanczosG - 0.5;
  return 0.5 * kLogTwoPi + (z - 0.5) * std::log(t) - t + std::log(x);
}

std::complex<double> log_barnes_g(std::complex<double> z) {
  if (z.real() <= 0.0)
    throw DomainError("log_barnes_g: requires Re(z) > 0");
  std::complex<double> acc = 0.0;
  while (z.real() < 12.0) {
    acc -= log_gamma(z);
    z += 1.0;
  }
  return acc + log_barnes_g_asymptotic_1p(z - 1.0);
}

double log_barnes_g(double x) {
  if (x <= 0.0) throw DomainError("log_barnes_g: requires x > 0");
  return log_barnes_g(std::complex<double>(x, 0.0)).real();
}

double log_barnes_fh_factor(double alpha, double beta_im) {
  if (beta_im == 0.0)
    return 2.0 * log_barnes_g(1.0 + alpha) - log_barnes_g(1.0 + 2.0 * alpha);
  // G(1+a-ib) = conj(G(1+a+ib)) on the real-alpha strip.
  return 2.0 * log_barnes_g(std::complex<double>(1.0 + alpha, beta_im)).real() -
         log_barnes_g(1.0 + 2.0 * alpha);
}

}  // namespace rmtlab
