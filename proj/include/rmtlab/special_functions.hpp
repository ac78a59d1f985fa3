#pragma once

#include <complex>
#include <stdexcept>

namespace rmtlab {

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// log Gamma(z) for Re(z) > 0, Lanczos approximation.
std::complex<double> log_gamma(std::complex<double> z);

/// log of the Barnes G-function for real x > 0, via the recursion
/// G(x+1) = Gamma(x) G(x) pushed into the asymptotic range.
double log_barnes_g(double x);

/// log G(z) for Re(z) > 0. Continuous on horizontal strips near the real
/// axis, which is the regime the asymptotic evaluators need (arguments
/// 1 + alpha + i b with alpha > -1/2).
std::complex<double> log_barnes_g(std::complex<double> z);

/// log of Gamma(1+a+b) Gamma(1+a-b) ... combination used by Fisher-Hartwig
/// constants: log [ G(1+a+ib) G(1+a-ib) / G(1+2a) ], real-valued.
double log_barnes_fh_factor(double alpha, double beta_im);

}  // namespace rmtlab
