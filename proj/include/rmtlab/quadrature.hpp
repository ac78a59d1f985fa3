#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace rmtlab {

struct AccuracyError : std::runtime_error {
  double achieved_estimate;
  AccuracyError(const std::string& what, double est)
      : std::runtime_error(what), achieved_estimate(est) {}
};

/// Tolerances and singularity bookkeeping for circle quadrature.
struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 4000;
  std::vector<double> singularities;  // angles in [0, 2*pi), sorted, distinct

  void validate() const;
};

/// Adaptive Gauss-Kronrod 15-point integration of f over [a, b]. Panels are
/// bisected where the Kronrod error estimate dominates, which grades the mesh
/// toward integrable endpoint singularities.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec);

std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f,
                                       double a, double b, const QuadratureSpec& spec);

/// Integrates f over [0, 2*pi) splitting panels at the listed singularities.
std::complex<double> integrate_circle(const std::function<std::complex<double>(double)>& f,
                                      const QuadratureSpec& spec);

/// j-th Fourier coefficient (1/2pi) int f(e^{i theta}) e^{-ij theta} dtheta.
std::complex<double> fourier_coefficient(const std::function<std::complex<double>(double)>& f,
                                         long j, const QuadratureSpec& spec);

}  // namespace rmtlab
