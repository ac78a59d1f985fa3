#pragma once

#include <stdexcept>
#include <vector>

#include "rmtlab/ode.hpp"

namespace rmtlab {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parameters of the sigma-form Painleve V transcendent attached to a pair of
/// merging Fisher-Hartwig singularities; beta_j = i b_j stored as b_j.
struct PainleveParams {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;

  void validate() const;
  /// Quartic parameters {theta_1..theta_4}; purely imaginary shifts are
  /// returned as their imaginary parts paired with the alpha offsets:
  /// theta_{1,2} = -/+ alpha2 + i s1, theta_{3,4} = +/- alpha1 - i d1 with
  /// s1 = (b1+b2)/2, d1 = (b1-b2)/2.
  double s1() const { return 0.5 * (b1 + b2); }
  double d1() const { return 0.5 * (b1 - b2); }
  /// Boundary value at s -> -i0+: Re of 2 a1 a2 - (beta1+beta2)^2/2.
  double sigma_at_zero() const { return 2.0 * alpha1 * alpha2 + 2.0 * s1() * s1(); }
  /// Slope and offset of the s -> -i infinity behavior in the x = is variable.
  double slope_at_infinity() const { return d1(); }
  double offset_at_infinity() const { return 2.0 * d1() * d1(); }
};

/// sigma(-ix) tabulated on (0, x_max]; real and pole-free on that ray.
struct PainleveSolution {
  PainleveParams params;
  OdeSolution table;       // state (sigma, sigma_x, sigma_xx)
  double x0 = 1e-4;        // launch abscissa
  double x_max = 0.0;
  double shooting_parameter = 0.0;  // slope of the leading correction at x0
  double fitted_local_exponent = 0.0;  // delta in sigma = sigma(0) + O(x^delta)
  double max_residual = 0.0;           // sigma-form residual over the table

  double sigma(double x) const;
  double dsigma(double x) const;
  /// Residual of the sigma-form equation at x.
  double residual(double x) const;
};

/// Shooting solve of the sigma-form Painleve V along the negative imaginary
/// axis: launch at x0 with the small-s expansion, adjust the free correction
/// coefficient until the linear large-x behavior is met at x_max.
PainleveSolution solve_sigma(const PainleveParams& params, double x_max, double tol,
                             double x0 = 1e-4);

/// int_0^{upper} (sigma(x) - sigma(0_boundary)) / x dx with the [0, x0] piece
/// from the fitted endpoint power. 'upper' must not exceed the tabulation.
double log_integral(const PainleveSolution& sol, double upper);

}  // namespace rmtlab
