#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rmtlab/detkit.hpp"

namespace rmtlab {

struct DivergenceSignal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Selberg integral
///   int_{[0,1]^m} prod_{j<k} |x_j - x_k|^{2c} prod_j (1-x_j)^{a-1} x_j^{b-1}
/// evaluated by its Gamma-product closed form. Throws DivergenceSignal
/// outside the finiteness region.
double selberg(int m, double a, double b, double c);

/// The Selberg-type arc integral behind the subcritical constants:
/// I_inf^{+/-}(alpha) = 4^{-alpha^2 m^2 +/- alpha m} / pi^m * selberg(...).
double i_infinity(int m, double alpha, int sign);

/// Subcritical leading coefficient C^{+/-}(m, alpha): Barnes-G prefactor
/// G(1+alpha)^{2m} / G(1+2alpha)^m times i_infinity.
double c_constant(int m, double alpha, int sign);

/// Gamma(1 - m alpha^2) / Gamma(1 - alpha^2)^m for m alpha^2 < 1.
double fyodorov_bouchaud(int m, double alpha);

enum class MomEstimator { mc, quadrature_m1 };

struct MoMQuery {
  Group group;
  int m = 1;
  double alpha = 0.3;
  MomEstimator estimator = MomEstimator::mc;
  int samples = 1000;
  int grid_per_n = 8;  // inner trapezoid points per matrix dimension

  void validate() const;
};

struct MomEstimate {
  double value = 0.0;
  double standard_error = 0.0;  // zero for the deterministic m = 1 route
};

/// Moments of moments E ( (1/2pi) int |p|^{2 alpha} )^m: Monte Carlo over
/// Haar samples, or (m = 1 only) the deterministic theta-integral of the
/// exact one-point function from the Toeplitz+Hankel identities.
MomEstimate mom_estimate(const MoMQuery& query, RngStream& rng);

/// Exact one-point function E |p(theta)|^{2 alpha} for the group, through the
/// determinant identities (fixed-eigenvalue prefactors included).
double one_point_function(const Group& group, double theta, double alpha,
                          const QuadratureSpec& spec);

enum class MomPhase { subcritical, critical, intermediate, critical_upper, supercritical };

struct PhaseReport {
  MomPhase phase = MomPhase::subcritical;
  double growth_exponent = 0.0;  // power of the matrix dimension
  bool log_factor = false;
  std::vector<double> critical_alphas;
  std::string label;
};

/// Phase classification and growth exponents of MoM_{G}(m, alpha) in the
/// matrix dimension, including the five-phase orthogonal m = 2 diagram.
PhaseReport phase_classify(const Group& group, int m, double alpha);

}  // namespace rmtlab
