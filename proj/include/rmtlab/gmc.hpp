#pragma once

#include <vector>

#include "rmtlab/charpoly.hpp"
#include "rmtlab/detkit.hpp"

namespace rmtlab {

struct SingularitySignal : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IntegrityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Gaussian coefficients of a truncated limit field; the deterministic shift
/// selects the orthogonal (-) or symplectic (+) mean.
struct TruncatedGaussianField {
  int k = 0;
  std::vector<double> coefficients;  // N_1..N_k, i.i.d. standard normal draws
  int shift_sign = 0;                // 0, +1, -1
};

TruncatedGaussianField sample_gaussian_coefficients(int k, int shift_sign, RngStream& rng);

/// Field values of Y^{(k)}_{alpha,beta} = 2 alpha X + 2 i beta X^ plus the
/// deterministic shift 2 alpha x + 2 i beta x^ when requested; real-valued
/// for alpha real, beta = i b.
std::vector<double> sample_field(const TruncatedGaussianField& field, double alpha, double beta_im,
                                 const std::vector<double>& grid);

/// Deterministic shift components alone: x(theta), x^(theta) truncated at k.
double shift_x(int k, double theta);
double shift_x_hat(int k, double theta);

/// Closed-form covariance kernel of Y_{alpha,beta}, diagonal/antidiagonal
/// excluded.
cdouble cov_y(double alpha, double beta_im, double theta, double theta_prime);

/// Truncated-series variance E(Y^{(k)}(theta)^2) (the Gaussian normalizer).
double truncated_variance(int k, double alpha, double beta_im, double theta);

struct DiscreteMeasure {
  std::vector<double> thetas;
  std::vector<double> weights;
  std::string normalization;

  double total_mass() const;  // Riemann sum over the (uniform) grid
};

/// mu^{(k)}_{alpha,beta}: weights e^{Y^(k)} with the closed-form Gaussian
/// normalization.
DiscreteMeasure truncated_gmc(const TruncatedGaussianField& field, double alpha, double beta_im,
                              const std::vector<double>& grid);

enum class GmcNormalization { determinant, mc };

/// Random-matrix measure mu_{G(n),alpha,beta} on the grid. The determinant
/// route divides by the exact one-point function via the Toeplitz(+Hankel)
/// identities; the mc route estimates E f by Monte Carlo over extra samples.
DiscreteMeasure rm_gmc(const Group& group, double alpha, double beta_im,
                       const std::vector<double>& grid, GmcNormalization normalization,
                       RngStream& rng, int mc_normalization_samples = 2000);

/// Exact E f_{n,alpha,beta}(theta) through the determinant identities.
double rm_field_expectation(const Group& group, double alpha, double beta_im, double theta,
                            const QuadratureSpec& spec);

struct MassMomentEstimate {
  double value = 0.0;
  double standard_error = 0.0;
};

/// Empirical m-th moment of total mass / (2 pi)^m across measures.
MassMomentEstimate mass_moment(const std::vector<DiscreteMeasure>& measures, int m);

/// Uniform grid of size count on [0, 2 pi), with optional offset jitter.
std::vector<double> uniform_grid(int count, double offset = 0.5);

/// Restriction window I_eps = (eps, pi-eps) u (pi+eps, 2pi-eps) as a mask.
std::vector<bool> window_mask(const std::vector<double>& grid, double eps);

}  // namespace rmtlab
