#include "rmtlab/gmc.hpp"

#include <cmath>
#include <numbers>

namespace rmtlab {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

TruncatedGaussianField sample_gaussian_coefficients(int k, int shift_sign, RngStream& rng) {
  if (k < 1) throw std::invalid_argument("sample_gaussian_coefficients: k >= 1 required");
  TruncatedGaussianField f;
  f.k = k;
  f.shift_sign = shift_sign;
  f.coefficients.resize(k);
  for (int j = 0; j < k; ++j) f.coefficients[j] = rng.normal();
  return f;
}

double shift_x(int k, double theta) {
  double s = 0.0;
  for (int j = 2; j <= k; j += 2) s += std::cos(j * theta) / j;
  return s;
}

double shift_x_hat(int k, double theta) {
  double s = 0.0;
  for (int j = 2; j <= k; j += 2) s -= std::sin(j * theta) / j;
  return s;
}

std::vector<double> sample_field(const TruncatedGaussianField& field, double alpha, double beta_im,
                                 const std::vector<double>& grid) {
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double theta = grid[i];
    double y = 0.0;
    for (int j = 1; j <= field.k; ++j) {
      // (N_j / sqrt j)(2 alpha cos - 2 i beta sin); beta = i b gives +2 b sin.
      const double bracket =
          2.0 * alpha * std::cos(j * theta) + 2.0 * beta_im * std::sin(j * theta);
      y += field.coefficients[j - 1] / std::sqrt(static_cast<double>(j)) * bracket;
    }
    if (field.shift_sign != 0) {
      // 2 alpha x + 2 i beta x^ with beta = i b reads 2 alpha x - 2 b x^.
      y += field.shift_sign * (2.0 * alpha * shift_x(field.k, theta) -
                               2.0 * beta_im * shift_x_hat(field.k, theta));
    }
    out[i] = y;
  }
  return out;
}

cdouble cov_y(double alpha, double beta_im, double theta, double theta_prime) {
  const double diag = 2.0 * std::abs(std::sin(0.5 * (theta - theta_prime)));
  const double anti = 2.0 * std::abs(std::sin(0.5 * (theta + theta_prime)));
  if (diag < 1e-12 || anti < 1e-12)
    throw SingularitySignal("cov_y: kernel singular on the diagonal/antidiagonal");
  const double a2 = alpha * alpha, b2 = -beta_im * beta_im;  // beta^2 = -b^2
  double value = -2.0 * (a2 - b2) * std::log(diag) - 2.0 * (a2 + b2) * std::log(anti);
  // + 4 i alpha beta Im log(1 - e^{i(theta+theta')}), real for beta in iR.
  double sum = std::fmod(theta + theta_prime, kTwoPi);
  if (sum < 0.0) sum += kTwoPi;
  const double im_log = (sum == 0.0) ? 0.5 * kPi : (-0.5 * kPi + 0.5 * sum);
  value += -4.0 * alpha * beta_im * im_log;
  return {value, 0.0};
}

double truncated_variance(int k, double alpha, double beta_im, double theta) {
  double var = 0.0;
  for (int j = 1; j <= k; ++j) {
    const double bracket =
        2.0 * alpha * std::cos(j * theta) + 2.0 * beta_im * std::sin(j * theta);
    var += bracket * bracket / j;
  }
  return var;
}

double DiscreteMeasure::total_mass() const {
  double mass = 0.0;
  for (double w : weights) mass += w;
  return mass * kTwoPi / static_cast<double>(weights.size());
}

DiscreteMeasure truncated_gmc(const TruncatedGaussianField& field, double alpha, double beta_im,
                              const std::vector<double>& grid) {
  DiscreteMeasure mu;
  mu.thetas = grid;
  mu.normalization = "gaussian-closed-form";
  mu.weights.resize(grid.size());
  const std::vector<double> y = sample_field(field, alpha, beta_im, grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
    mu.weights[i] = std::exp(y[i] - 0.5 * truncated_variance(field.k, alpha, beta_im, grid[i]));
  return mu;
}

double rm_field_expectation(const Group& group, double alpha, double beta_im, double theta,
                            const QuadratureSpec& spec) {
  // E f = E prod sigma5-hat(e^{i theta_l}): Toeplitz of the one-point symbol
  // for U(n), Toeplitz+Hankel of its even product for the other groups.
  if (group.kind == GroupKind::U) {
    FHSymbol h({}, {{theta, alpha, beta_im}});
    return toeplitz_det(h, group.n, spec).value.real();
  }
  FHSymbol h({}, {{theta, alpha, beta_im}});
  return baik_rains_expectation(group, h, spec).real();
}

DiscreteMeasure rm_gmc(const Group& group, double alpha, double beta_im,
                       const std::vector<double>& grid, GmcNormalization normalization,
                       RngStream& rng, int mc_normalization_samples) {
  if (alpha <= -0.5) throw DomainError("rm_gmc: requires alpha > -1/2");
  DiscreteMeasure mu;
  mu.thetas = grid;
  mu.weights.assign(grid.size(), 0.0);

  const EnsembleSample es = sample(group, rng);
  std::vector<double> normalizer(grid.size(), 0.0);
  if (normalization == GmcNormalization::determinant) {
    mu.normalization = "determinant";
    QuadratureSpec spec;
    spec.abs_tol = spec.rel_tol = 1e-11;
    spec.max_subdivisions = 20000;
    for (std::size_t i = 0; i < grid.size(); ++i)
      normalizer[i] = rm_field_expectation(group, alpha, beta_im, grid[i], spec);
  } else {
    mu.normalization = "mc";
    for (int s = 0; s < mc_normalization_samples; ++s) {
      const EnsembleSample extra = sample(group, rng);
      for (std::size_t i = 0; i < grid.size(); ++i)
        normalizer[i] += field_value(extra, grid[i], alpha, beta_im);
    }
    for (double& v : normalizer) v /= mc_normalization_samples;
  }

  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(normalizer[i] > 0.0) || !std::isfinite(normalizer[i]))
      throw IntegrityError("rm_gmc: nonpositive normalization");
    mu.weights[i] = field_value(es, grid[i], alpha, beta_im) / normalizer[i];
  }
  return mu;
}

MassMomentEstimate mass_moment(const std::vector<DiscreteMeasure>& measures, int m) {
  if (m < 1) throw std::invalid_argument("mass_moment: m >= 1 required");
  MassMomentEstimate out;
  if (measures.empty()) return out;
  double sum = 0.0, sum2 = 0.0;
  for (const auto& mu : measures) {
    const double x = std::pow(mu.total_mass() / kTwoPi, m);
    sum += x;
    sum2 += x * x;
  }
  const double n = static_cast<double>(measures.size());
  out.value = sum / n;
  const double var = std::max(0.0, sum2 / n - out.value * out.value);
  out.standard_error = std::sqrt(var / n);
  return out;
}

std::vector<double> uniform_grid(int count, double offset) {
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) grid[i] = kTwoPi * (i + offset) / count;
  return grid;
}

std::vector<bool> window_mask(const std::vector<double>& grid, double eps) {
  std::vector<bool> mask(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    mask[i] = (t > eps && t < kPi - eps) || (t > kPi + eps && t < kTwoPi - eps);
  }
  return mask;
}

}  // namespace rmtlab
