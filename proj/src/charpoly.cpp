#include "rmtlab/charpoly.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace rmtlab {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

double im_log_factor(double phi, double theta) {
  if (phi < 0.0 || phi >= kTwoPi || theta < 0.0 || theta >= kTwoPi)
    throw DomainError("im_log_factor: arguments must lie in [0, 2*pi)");
  if (theta < phi) return -0.5 * kPi + 0.5 * (phi - theta);
  return 0.5 * kPi + 0.5 * (phi - theta);
}

cdouble log_charpoly(const EnsembleSample& sample, double theta) {
  if (theta < 0.0 || theta >= kTwoPi) throw DomainError("log_charpoly: theta outside [0, 2*pi)");
  double re = 0.0, im = 0.0;
  for (double phi : sample.full_spectrum()) {
    re += std::log(2.0 * std::abs(std::sin(0.5 * (phi - theta))));
    im += im_log_factor(phi, theta);
  }
  return {re, im};
}

cdouble truncated_field(const EnsembleSample& sample, double theta, int k, double alpha,
                        double beta_im) {
  if (k < 0) throw DomainError("truncated_field: k must be >= 0");
  cdouble exponent = 0.0;
  for (int j = 1; j <= k; ++j) {
    const cdouble tj = sample.trace_power(j);
    const double bracket = 2.0 * alpha * std::cos(j * theta) + 2.0 * beta_im * std::sin(j * theta);
    exponent -= tj / static_cast<double>(j) * bracket;
  }
  return std::exp(exponent);
}

cdouble FieldGrid::fourier_coefficient(long k) const {
  cdouble acc = 0.0;
  for (std::size_t i = 0; i < thetas.size(); ++i)
    acc += values[i] * std::polar(1.0, -static_cast<double>(k) * thetas[i]);
  return acc / static_cast<double>(thetas.size());
}

double field_value(const EnsembleSample& sample, double theta, double alpha, double beta_im) {
  if (alpha <= -0.5) throw DomainError("field_value: requires alpha > -1/2");
  double re = 0.0, im = 0.0;
  for (double phi : sample.full_spectrum()) {
    re += std::log(2.0 * std::abs(std::sin(0.5 * (phi - theta))));
    im += im_log_factor(phi, theta);
  }
  if (std::isinf(re)) {
    if (alpha == 0.0) return std::exp(-2.0 * beta_im * im);
    return alpha > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::exp(2.0 * alpha * re - 2.0 * beta_im * im);
}

FieldGrid field_on_grid(const EnsembleSample& sample, const std::vector<double>& grid, double alpha,
                        double beta_im) {
  if (alpha <= -0.5) throw DomainError("field_on_grid: requires alpha > -1/2");
  FieldGrid out;
  out.thetas = grid;
  out.values.resize(grid.size());
  out.infinite.assign(grid.size(), false);
  const std::vector<double> spectrum = sample.full_spectrum();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double re = 0.0, im = 0.0;
    for (double phi : spectrum) {
      re += std::log(2.0 * std::abs(std::sin(0.5 * (phi - grid[i]))));
      im += im_log_factor(phi, grid[i]);
    }
    if (std::isinf(re)) {
      if (alpha > 0.0) {
        out.values[i] = 0.0;
      } else if (alpha == 0.0) {
        out.values[i] = std::exp(-2.0 * beta_im * im);
      } else {
        out.values[i] = std::numeric_limits<double>::infinity();
        out.infinite[i] = true;
      }
    } else {
      out.values[i] = std::exp(2.0 * alpha * re - 2.0 * beta_im * im);
    }
  }
  return out;
}

}  // namespace rmtlab
