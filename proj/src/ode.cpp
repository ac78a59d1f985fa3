#include "rmtlab/ode.hpp"

#include <algorithm>
#include <cmath>

namespace rmtlab {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// 4th-order embedded weights.
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

}  // namespace

void OdeSolution::push(double x, std::vector<double> y, std::vector<double> dy) {
  xs_.push_back(x);
  ys_.push_back(std::move(y));
  dys_.push_back(std::move(dy));
}

std::size_t OdeSolution::locate(double x) const {
  if (xs_.empty()) throw IntegrationError("OdeSolution: empty", 0.0);
  if (x < xs_.front() - 1e-12 || x > xs_.back() + 1e-12)
    throw IntegrationError("OdeSolution: evaluation outside range", xs_.back());
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs_.begin());
  if (i == 0) return 0;
  if (i >= xs_.size()) return xs_.size() - 2;
  return i - 1;
}

std::vector<double> OdeSolution::eval(double x) const {
  const std::size_t i = locate(x);
  const double h = xs_[i + 1] - xs_[i];
  const double t = (x - xs_[i]) / h;
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t),
               h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
  std::vector<double> out(ys_[i].size());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = h00 * ys_[i][k] + h * h10 * dys_[i][k] + h01 * ys_[i + 1][k] + h * h11 * dys_[i + 1][k];
  return out;
}

std::vector<double> OdeSolution::eval_derivative(double x) const {
  const std::size_t i = locate(x);
  const double h = xs_[i + 1] - xs_[i];
  const double t = (x - xs_[i]) / h;
  const double d00 = 6 * t * (t - 1) / h, d10 = (1 - 4 * t + 3 * t * t),
               d01 = -6 * t * (t - 1) / h, d11 = (3 * t * t - 2 * t);
  std::vector<double> out(ys_[i].size());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = d00 * ys_[i][k] + d10 * dys_[i][k] + d01 * ys_[i + 1][k] + d11 * dys_[i + 1][k];
  return out;
}

OdeSolution ode_solve(const OdeRhs& rhs, double x0, double x1, const std::vector<double>& y0,
                      double tol) {
  if (!(x0 < x1)) throw IntegrationError("ode_solve: requires x0 < x1", x0);
  if (tol <= 0.0) throw IntegrationError("ode_solve: tol must be positive", x0);
  const std::size_t n = y0.size();

  std::vector<double> y = y0, k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);
  double x = x0;
  rhs(x, y, k1);
  for (double v : k1)
    if (!std::isfinite(v)) throw IntegrationError("ode_solve: rhs not finite at x0", x0);

  OdeSolution sol;
  sol.push(x, y, k1);

  double h = std::min((x1 - x0) / 16.0, 0.1);
  const double hmin = (x1 - x0) * 1e-14;
  long steps = 0;
  const long step_cap = 2000000;

  while (x < x1) {
    if (++steps > step_cap) throw IntegrationError("ode_solve: step cap exceeded", x);
    h = std::min(h, x1 - x);
    if (h < hmin) throw IntegrationError("ode_solve: step underflow", x);

    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    rhs(x + c2 * h, ytmp, k2);
    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(x + c3 * h, ytmp, k3);
    for (std::size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(x + c4 * h, ytmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(x + c5 * h, ytmp, k5);
    for (std::size_t i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs(x + h, ytmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    rhs(x + h, ynew, k7);

    double err = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < n; ++i) {
      const double y4 =
          y[i] + h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = tol * (1.0 + std::max(std::abs(y[i]), std::abs(ynew[i])));
      err = std::max(err, std::abs(ynew[i] - y4) / sc);
      if (!std::isfinite(ynew[i])) finite = false;
    }
    if (!finite) {
      h *= 0.25;
      continue;
    }
    if (err <= 1.0) {
      x += h;
      y = ynew;
      k1 = k7;
      sol.push(x, y, k1);
    }
    const double fac = (err == 0.0) ? 5.0 : 0.9 * std::pow(err, -0.2);
    h *= std::clamp(fac, 0.2, 5.0);
  }
  return sol;
}

}  // namespace rmtlab
