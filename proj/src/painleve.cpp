#include "rmtlab/painleve.hpp"

#include <algorithm>
#include <cmath>

#include "rmtlab/quadrature.hpp"

namespace rmtlab {

namespace {

struct Quartic {
  double s1, d1, a1, a2;
  double q(double y) const {
    const double u = y - s1, v = y + d1;
    return (u * u + a2 * a2) * (v * v + a1 * a1);
  }
  double dq(double y) const {
    const double u = y - s1, v = y + d1;
    return 2.0 * u * (v * v + a1 * a1) + 2.0 * v * (u * u + a2 * a2);
  }
};

// sigma-form residual for state (sigma, sigma_x, sigma_xx) at x.
double form_residual(const Quartic& quartic, double x, double s, double sx, double sxx) {
  const double a = s - x * sx - 2.0 * sx * sx;
  const double lhs = x * x * sxx * sxx;
  const double rhs = 4.0 * quartic.q(sx) - a * a;
  return std::abs(lhs - rhs) / (1.0 + std::abs(lhs) + 4.0 * std::abs(quartic.q(sx)) + a * a);
}

// Slope consistent with sigma(0+) = c0: root of 4 Q(a) = (c0 - 2a^2)^2
// continuing from a = 0 as the jump parameters switch on.
double consistent_slope(const Quartic& quartic, double c0) {
  double a = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double c = c0 - 2.0 * a * a;
    const double f = 4.0 * quartic.q(a) - c * c;
    const double df = 4.0 * quartic.dq(a) + 8.0 * a * c;
    if (std::abs(df) < 1e-14) break;
    const double step = f / df;
    a -= step;
    if (std::abs(step) < 1e-15) break;
  }
  return a;
}

struct ShotResult {
  bool reached = false;
  double x_end = 0.0;
  double sigma_end = 0.0;
  OdeSolution table;
};

constexpr double kBlowup = 1e8;

ShotResult shoot(const PainleveParams& p, const Quartic& quartic, double x0, double x_max,
                 double w, double slope0, double delta_launch, double tol, bool keep_table) {
  ShotResult out;
  const double c0 = p.sigma_at_zero();
  const double sx0 = slope0 + w;
  const double s0 = c0 + slope0 * x0 + w * x0 / delta_launch;
  const double a = s0 - x0 * sx0 - 2.0 * sx0 * sx0;
  const double rad = 4.0 * quartic.q(sx0) - a * a;
  if (rad < 0.0) return out;  // off the constraint manifold; invalid launch
  const double sxx0 = (w >= 0.0 ? 1.0 : -1.0) * std::sqrt(rad) / x0;

  OdeRhs rhs = [&quartic](double x, const std::vector<double>& y, std::vector<double>& dy) {
    const double s = y[0], sx = y[1], sxx = y[2];
    const double aa = s - x * sx - 2.0 * sx * sx;
    dy[0] = sx;
    dy[1] = sxx;
    dy[2] = (2.0 * quartic.dq(sx) + aa * (x + 4.0 * sx) - x * sxx) / (x * x);
  };

  // Piecewise geometric integration so blowups leave a usable endpoint.
  std::vector<double> y{s0, sx0, sxx0};
  double x = x0;
  out.x_end = x0;
  out.sigma_end = s0;
  const int pieces = 80;
  const double ratio = std::pow(x_max / x0, 1.0 / pieces);
  if (keep_table) {
    std::vector<double> dy(3);
    rhs(x0, y, dy);
    out.table.push(x0, y, dy);
  }
  for (int i = 1; i <= pieces; ++i) {
    const double xi = (i == pieces) ? x_max : x0 * std::pow(ratio, i);
    try {
      OdeSolution piece = ode_solve(rhs, x, xi, y, tol);
      if (keep_table) {
        std::vector<double> dy(3);
        for (std::size_t k = 1; k < piece.size(); ++k) {
          rhs(piece.x_at(k), piece.y_at(k), dy);
          out.table.push(piece.x_at(k), piece.y_at(k), dy);
        }
      }
      y = piece.eval(xi);
      x = xi;
      out.x_end = x;
      out.sigma_end = y[0];
      if (std::abs(y[0]) > kBlowup || std::abs(y[1]) > kBlowup) return out;
    } catch (const IntegrationError&) {
      return out;
    }
  }
  out.reached = true;
  return out;
}

}  // namespace

void PainleveParams::validate() const {
  if (alpha1 <= -0.5 || alpha2 <= -0.5 || alpha1 + alpha2 <= -0.5)
    throw DomainError("PainleveParams: requires alpha1, alpha2, alpha1+alpha2 > -1/2");
}

double PainleveSolution::sigma(double x) const { return table.eval(x)[0]; }
double PainleveSolution::dsigma(double x) const { return table.eval(x)[1]; }

double PainleveSolution::residual(double x) const {
  const Quartic quartic{params.s1(), params.d1(), params.alpha1, params.alpha2};
  const auto y = table.eval(x);
  return form_residual(quartic, x, y[0], y[1], y[2]);
}

PainleveSolution solve_sigma(const PainleveParams& params, double x_max, double tol, double x0) {
  params.validate();
  if (!(x_max > x0)) throw SolverError("solve_sigma: x_max must exceed the launch abscissa");
  const Quartic quartic{params.s1(), params.d1(), params.alpha1, params.alpha2};
  const double c0 = params.sigma_at_zero();
  const double slope0 = consistent_slope(quartic, c0);
  const double delta_launch =
      std::clamp(1.0 + 2.0 * (params.alpha1 + params.alpha2), 1.05, 2.0);
  const double ode_tol = std::min(1e-11, tol);

  auto objective = [&](double w) -> double {
    const ShotResult r =
        shoot(params, quartic, x0, x_max, w, slope0, delta_launch, ode_tol, false);
    const double target = params.slope_at_infinity() * r.x_end + params.offset_at_infinity();
    return r.sigma_end - target;
  };

  // Bracket the shooting parameter: scan a sorted signed grid for the sign
  // change of the far-field mismatch closest to w = 0.
  std::vector<double> ws;
  for (double mag = 1e-7; mag < 50.0; mag *= 1.5) {
    ws.push_back(mag);
    ws.push_back(-mag);
  }
  ws.push_back(0.0);
  std::sort(ws.begin(), ws.end());

  double lo = 0.0, hi = 0.0, flo = 0.0, fhi = 0.0;
  bool have = false;
  double best_span = 1e300;
  std::vector<double> fs(ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) fs[i] = objective(ws[i]);
  for (std::size_t i = 0; i + 1 < ws.size(); ++i) {
    if (std::isfinite(fs[i]) && std::isfinite(fs[i + 1]) && fs[i] * fs[i + 1] < 0.0) {
      const double span = std::abs(ws[i]) + std::abs(ws[i + 1]);
      if (span < best_span) {
        best_span = span;
        lo = ws[i];
        hi = ws[i + 1];
        flo = fs[i];
        fhi = fs[i + 1];
        have = true;
      }
    }
  }
  if (!have)
    throw SolverError("solve_sigma: shooting failed to bracket the boundary behavior");

  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = objective(mid);
    if (!std::isfinite(fmid)) throw SolverError("solve_sigma: objective lost finiteness");
    if (flo * fmid <= 0.0) {
      hi = mid;
      fhi = fmid;
    } else {
      lo = mid;
      flo = fmid;
    }
    if (hi - lo < 1e-15 * std::max(1.0, std::abs(lo))) break;
  }
  // Secant refinement.
  double w0 = lo, w1 = hi, f0 = flo, f1 = fhi;
  for (int it = 0; it < 8 && std::abs(f1 - f0) > 0.0; ++it) {
    const double w2 = w1 - f1 * (w1 - w0) / (f1 - f0);
    if (!(w2 > lo - (hi - lo) && w2 < hi + (hi - lo))) break;
    const double f2 = objective(w2);
    if (!std::isfinite(f2)) break;
    w0 = w1;
    f0 = f1;
    w1 = w2;
    f1 = f2;
  }

  const ShotResult final_shot =
      shoot(params, quartic, x0, x_max, w1, slope0, delta_launch, ode_tol, true);
  if (!final_shot.reached)
    throw SolverError("solve_sigma: final integration failed to reach x_max");

  PainleveSolution sol;
  sol.params = params;
  sol.table = std::move(final_shot.table);
  sol.x0 = x0;
  sol.x_max = x_max;
  sol.shooting_parameter = w1;

  // Fit the local correction exponent near the launch point.
  const double u1 = sol.sigma(2.0 * x0) - c0 - slope0 * 2.0 * x0;
  const double u2 = sol.sigma(4.0 * x0) - c0 - slope0 * 4.0 * x0;
  sol.fitted_local_exponent =
      (u1 != 0.0 && u2 / u1 > 0.0) ? std::log(u2 / u1) / std::log(2.0) : 0.0;

  double worst = 0.0;
  for (std::size_t i = 0; i < sol.table.size(); ++i) {
    const auto& y = sol.table.y_at(i);
    worst = std::max(worst, form_residual(quartic, sol.table.x_at(i), y[0], y[1], y[2]));
  }
  sol.max_residual = worst;
  return sol;
}

double log_integral(const PainleveSolution& sol, double upper) {
  if (upper <= 0.0) return 0.0;
  if (upper > sol.x_max * (1.0 + 1e-12))
    throw SolverError("log_integral: upper exceeds the tabulated range");
  const double c0 = sol.params.sigma_at_zero();
  const Quartic quartic{sol.params.s1(), sol.params.d1(), sol.params.alpha1, sol.params.alpha2};
  const double slope0 = consistent_slope(quartic, c0);
  const double x0 = sol.x0;

  if (upper <= x0) {
    // Endpoint series only.
    const double delta = sol.fitted_local_exponent > 0.1 ? sol.fitted_local_exponent : 1.0;
    const double u = sol.sigma(x0) - c0 - slope0 * x0;
    const double scaled = u * std::pow(upper / x0, delta);
    return slope0 * upper + scaled / delta;
  }

  const double delta = sol.fitted_local_exponent > 0.1 ? sol.fitted_local_exponent : 1.0;
  const double u0 = sol.sigma(x0) - c0 - slope0 * x0;
  double head = slope0 * x0 + u0 / delta;

  QuadratureSpec spec;
  spec.abs_tol = 1e-10;
  spec.rel_tol = 1e-10;
  spec.max_subdivisions = 20000;
  const double tail = integrate(
      [&sol, c0](double x) { return (sol.sigma(x) - c0) / x; }, x0, upper, spec);
  return head + tail;
}

}  // namespace rmtlab
