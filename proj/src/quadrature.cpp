#include "rmtlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

namespace rmtlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Gauss-Kronrod 15-point nodes/weights on [-1, 1] and the embedded 7-point
// Gauss weights (even-indexed Kronrod nodes).
constexpr double kXgk[15] = {
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
    0.207784955007898467600689403773245,  0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,  0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};
constexpr double kWgk[15] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};
constexpr double kWg[7] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
    0.381830050505118944950369775488975, 0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};

struct Panel {
  double a, b;
  std::complex<double> value;
  double error;
  bool operator<(const Panel& rhs) const { return error < rhs.error; }
};

Panel evaluate_panel(const std::function<std::complex<double>(double)>& f, double a, double b) {
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  std::complex<double> kronrod = 0.0, gauss = 0.0;
  for (int i = 0; i < 15; ++i) {
    const std::complex<double> fv = f(mid + half * kXgk[i]);
    kronrod += kWgk[i] * fv;
    if (i % 2 == 1) gauss += kWg[i / 2] * fv;
  }
  kronrod *= half;
  gauss *= half;
  const double diff = std::abs(kronrod - gauss);
  // QUADPACK-style sharpened error estimate.
  const double err = (diff == 0.0) ? 0.0 : diff * std::min(1.0, std::pow(200.0 * diff, 1.5));
  return {a, b, kronrod, std::max(err, diff * 1e-6)};
}

std::complex<double> adaptive(const std::function<std::complex<double>(double)>& f,
                              const std::vector<double>& breakpoints, const QuadratureSpec& spec) {
  std::priority_queue<Panel> queue;
  std::complex<double> total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i + 1] <= breakpoints[i]) continue;
    Panel p = evaluate_panel(f, breakpoints[i], breakpoints[i + 1]);
    total += p.value;
    total_err += p.error;
    queue.push(p);
  }
  int splits = 0;
  while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (queue.empty() || splits >= spec.max_subdivisions)
      throw AccuracyError("quadrature: subdivision cap exceeded", std::abs(total));
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b)
      throw AccuracyError("quadrature: panel underflow at singularity", std::abs(total));
    Panel left = evaluate_panel(f, worst.a, mid);
    Panel right = evaluate_panel(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++splits;
  }
  return total;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (abs_tol <= 0.0 || rel_tol <= 0.0)
    throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
  for (std::size_t i = 0; i < singularities.size(); ++i) {
    if (singularities[i] < 0.0 || singularities[i] >= kTwoPi)
      throw std::invalid_argument("QuadratureSpec: singularity outside [0, 2*pi)");
    if (i > 0 && singularities[i] <= singularities[i - 1])
      throw std::invalid_argument("QuadratureSpec: singularities must be sorted and distinct");
  }
}

std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f,
                                       double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  std::vector<double> breaks{a};
  for (double s : spec.singularities)
    if (s > a && s < b) breaks.push_back(s);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  return adaptive(f, breaks, spec);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
  return integrate_complex([&f](double x) { return std::complex<double>(f(x), 0.0); }, a, b, spec)
      .real();
}

std::complex<double> integrate_circle(const std::function<std::complex<double>(double)>& f,
                                      const QuadratureSpec& spec) {
  return integrate_complex(f, 0.0, kTwoPi, spec);
}

std::complex<double> fourier_coefficient(const std::function<std::complex<double>(double)>& f,
                                         long j, const QuadratureSpec& spec) {
  // Extra panel breaks keep the oscillation of e^{-ij theta} resolved.
  spec.validate();
  std::vector<double> breaks{0.0};
  for (double s : spec.singularities)
    if (s > 0.0 && s < kTwoPi) breaks.push_back(s);
  const int osc = std::min<long>(std::max<long>(std::labs(j), 1), 512);
  for (int i = 1; i < 2 * osc; ++i) breaks.push_back(kTwoPi * i / (2.0 * osc));
  breaks.push_back(kTwoPi);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-15; }),
               breaks.end());
  auto integrand = [&f, j](double theta) {
    return f(theta) * std::polar(1.0, -static_cast<double>(j) * theta);
  };
  return adaptive(integrand, breaks, spec) / kTwoPi;
}

}  // namespace rmtlab
