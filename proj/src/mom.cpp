#include "rmtlab/mom.hpp"

#include <cmath>
#include <numbers>

#include "rmtlab/charpoly.hpp"
#include "rmtlab/special_functions.hpp"

namespace rmtlab {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double lgamma_checked(double x, const char* what) {
  if (x <= 0.0) throw DivergenceSignal(what);
  return std::lgamma(x);
}

double sp_threshold(int m) { return (std::sqrt(8.0 * m - 3.0) - 1.0) / (4.0 * m - 2.0); }
double o_threshold(int m) { return (std::sqrt(8.0 * m - 3.0) + 1.0) / (4.0 * m - 2.0); }

}  // namespace

double selberg(int m, double a, double b, double c) {
  if (m < 1) throw std::invalid_argument("selberg: m >= 1 required");
  if (!(a > 0.0) || !(b > 0.0))
    throw DivergenceSignal("selberg: requires Re a, Re b > 0");
  double least = 1.0 / m;
  if (m > 1) least = std::min({least, a / (m - 1), b / (m - 1)});
  if (!(c > -least)) throw DivergenceSignal("selberg: c outside the finiteness region");

  double logv = 0.0;
  for (int j = 0; j < m; ++j) {
    logv += lgamma_checked(1.0 + c + j * c, "selberg: Gamma pole (1 + c + jc)");
    logv += lgamma_checked(a + j * c, "selberg: Gamma pole (a + jc)");
    logv += lgamma_checked(b + j * c, "selberg: Gamma pole (b + jc)");
    logv -= lgamma_checked(1.0 + c, "selberg: Gamma pole (1 + c)");
    logv -= lgamma_checked(a + b + c * (m + j - 1), "selberg: Gamma pole (a + b + c(m+j-1))");
  }
  return std::exp(logv);
}

double i_infinity(int m, double alpha, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("i_infinity: sign must be +-1");
  if (alpha == 0.0) return 1.0;
  const double s = static_cast<double>(sign);
  const double a = 0.5 * (1.0 - alpha * alpha + s * alpha);
  const double log4 = std::log(4.0);
  const double prefactor =
      (-alpha * alpha * m * m + s * alpha * m) * log4 - m * std::log(kPi);
  return std::exp(prefactor) * selberg(m, a, a, -alpha * alpha);
}

double c_constant(int m, double alpha, int sign) {
  const double thr =
      std::min(1.0 / std::sqrt(static_cast<double>(m)), sign > 0 ? o_threshold(m) : sp_threshold(m));
  if (!(alpha < thr)) throw DivergenceSignal("c_constant: alpha is not subcritical");
  if (alpha == 0.0) return 1.0;
  const double gpref =
      2.0 * m * log_barnes_g(1.0 + alpha) - m * log_barnes_g(1.0 + 2.0 * alpha);
  return std::exp(gpref) * i_infinity(m, alpha, sign);
}

double fyodorov_bouchaud(int m, double alpha) {
  const double ma2 = m * alpha * alpha;
  if (!(ma2 < 1.0)) throw DivergenceSignal("fyodorov_bouchaud: requires m alpha^2 < 1");
  return std::exp(std::lgamma(1.0 - ma2) - m * std::lgamma(1.0 - alpha * alpha));
}

void MoMQuery::validate() const {
  if (m < 1) throw std::invalid_argument("MoMQuery: m >= 1 required");
  if (!(alpha > 0.0)) throw std::invalid_argument("MoMQuery: alpha > 0 required");
  if (estimator == MomEstimator::quadrature_m1 && m != 1)
    throw std::invalid_argument("MoMQuery: quadrature route only covers m = 1");
  if (samples < 2) throw std::invalid_argument("MoMQuery: need at least two samples");
}

double one_point_function(const Group& group, double theta, double alpha,
                          const QuadratureSpec& spec) {
  // Symbol |z - e^{i theta}|^{2 alpha} |z - e^{-i theta}|^{2 alpha}; for U(n)
  // a single singularity suffices (rotation invariance).
  if (group.kind == GroupKind::U) {
    FHSymbol f({}, {{kPi, alpha, 0.0}});
    return toeplitz_det(f, group.n, spec).value.real();
  }
  if (group.kind == GroupKind::O) {
    const Group so{GroupKind::SO, group.n}, som{GroupKind::SOminus, group.n};
    return 0.5 * (one_point_function(so, theta, alpha, spec) +
                  one_point_function(som, theta, alpha, spec));
  }
  FHSymbol f({}, {{theta, alpha, 0.0}, {kTwoPi - theta, alpha, 0.0}});
  const int size = group.matrix_size();
  switch (group.kind) {
    case GroupKind::Sp:
      return th_det(f, group.n, 2, spec).value.real();
    case GroupKind::SO:
      if (size % 2 == 0) return 0.5 * th_det(f, size / 2, 1, spec).value.real();
      return th_det(f, size / 2, 3, spec).value.real() *
             std::pow(2.0 * std::sin(0.5 * theta), 2.0 * alpha);
    case GroupKind::SOminus:
      if (size % 2 == 0) {
        const int m = size / 2 - 1;
        const double d = (m == 0) ? 1.0 : th_det(f, m, 2, spec).value.real();
        return d * std::pow(2.0 * std::sin(theta), 2.0 * alpha);
      }
      return th_det(f, size / 2, 4, spec).value.real() *
             std::pow(2.0 * std::cos(0.5 * theta), 2.0 * alpha);
    default:
      break;
  }
  throw DomainError("one_point_function: unsupported group");
}

MomEstimate mom_estimate(const MoMQuery& query, RngStream& rng) {
  query.validate();
  MomEstimate out;
  if (query.estimator == MomEstimator::quadrature_m1) {
    // MoM(1, alpha) = (1/pi) int_0^pi E |p(theta)|^{2 alpha} dtheta for the
    // self-conjugate groups; constant in theta for U(n).
    QuadratureSpec coeff_spec;
    coeff_spec.abs_tol = coeff_spec.rel_tol = 1e-12;
    coeff_spec.max_subdivisions = 20000;
    if (query.group.kind == GroupKind::U) {
      out.value = one_point_function(query.group, kPi, query.alpha, coeff_spec);
      return out;
    }
    QuadratureSpec outer;
    outer.abs_tol = 1e-9;
    outer.rel_tol = 1e-6;
    outer.max_subdivisions = 400;
    outer.singularities = {0.0};
    const double integral = integrate(
        [&](double theta) {
          return one_point_function(query.group, theta, query.alpha, coeff_spec);
        },
        1e-9, kPi - 1e-9, outer);
    out.value = integral / kPi;
    return out;
  }

  // Monte Carlo: inner trapezoid of |p|^{2 alpha} on a uniform grid, then the
  // m-th power averaged over Haar draws. |p|^{2 alpha} is continuous for
  // alpha > 0, so the plain composite rule converges.
  const int grid_size = std::max(16, query.grid_per_n * query.group.matrix_size());
  std::vector<double> grid(grid_size);
  for (int i = 0; i < grid_size; ++i) grid[i] = kTwoPi * (i + 0.5) / grid_size;
  double sum = 0.0, sum2 = 0.0;
  for (int s = 0; s < query.samples; ++s) {
    const EnsembleSample es = sample(query.group, rng);
    const FieldGrid fg = field_on_grid(es, grid, query.alpha, 0.0);
    double inner = 0.0;
    for (const auto& v : fg.values) inner += v.real();
    inner /= grid_size;  // (1/2pi) int |p|^{2a} dtheta
    const double powm = std::pow(inner, query.m);
    sum += powm;
    sum2 += powm * powm;
  }
  const double mean = sum / query.samples;
  const double var = std::max(0.0, sum2 / query.samples - mean * mean);
  out.value = mean;
  out.standard_error = std::sqrt(var / query.samples);
  return out;
}

PhaseReport phase_classify(const Group& group, int m, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("phase_classify: alpha > 0 required");
  if (m < 1) throw std::invalid_argument("phase_classify: m >= 1 required");
  PhaseReport rep;
  const double ma = m * static_cast<double>(alpha);

  auto set = [&rep](MomPhase ph, double expo, bool logf, const char* label) {
    rep.phase = ph;
    rep.growth_exponent = expo;
    rep.log_factor = logf;
    rep.label = label;
  };

  switch (group.kind) {
    case GroupKind::U: {
      const double thr = 1.0 / std::sqrt(static_cast<double>(m));
      rep.critical_alphas = {thr};
      if (alpha < thr) set(MomPhase::subcritical, m * alpha * alpha, false, "subcritical");
      else if (alpha == thr) set(MomPhase::critical, m * alpha * alpha, true, "critical");
      else set(MomPhase::supercritical, ma * ma + 1.0 - m, false, "supercritical");
      return rep;
    }
    case GroupKind::Sp: {
      const double thr = sp_threshold(m);
      rep.critical_alphas = {thr};
      if (alpha < thr) set(MomPhase::subcritical, m * alpha * alpha, false, "subcritical");
      else if (alpha == thr) set(MomPhase::critical, m * alpha * alpha, true, "critical");
      else set(MomPhase::supercritical, 2.0 * ma * ma + ma - m, false, "supercritical");
      return rep;
    }
    case GroupKind::O:
    case GroupKind::SO:
    case GroupKind::SOminus: {
      if (m == 2) {
        const double thr1 = 1.0 / std::sqrt(2.0);
        const double thr2 = (std::sqrt(5.0) + 1.0) / 4.0;
        rep.critical_alphas = {thr1, thr2};
        if (alpha < thr1) set(MomPhase::subcritical, 2.0 * alpha * alpha, false, "subcritical");
        else if (alpha == thr1) set(MomPhase::critical, 2.0 * alpha * alpha, true, "critical");
        else if (alpha < thr2)
          set(MomPhase::intermediate, 4.0 * alpha * alpha - 1.0, false, "intermediate");
        else if (alpha == thr2)
          set(MomPhase::critical_upper, 4.0 * alpha * alpha - 1.0, true, "critical");
        else
          set(MomPhase::supercritical, 8.0 * alpha * alpha - 2.0 * alpha - 2.0, false,
              "supercritical");
        return rep;
      }
      const double thr = o_threshold(m);
      rep.critical_alphas = {thr};
      if (alpha < thr) set(MomPhase::subcritical, m * alpha * alpha, false, "subcritical");
      else if (alpha == thr) set(MomPhase::critical, m * alpha * alpha, true, "critical");
      else set(MomPhase::supercritical, 2.0 * ma * ma - ma - m, false, "supercritical");
      return rep;
    }
  }
  throw std::invalid_argument("phase_classify: bad group");
}

}  // namespace rmtlab
