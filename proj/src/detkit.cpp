#include "rmtlab/detkit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

namespace rmtlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
  theta = std::fmod(theta, kTwoPi);
  if (theta < 0.0) theta += kTwoPi;
  return theta;
}

// Determinant plus a pivot-ratio condition proxy.
std::pair<cdouble, double> det_with_condition(ComplexMatrix a) {
  const std::size_t n = a.rows();
  int sign = 1;
  std::complex<long double> det = 1.0L;
  double pmax = 0.0, pmin = 1e300;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        piv = i;
      }
    if (best == 0.0) return {cdouble(0.0), 1e300};
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      sign = -sign;
    }
    pmax = std::max(pmax, best);
    pmin = std::min(pmin, best);
    det *= std::complex<long double>(a(k, k));
    const cdouble inv = 1.0 / a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cdouble f = a(i, k) * inv;
      if (f == cdouble{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  det *= static_cast<long double>(sign);
  return {cdouble(static_cast<double>(det.real()), static_cast<double>(det.imag())),
          pmin > 0.0 ? pmax / pmin : 1e300};
}

template <typename Coeff>
DetReport toeplitz_impl(const Coeff& c, int n) {
  if (n < 1) throw DimensionError("toeplitz_det: n must be >= 1");
  ComplexMatrix m(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m(j, k) = c(j - k);
  auto [value, cond] = det_with_condition(std::move(m));
  return {n, 0, value, cond};
}

template <typename Coeff>
DetReport th_impl(const Coeff& c, int n, int kappa) {
  if (n < 1) throw DimensionError("th_det: n must be >= 1");
  ComplexMatrix m(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      switch (kappa) {
        case 1: m(j, k) = c(j - k) + c(j + k); break;
        case 2: m(j, k) = c(j - k) - c(j + k + 2); break;
        case 3: m(j, k) = c(j - k) - c(j + k + 1); break;
        case 4: m(j, k) = c(j - k) + c(j + k + 1); break;
        default: throw std::invalid_argument("th_det: kappa must be 1..4");
      }
    }
  auto [value, cond] = det_with_condition(std::move(m));
  return {n, kappa, value, cond};
}

}  // namespace

FHSymbol::FHSymbol(std::map<long, cdouble> v, std::vector<Singularity> singularities)
    : v_(std::move(v)), sing_(std::move(singularities)) {
  for (auto& s : sing_) {
    s.theta = wrap_angle(s.theta);
    if (s.alpha <= -0.5) throw DomainError("FHSymbol: alpha must be > -1/2");
  }
  std::sort(sing_.begin(), sing_.end(),
            [](const Singularity& a, const Singularity& b) { return a.theta < b.theta; });
  for (std::size_t i = 1; i < sing_.size(); ++i)
    if (sing_[i].theta - sing_[i - 1].theta < 1e-12)
      throw DomainError("FHSymbol: singularities must be distinct");
}

cdouble FHSymbol::v_at(long k) const {
  const auto it = v_.find(k);
  return it == v_.end() ? cdouble(0.0) : it->second;
}

cdouble FHSymbol::v_eval(double theta) const {
  cdouble s = 0.0;
  for (const auto& [k, vk] : v_) s += vk * std::polar(1.0, k * theta);
  return s;
}

bool FHSymbol::is_real(double tol) const {
  for (const auto& [k, vk] : v_)
    if (std::abs(vk - std::conj(v_at(-k))) > tol) return false;
  return true;
}

bool FHSymbol::is_even(double tol) const {
  for (const auto& [k, vk] : v_)
    if (std::abs(vk - v_at(-k)) > tol) return false;
  for (const auto& s : sing_) {
    if (s.theta < tol || std::abs(s.theta - kPi) < tol) {
      if (std::abs(s.beta_im) > tol) return false;
      continue;
    }
    const double mirror = kTwoPi - s.theta;
    bool found = false;
    for (const auto& t : sing_) {
      if (std::abs(t.theta - mirror) < 1e-10) {
        if (std::abs(t.alpha - s.alpha) > tol || std::abs(t.beta_im + s.beta_im) > tol)
          return false;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

cdouble FHSymbol::eval(double theta) const {
  theta = wrap_angle(theta);
  double beta_sum = 0.0;
  for (const auto& s : sing_) beta_sum += s.beta_im;

  cdouble logf = v_eval(theta);
  logf += cdouble(-theta * beta_sum, 0.0);  // z^{sum beta}, beta = i b
  for (const auto& s : sing_) {
    const double d = 2.0 * std::abs(std::sin(0.5 * (theta - s.theta)));
    if (d == 0.0) {
      if (s.alpha < 0.0) throw PoleError("FHSymbol::eval: pole at singularity");
      if (s.alpha > 0.0) return 0.0;
    } else {
      logf += 2.0 * s.alpha * std::log(d);
    }
    // g_{z_j,beta_j}: e^{i pi beta} below theta_j, e^{-i pi beta} at/above.
    const double g_exponent = (theta < s.theta) ? -kPi * s.beta_im : kPi * s.beta_im;
    logf += g_exponent;
    logf += s.theta * s.beta_im;  // z_j^{-beta_j}
  }
  return std::exp(logf);
}

FHSymbol FHSymbol::with_extra_alpha(double theta, double delta_alpha) const {
  theta = wrap_angle(theta);
  std::vector<Singularity> s = sing_;
  bool merged = false;
  for (auto& x : s) {
    if (std::abs(x.theta - theta) < 1e-12) {
      x.alpha += delta_alpha;
      merged = true;
      break;
    }
  }
  if (!merged) s.push_back({theta, delta_alpha, 0.0});
  return FHSymbol(v_, std::move(s));
}

std::vector<double> FHSymbol::singular_angles() const {
  std::vector<double> out;
  for (const auto& s : sing_) out.push_back(s.theta);
  return out;
}

cdouble FHSymbol::coefficient(long j, const QuadratureSpec& base_spec) const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    const auto it = cache_.find(j);
    if (it != cache_.end()) return it->second;
  }
  QuadratureSpec spec = base_spec;
  spec.singularities = singular_angles();
  const cdouble value = rmtlab::fourier_coefficient([this](double t) { return eval(t); }, j, spec);
  std::lock_guard<std::mutex> lock(cache_mutex_);
  cache_[j] = value;
  return value;
}

std::string FHSymbol::to_json() const {
  nlohmann::json j;
  j["V"] = nlohmann::json::array();
  for (const auto& [k, vk] : v_) j["V"].push_back({k, vk.real(), vk.imag()});
  j["singularities"] = nlohmann::json::array();
  for (const auto& s : sing_)
    j["singularities"].push_back({{"theta", s.theta}, {"alpha", s.alpha}, {"beta_im", s.beta_im}});
  return j.dump();
}

FHSymbol FHSymbol::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  std::map<long, cdouble> v;
  if (j.contains("V"))
    for (const auto& row : j["V"]) v[row[0].get<long>()] = {row[1].get<double>(), row[2].get<double>()};
  std::vector<Singularity> s;
  if (j.contains("singularities"))
    for (const auto& row : j["singularities"])
      s.push_back({row["theta"].get<double>(), row["alpha"].get<double>(),
                   row.value("beta_im", 0.0)});
  return FHSymbol(std::move(v), std::move(s));
}

CircleFunction::CircleFunction(std::function<cdouble(double)> eval,
                               std::vector<double> singular_angles)
    : eval_(std::move(eval)), singular_(std::move(singular_angles)) {
  for (double& a : singular_) a = wrap_angle(a);
  std::sort(singular_.begin(), singular_.end());
  singular_.erase(std::unique(singular_.begin(), singular_.end(),
                              [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                  singular_.end());
}

cdouble CircleFunction::coefficient(long j, const QuadratureSpec& base_spec) const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    const auto it = cache_.find(j);
    if (it != cache_.end()) return it->second;
  }
  QuadratureSpec spec = base_spec;
  spec.singularities = singular_;
  const cdouble value = rmtlab::fourier_coefficient(eval_, j, spec);
  std::lock_guard<std::mutex> lock(cache_mutex_);
  cache_[j] = value;
  return value;
}

DetReport toeplitz_det(const FHSymbol& sym, int n, const QuadratureSpec& spec) {
  return toeplitz_impl([&](long j) { return sym.coefficient(j, spec); }, n);
}
DetReport th_det(const FHSymbol& sym, int n, int kappa, const QuadratureSpec& spec) {
  return th_impl([&](long j) { return sym.coefficient(j, spec); }, n, kappa);
}
DetReport toeplitz_det(const CircleFunction& f, int n, const QuadratureSpec& spec) {
  return toeplitz_impl([&](long j) { return f.coefficient(j, spec); }, n);
}
DetReport th_det(const CircleFunction& f, int n, int kappa, const QuadratureSpec& spec) {
  return th_impl([&](long j) { return f.coefficient(j, spec); }, n, kappa);
}

HeineSzegoReport heine_szego_check(const FHSymbol& sym, int n, int samples, RngStream& rng,
                                   const QuadratureSpec& spec) {
  HeineSzegoReport rep;
  rep.determinant = toeplitz_det(sym, n, spec).value;
  cdouble sum = 0.0;
  double sum_re2 = 0.0;
  const Group gu{GroupKind::U, n};
  for (int i = 0; i < samples; ++i) {
    const EnsembleSample s = sample(gu, rng);
    cdouble prod = 1.0;
    for (double theta : s.angles) prod *= sym.eval(theta);
    sum += prod;
    sum_re2 += prod.real() * prod.real();
  }
  const double mean_re = sum.real() / samples;
  const double var_re = std::max(0.0, sum_re2 / samples - mean_re * mean_re);
  rep.mc_estimate = sum / static_cast<double>(samples);
  rep.se = std::sqrt(var_re / samples);
  rep.z_score = rep.se > 0.0 ? (mean_re - rep.determinant.real()) / rep.se : 0.0;
  return rep;
}

cdouble baik_rains_expectation(const Group& group, const FHSymbol& h, const QuadratureSpec& spec) {
  const auto h_eval = [&h](double theta) { return h.eval(theta); };
  if (group.kind == GroupKind::U) return toeplitz_det(h, group.n, spec).value;
  if (group.kind == GroupKind::O) {
    Group so{GroupKind::SO, group.n};
    Group som{GroupKind::SOminus, group.n};
    return 0.5 * (baik_rains_expectation(so, h, spec) + baik_rains_expectation(som, h, spec));
  }

  std::vector<double> sing = h.singular_angles();
  for (double a : h.singular_angles()) sing.push_back(wrap_angle(kTwoPi - a));
  CircleFunction iota([h_eval](double theta) { return h_eval(theta) * h_eval(kTwoPi - theta); },
                      std::move(sing));
  const cdouble h1 = h.eval(0.0);
  const cdouble hm1 = h.eval(kPi);

  const int size = group.matrix_size();
  switch (group.kind) {
    case GroupKind::Sp:
      return th_det(iota, group.n, 2, spec).value;
    case GroupKind::SO:
      if (size == 0) return h1;
      if (size % 2 == 0) return 0.5 * th_det(iota, size / 2, 1, spec).value;
      return h1 * th_det(iota, size / 2, 3, spec).value;
    case GroupKind::SOminus:
      if (size % 2 == 0) {
        const int m = size / 2 - 1;
        const cdouble d = (m == 0) ? cdouble(1.0) : th_det(iota, m, 2, spec).value;
        return h1 * hm1 * d;
      }
      return hm1 * th_det(iota, size / 2, 4, spec).value;
    default:
      break;
  }
  throw DomainError("baik_rains_expectation: unsupported group");
}

OrthopolyConnectionReport orthopoly_connection_check(const FHSymbol& sym, int n,
                                                     const QuadratureSpec& spec) {
  if (!sym.is_even(1e-9)) throw DomainError("orthopoly_connection_check: symbol must be even");
  OrthopolyConnectionReport rep;
  const int m = 2 * n;

  for (int kappa = 1; kappa <= 4; ++kappa) {
    FHSymbol weight = sym;
    double factor = 1.0;  // prefactor of D_{2n} in the identity
    switch (kappa) {
      case 1: factor = 4.0; break;
      case 2:
        weight = sym.with_extra_alpha(0.0, 1.0).with_extra_alpha(kPi, 1.0);
        factor = 1.0;
        break;
      case 3:
        weight = sym.with_extra_alpha(0.0, 1.0);
        factor = 0.25;
        break;
      case 4:
        weight = sym.with_extra_alpha(kPi, 1.0);
        factor = 0.25;
        break;
    }
    // Monic orthogonal polynomial Phi_m of the weight via the moment system.
    ComplexMatrix a(m, m);
    std::vector<cdouble> rhs(m);
    for (int k = 0; k < m; ++k) {
      for (int j = 0; j < m; ++j) a(k, j) = weight.coefficient(k - j, spec);
      rhs[k] = -weight.coefficient(k - m, spec);
    }
    std::vector<cdouble> c;
    try {
      c = lu_solve(a, rhs);
    } catch (const NumericalError&) {
      throw DegeneracyError("orthopoly_connection_check: singular Toeplitz moment system");
    }
    cdouble phi0 = c[0], phi1 = 1.0, phim1 = 1.0;  // z^m terms: 1, (+1)^m, (-1)^m (m even)
    for (int j = 0; j < m; ++j) {
      phi1 += c[j];
      phim1 += c[j] * ((j % 2 == 0) ? 1.0 : -1.0);
    }
    rep.phi0[kappa - 1] = phi0;
    rep.phi_plus[kappa - 1] = phi1;
    rep.phi_minus[kappa - 1] = phim1;

    const cdouble lhs = th_det(sym, n, kappa, spec).value;
    const cdouble d2n = toeplitz_det(weight, m, spec).value;
    const cdouble one_plus = 1.0 + phi0;
    if (std::abs(phi1) < 1e-14 || std::abs(phim1) < 1e-14)
      throw DegeneracyError("orthopoly_connection_check: Phi vanishes at +-1");
    const cdouble rhs_value = factor * one_plus * one_plus / (phi1 * phim1) * d2n;
    rep.residual[kappa - 1] = std::abs(lhs * lhs - rhs_value) /
                              std::max({std::abs(rhs_value), std::abs(lhs * lhs), 1e-300});
  }
  return rep;
}

}  // namespace rmtlab
