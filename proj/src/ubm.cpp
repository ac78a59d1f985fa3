#include "rmtlab/ubm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rmtlab/charpoly.hpp"

namespace rmtlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// One Euler-Maruyama step with recursive halving when the proposed update
// would push a neighbor gap below sqrt(h)/n.
void dyson_step(std::vector<double>& theta, int n, double h, int depth, RngStream& rng) {
  if (depth > 20) throw StepError("dyson_simulate: sub-step cap exceeded", theta);
  std::vector<double> drift(n, 0.0);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      drift[j] += 1.0 / std::tan(0.5 * (theta[j] - theta[k]));
    }
    drift[j] /= n;
  }
  const double noise = std::sqrt(2.0 * h / n);
  std::vector<double> prop(n);
  for (int j = 0; j < n; ++j) prop[j] = theta[j] + drift[j] * h + noise * rng.normal();

  const double floor_gap = std::sqrt(h) / n;
  bool ok = true;
  for (int j = 0; ok && j < n; ++j) {
    const double gap = (j + 1 < n) ? prop[j + 1] - prop[j]
                                   : prop[0] + kTwoPi - prop[n - 1];
    if (gap < floor_gap) ok = false;
  }
  if (ok) {
    theta = std::move(prop);
    return;
  }
  dyson_step(theta, n, 0.5 * h, depth + 1, rng);
  dyson_step(theta, n, 0.5 * h, depth + 1, rng);
}

}  // namespace

cdouble DysonPath::trace_power(std::size_t time_index, long k) const {
  cdouble t = 0.0;
  for (double a : angles.at(time_index)) t += std::polar(1.0, k * a);
  return t;
}

DysonPath dyson_simulate(int n, double T, double dt, RngStream& rng) {
  if (dt <= 0.0) throw std::invalid_argument("dyson_simulate: dt > 0 required");
  DysonPath path;
  path.n = n;

  const Group gu{GroupKind::U, n};
  std::vector<double> theta = sample(gu, rng).angles;  // sorted in [0, 2 pi)
  const int steps = static_cast<int>(std::ceil(T / dt));

  path.times.push_back(0.0);
  path.angles.push_back(theta);
  for (int i = 1; i <= steps; ++i) {
    const double h = std::min(dt, T - (i - 1) * dt);
    if (n == 1) {
      theta[0] += std::sqrt(2.0 * h) * rng.normal();  // drift term is empty
    } else {
      dyson_step(theta, n, h, 0, rng);
    }
    path.times.push_back(std::min(i * dt, T));
    path.angles.push_back(theta);
  }
  return path;
}

double two_time_cov(int n, int k, double t) {
  if (k < 1 || n < 1) throw std::invalid_argument("two_time_cov: k, n >= 1 required");
  if (t < 0.0) throw std::invalid_argument("two_time_cov: t >= 0 required");
  const double kn_min = std::min(k, n), kn_max = std::max(k, n);
  if (t == 0.0) return kn_min;
  const double x = static_cast<double>(k) * t / n;
  // sinh(kn_min x) / sinh(x) with overflow-safe logs.
  const double log_ratio = (kn_min * x + std::log1p(-std::exp(-2.0 * kn_min * x))) -
                           (x + std::log1p(-std::exp(-2.0 * x)));
  return std::exp(-static_cast<double>(k) * kn_max * t / n + log_ratio);
}

OUFieldPath ou_simulate(int k_max, double T, double dt, RngStream& rng) {
  if (k_max < 1) throw std::invalid_argument("ou_simulate: k_max >= 1 required");
  if (dt <= 0.0) throw std::invalid_argument("ou_simulate: dt > 0 required");
  OUFieldPath path;
  path.k_max = k_max;
  const int steps = static_cast<int>(std::ceil(T / dt));

  std::vector<cdouble> a(k_max);
  for (int k = 1; k <= k_max; ++k) {
    const double sd = 1.0 / std::sqrt(2.0 * k);
    a[k - 1] = {sd * rng.normal(), sd * rng.normal()};
  }
  path.times.push_back(0.0);
  path.coefficients.push_back(a);
  for (int i = 1; i <= steps; ++i) {
    const double h = std::min(dt, T - (i - 1) * dt);
    for (int k = 1; k <= k_max; ++k) {
      const double decay = std::exp(-k * h);
      const double sd = std::sqrt((1.0 - decay * decay) / (2.0 * k));
      a[k - 1] = decay * a[k - 1] + cdouble{sd * rng.normal(), sd * rng.normal()};
    }
    path.times.push_back(std::min(i * dt, T));
    path.coefficients.push_back(a);
  }
  return path;
}

FourierFieldPath log_charpoly_modes(const DysonPath& path, int k_max) {
  FourierFieldPath field;
  field.times = path.times;
  field.modes.resize(path.times.size());
  for (std::size_t i = 0; i < path.times.size(); ++i) {
    field.modes[i].resize(k_max);
    for (int k = 1; k <= k_max; ++k)
      field.modes[i][k - 1] = -path.trace_power(i, k) / static_cast<double>(k);
  }
  return field;
}

double sobolev_norm_squared(const FourierFieldPath& field, double s, double eps) {
  if (s < 0.0 || s >= 1.0) throw DomainError("sobolev_norm_squared: requires 0 <= s < 1");
  if (eps <= 0.0) throw DomainError("sobolev_norm_squared: requires eps > 0");
  const std::size_t nt = field.times.size();
  if (nt < 2) throw DomainError("sobolev_norm_squared: need at least two time slices");
  const std::size_t km = field.modes.front().size();

  std::vector<double> weight(km);
  for (std::size_t k = 1; k <= km; ++k)
    weight[k - 1] = std::pow(static_cast<double>(k), -2.0 * eps);

  auto angle_norm2 = [&](const std::vector<cdouble>& m) {
    double v = 0.0;
    for (std::size_t k = 0; k < km; ++k) v += weight[k] * std::norm(m[k]);
    return v;
  };
  auto diff_norm2 = [&](const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
    double v = 0.0;
    for (std::size_t k = 0; k < km; ++k) v += weight[k] * std::norm(a[k] - b[k]);
    return v;
  };

  // Trapezoid time integral of the angle norm.
  double value = 0.0;
  for (std::size_t i = 0; i + 1 < nt; ++i) {
    const double h = field.times[i + 1] - field.times[i];
    value += 0.5 * h * (angle_norm2(field.modes[i]) + angle_norm2(field.modes[i + 1]));
  }
  if (s == 0.0) return value;

  const double dt = (field.times.back() - field.times.front()) / (nt - 1);
  const double band = 2.0 * dt;
  double slob = 0.0;
  for (std::size_t i = 0; i < nt; ++i) {
    for (std::size_t l = i + 1; l < nt; ++l) {
      const double gap = field.times[l] - field.times[i];
      if (gap < band) continue;
      slob += 2.0 * diff_norm2(field.modes[i], field.modes[l]) / std::pow(gap, 1.0 + 2.0 * s) *
              dt * dt;
    }
  }
  // Diagonal band from the local Hoelder estimate ||F(t)-F(u)||^2 ~ L |t-u|.
  double band_sum = 0.0;
  for (std::size_t i = 0; i + 1 < nt; ++i)
    band_sum += diff_norm2(field.modes[i], field.modes[i + 1]);
  const double l_avg = band_sum / dt / (nt - 1);  // average local slope L
  const double t_span = field.times.back() - field.times.front();
  slob += t_span * l_avg * 2.0 * std::pow(band, 1.0 - 2.0 * s) / (1.0 - 2.0 * s);
  return value + slob;
}

PairingSystem enumerate_pairings(int j) {
  if (j < 1) throw std::invalid_argument("enumerate_pairings: j >= 1 required");
  PairingSystem sys;
  sys.j = j;
  const int N = 2 * j;

  // All fixed-point-free involutions of {1..2j} as image arrays.
  std::vector<int> image(N + 1, 0);
  std::vector<bool> used(N + 1, false);
  std::function<void()> rec = [&]() {
    int first = 0;
    for (int i = 1; i <= N; ++i)
      if (!used[i]) {
        first = i;
        break;
      }
    if (first == 0) {
      sys.pairings.push_back(image);
      return;
    }
    used[first] = true;
    for (int partner = first + 1; partner <= N; ++partner) {
      if (used[partner]) continue;
      used[partner] = true;
      image[first] = partner;
      image[partner] = first;
      rec();
      used[partner] = false;
    }
    used[first] = false;
  };
  rec();

  // rho on {1..4j}: left block (23)(45)...(2j,1), right block
  // (2j+2l-1, 2j+2l+2) with wraparound to (4j-1, 2j+2).
  sys.rho.assign(4 * j + 1, 0);
  if (j == 1) {
    sys.rho[1] = 2;
    sys.rho[2] = 1;
  } else {
    for (int l = 1; l < j; ++l) {
      sys.rho[2 * l] = 2 * l + 1;
      sys.rho[2 * l + 1] = 2 * l;
    }
    sys.rho[2 * j] = 1;
    sys.rho[1] = 2 * j;
  }
  for (int l = 1; l <= j; ++l) {
    const int a = 2 * j + 2 * l - 1;
    const int b = 2 * j + ((2 * l + 1) % (2 * j)) + 1;
    sys.rho[a] = b;
    sys.rho[b] = a;
  }

  // Orbits of even indices under pi~ rho, per pairing.
  for (const auto& pi : sys.pairings) {
    std::vector<int> tilde(4 * j + 1, 0);
    for (int l = 1; l <= N; ++l) {
      tilde[2 * l - 1] = 2 * pi[l];
      tilde[2 * l] = 2 * pi[l] - 1;
    }
    std::vector<std::vector<int>> orbits;
    std::vector<bool> seen(4 * j + 1, false);
    for (int w = 2; w <= 4 * j; w += 2) {
      if (seen[w]) continue;
      std::vector<int> orbit;
      int cur = w;
      do {
        seen[cur] = true;
        orbit.push_back(cur);
        cur = tilde[sys.rho[cur]];
      } while (cur != w);
      orbits.push_back(std::move(orbit));
    }
    sys.orbits.push_back(std::move(orbits));
  }
  return sys;
}

long wick_exponent(const std::vector<long>& sigma, int w) {
  const int j = static_cast<int>(sigma.size());
  const int l = w / 2;
  if (w % 2 != 0 || l < 1 || l > 2 * j) throw std::invalid_argument("wick_exponent: bad slot");
  if (l <= j) return sigma[l - 1];
  if (l == j + 1) return -sigma[j - 1];
  return -sigma[l - j - 2];
}

namespace {

// E prod_orbits Tr(U^{e}) via the exact moments when in regime.
std::optional<double> orbit_moment_exact(const std::vector<long>& exponents, int n) {
  std::map<int, int> a, b;
  double n_factor = 1.0;
  for (long e : exponents) {
    if (e == 0) {
      n_factor *= n;  // Tr U^0 = n
    } else if (e > 0) {
      a[static_cast<int>(e)] += 1;
    } else {
      b[static_cast<int>(-e)] += 1;
    }
  }
  const auto moment = ds_trace_moment(a, b, n);
  if (!moment) return std::nullopt;
  return n_factor * *moment;
}

}  // namespace

double wick_rhs(const std::vector<long>& sigma, int n, RngStream* fallback_rng,
                int fallback_samples, bool* used_fallback) {
  const int j = static_cast<int>(sigma.size());
  const PairingSystem sys = enumerate_pairings(j);
  if (used_fallback) *used_fallback = false;

  double total = 0.0;
  for (std::size_t p = 0; p < sys.pairings.size(); ++p) {
    std::vector<long> orbit_exponents;
    for (const auto& orbit : sys.orbits[p]) {
      long e = 0;
      for (int w : orbit) e += wick_exponent(sigma, w);
      orbit_exponents.push_back(e);
    }
    const auto exact = orbit_moment_exact(orbit_exponents, n);
    if (exact) {
      total += *exact;
      continue;
    }
    // Diaconis-Shahshahani hypothesis violated: Haar-MC evaluation of this
    // pairing's expectation.
    if (used_fallback) *used_fallback = true;
    if (fallback_rng == nullptr)
      throw PreconditionError("wick_rhs: outside the exact trace-moment regime and no rng given");
    const Group gu{GroupKind::U, n};
    double acc = 0.0;
    for (int s = 0; s < fallback_samples; ++s) {
      const EnsembleSample es = sample(gu, *fallback_rng);
      cdouble prod = 1.0;
      for (long e : orbit_exponents) prod *= (e == 0) ? cdouble(n, 0.0) : es.trace_power(e);
      acc += prod.real();
    }
    total += acc / fallback_samples;
  }
  return total;
}

WickReport wick_mc(const std::vector<long>& sigma, int n, int samples, RngStream& rng) {
  WickReport rep;
  const Group gu{GroupKind::U, n};
  double sum = 0.0, sum2 = 0.0;
  for (int s = 0; s < samples; ++s) {
    // GUE(n): diagonal N(0,1); off-diagonal re/im N(0, 1/2).
    ComplexMatrix h(n, n);
    for (int i = 0; i < n; ++i) {
      h(i, i) = rng.normal();
      for (int k = i + 1; k < n; ++k) {
        const cdouble z = rng.complex_normal();
        h(i, k) = z;
        h(k, i) = std::conj(z);
      }
    }
    const ComplexMatrix u = haar_matrix(gu, rng);
    // Powers of U by repeated multiplication (|sigma| entries are small).
    ComplexMatrix prod = ComplexMatrix::identity(n);
    for (long e : sigma) {
      prod = prod * h;
      ComplexMatrix upow = ComplexMatrix::identity(n);
      const ComplexMatrix base = (e >= 0) ? u : u.adjoint();
      for (long i = 0; i < std::labs(e); ++i) upow = upow * base;
      prod = prod * upow;
    }
    const double v = std::norm(prod.trace());
    sum += v;
    sum2 += v * v;
  }
  rep.mc = sum / samples;
  const double var = std::max(0.0, sum2 / samples - rep.mc * rep.mc);
  rep.se = std::sqrt(var / samples);
  return rep;
}

cdouble spohn_linear_statistic(const DysonPath& path,
                               const std::vector<std::pair<long, cdouble>>& f,
                               std::size_t time_index) {
  cdouble value = 0.0;
  for (const auto& [k, fk] : f) {
    if (k == 0) {
      if (std::abs(fk) > 0.0)
        throw DomainError("spohn_linear_statistic: f_0 must vanish");
      continue;
    }
    value += fk * path.trace_power(time_index, k);
  }
  return value;
}

}  // namespace rmtlab
