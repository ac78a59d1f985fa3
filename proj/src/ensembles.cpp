#include "rmtlab/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rmtlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double lfactorial(int n) { return std::lgamma(n + 1.0); }

// Modified Gram-Schmidt with one re-orthogonalization pass.
void orthonormalize_column(ComplexMatrix& q, std::size_t col, std::size_t upto) {
  const std::size_t n = q.rows();
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < upto; ++j) {
      cdouble dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, j)) * q(i, col);
      for (std::size_t i = 0; i < n; ++i) q(i, col) -= dot * q(i, j);
    }
  }
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) norm += std::norm(q(i, col));
  norm = std::sqrt(norm);
  if (norm == 0.0) throw NumericalError("haar_matrix: degenerate Ginibre column");
  for (std::size_t i = 0; i < n; ++i) q(i, col) /= norm;
}

ComplexMatrix haar_unitary(int n, RngStream& rng) {
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.complex_normal();

  // Gram-Schmidt; the phase correction makes the factor exactly Haar: the
  // diagonal R entries after projection carry the Ginibre column phase, and
  // normalizing by the positive norm keeps it. Nothing else needed for MGS.
  for (int k = 0; k < n; ++k) orthonormalize_column(a, k, k);
  return a;
}

ComplexMatrix haar_orthogonal(int n, bool det_minus, RngStream& rng) {
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
  for (int k = 0; k < n; ++k) orthonormalize_column(a, k, k);

  const double det = lu_determinant(a).real();
  const bool is_minus = det < 0.0;
  if (is_minus != det_minus) {
    // Flipping the last column swaps the O(n) components measure-preservingly.
    for (int i = 0; i < n; ++i) a(i, n - 1) = -a(i, n - 1);
  }
  return a;
}

// Partner map of the quaternionic embedding: tau(u; v) = (-conj v; conj u).
void set_partner_column(ComplexMatrix& q, int n, std::size_t src, std::size_t dst) {
  for (int i = 0; i < n; ++i) {
    q(i, dst) = -std::conj(q(i + n, src));
    q(i + n, dst) = std::conj(q(i, src));
  }
}

ComplexMatrix haar_symplectic(int n, RngStream& rng) {
  // Structured Ginibre [[W, X], [-conj X, conj W]], orthonormalized column
  // pair by column pair; quaternionic Gram-Schmidt projects onto the complex
  // span of each previous column and its partner.
  const int m = 2 * n;
  ComplexMatrix q(m, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cdouble w = rng.complex_normal();
      const cdouble x = rng.complex_normal();
      q(i, j) = w;
      q(i + n, j) = -std::conj(x);
      // partner columns are overwritten below; fill for completeness
      q(i, j + n) = x;
      q(i + n, j + n) = std::conj(w);
    }
  for (int k = 0; k < n; ++k) {
    // Orthogonalize against q_0..q_{k-1} and their partners q_{n}..q_{n+k-1}.
    const std::size_t col = static_cast<std::size_t>(k);
    const std::size_t nn = static_cast<std::size_t>(n);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < static_cast<std::size_t>(k); ++j) {
        for (std::size_t jj : {j, nn + j}) {
          cdouble dot = 0.0;
          for (int i = 0; i < m; ++i) dot += std::conj(q(i, jj)) * q(i, col);
          for (int i = 0; i < m; ++i) q(i, col) -= dot * q(i, jj);
        }
      }
    }
    double norm = 0.0;
    for (int i = 0; i < m; ++i) norm += std::norm(q(i, col));
    norm = std::sqrt(norm);
    if (norm == 0.0) throw NumericalError("haar_matrix: degenerate symplectic column");
    for (int i = 0; i < m; ++i) q(i, col) /= norm;
    set_partner_column(q, n, col, nn + col);
  }
  return q;
}

}  // namespace

std::string Group::name() const {
  switch (kind) {
    case GroupKind::U: return "U";
    case GroupKind::SO: return "SO";
    case GroupKind::SOminus: return "SOminus";
    case GroupKind::O: return "O";
    case GroupKind::Sp: return "Sp";
  }
  return "?";
}

Group Group::parse(const std::string& name) {
  Group g;
  g.n = 1;
  if (name == "U") g.kind = GroupKind::U;
  else if (name == "SO") g.kind = GroupKind::SO;
  else if (name == "SOminus" || name == "SO-") g.kind = GroupKind::SOminus;
  else if (name == "O") g.kind = GroupKind::O;
  else if (name == "Sp") g.kind = GroupKind::Sp;
  else throw std::invalid_argument("unknown group: " + name);
  return g;
}

std::vector<double> EnsembleSample::full_spectrum() const {
  std::vector<double> out = angles;
  if (group.kind != GroupKind::U) {
    for (double a : angles) out.push_back(kTwoPi - a);
  }
  for (int i = 0; i < fixed_plus_one; ++i) out.push_back(0.0);
  for (int i = 0; i < fixed_minus_one; ++i) out.push_back(kPi);
  std::sort(out.begin(), out.end());
  for (double& a : out)
    if (a >= kTwoPi) a -= kTwoPi;
  return out;
}

cdouble EnsembleSample::trace_power(long k) const {
  cdouble t = 0.0;
  for (double a : full_spectrum()) t += std::polar(1.0, k * a);
  return t;
}

ComplexMatrix haar_matrix(const Group& group, RngStream& rng) {
  switch (group.kind) {
    case GroupKind::U: return haar_unitary(group.n, rng);
    case GroupKind::SO: return haar_orthogonal(group.n, false, rng);
    case GroupKind::SOminus: return haar_orthogonal(group.n, true, rng);
    case GroupKind::O: {
      const bool minus = rng.uniform() < 0.5;
      return haar_orthogonal(group.n, minus, rng);
    }
    case GroupKind::Sp: return haar_symplectic(group.n, rng);
  }
  throw std::invalid_argument("haar_matrix: bad group");
}

namespace {

// Pops the angle nearest to target; the fixed eigenvalue it represents.
double pop_nearest(std::vector<double>& angles, double target) {
  std::size_t best = 0;
  double bestd = 1e300;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    double d = std::abs(angles[i] - target);
    d = std::min(d, kTwoPi - d);
    if (d < bestd) {
      bestd = d;
      best = i;
    }
  }
  const double got = angles[best];
  angles.erase(angles.begin() + best);
  return got;
}

EnsembleSample sample_from_angles(Group resolved, std::vector<double> all_angles) {
  EnsembleSample s;
  s.group = resolved;
  if (resolved.kind == GroupKind::U) {
    std::sort(all_angles.begin(), all_angles.end());
    s.angles = std::move(all_angles);
    return s;
  }
  const int n = resolved.matrix_size();
  if (resolved.kind == GroupKind::SO && n % 2 == 1) {
    pop_nearest(all_angles, 0.0);
    s.fixed_plus_one = 1;
  } else if (resolved.kind == GroupKind::SOminus && n % 2 == 1) {
    pop_nearest(all_angles, kPi);
    s.fixed_minus_one = 1;
  } else if (resolved.kind == GroupKind::SOminus && n % 2 == 0) {
    pop_nearest(all_angles, 0.0);
    pop_nearest(all_angles, kPi);
    s.fixed_plus_one = 1;
    s.fixed_minus_one = 1;
  }
  // Fold onto [0, pi] and average each conjugate pair.
  std::vector<double> folded;
  folded.reserve(all_angles.size());
  for (double a : all_angles) folded.push_back(std::min(a, kTwoPi - a));
  std::sort(folded.begin(), folded.end());
  std::vector<double> upper;
  for (std::size_t i = 0; i + 1 < folded.size(); i += 2)
    upper.push_back(0.5 * (folded[i] + folded[i + 1]));
  s.angles = std::move(upper);
  return s;
}

}  // namespace

EnsembleSample sample(const Group& group, RngStream& rng) {
  Group resolved = group;
  if (group.kind == GroupKind::O) {
    resolved.kind = (rng.uniform() < 0.5) ? GroupKind::SOminus : GroupKind::SO;
  }
  const ComplexMatrix u = haar_matrix(resolved, rng);
  std::vector<double> all_angles = eigenangles_unitary(u, 1e-7);
  return sample_from_angles(resolved, std::move(all_angles));
}

double log_weyl_density_unnormalized(const Group& group, const std::vector<double>& angles) {
  const std::size_t n = angles.size();
  double logd = 0.0;
  switch (group.kind) {
    case GroupKind::U:
      for (double a : angles)
        if (a < 0.0 || a >= kTwoPi) throw DomainError("weyl_density: angle outside [0, 2*pi)");
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = k + 1; j < n; ++j)
          logd += 2.0 * std::log(std::abs(2.0 * std::sin(0.5 * (angles[k] - angles[j]))));
      return logd;
    case GroupKind::O:
      throw DomainError("weyl_density: O(n) has no single Weyl density; resolve to SO/SOminus");
    default: break;
  }
  for (double a : angles)
    if (a < 0.0 || a > kPi) throw DomainError("weyl_density: angle outside [0, pi]");
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k)
      logd += 2.0 * std::log(std::abs(2.0 * std::cos(angles[k]) - 2.0 * std::cos(angles[j])));
  const int size = group.matrix_size();
  for (double a : angles) {
    if (group.kind == GroupKind::Sp) logd += 2.0 * std::log(std::abs(std::sin(a)));
    else if (group.kind == GroupKind::SO && size % 2 == 1)
      logd += 2.0 * std::log(std::abs(std::sin(0.5 * a)));
    else if (group.kind == GroupKind::SOminus && size % 2 == 1)
      logd += 2.0 * std::log(std::abs(std::cos(0.5 * a)));
    else if (group.kind == GroupKind::SOminus && size % 2 == 0)
      logd += 2.0 * std::log(std::abs(std::sin(a)));  // same row as Sp(2n)
  }
  return logd;
}

double weyl_density(const Group& group, const std::vector<double>& angles) {
  const std::size_t n = angles.size();
  double lognorm = 0.0;
  const int size = group.matrix_size();
  switch (group.kind) {
    case GroupKind::U:
      lognorm = -lfactorial(static_cast<int>(n)) - static_cast<double>(n) * std::log(kTwoPi);
      break;
    case GroupKind::SO:
      if (size % 2 == 0)
        lognorm = std::log(2.0) - lfactorial(static_cast<int>(n)) -
                  static_cast<double>(n) * std::log(kTwoPi);
      else
        lognorm = static_cast<double>(n) * std::log(2.0) - lfactorial(static_cast<int>(n)) -
                  static_cast<double>(n) * std::log(kPi);
      break;
    case GroupKind::SOminus:
    case GroupKind::Sp:
      lognorm = static_cast<double>(n) * std::log(2.0) - lfactorial(static_cast<int>(n)) -
                static_cast<double>(n) * std::log(kPi);
      break;
    case GroupKind::O:
      throw DomainError("weyl_density: O(n) has no single Weyl density; resolve to SO/SOminus");
  }
  return std::exp(lognorm + log_weyl_density_unnormalized(group, angles));
}

MetropolisResult metropolisweyl_impl(const Group& group, int steps, int burn_in, int thin,
                                     RngStream& rng) {
  Group resolved = group;
  if (group.kind == GroupKind::O)
    throw DomainError("metropolis_weyl: resolve O(n) to SO/SOminus before running the chain");
  const bool unitary = group.kind == GroupKind::U;
  const int size = resolved.matrix_size();
  int nfree;  // number of nontrivial angles
  if (unitary) nfree = size;
  else nfree = size / 2 - ((resolved.kind == GroupKind::SOminus && size % 2 == 0) ? 1 : 0);

  const double hi = unitary ? kTwoPi : kPi;
  std::vector<double> state(nfree);
  for (int i = 0; i < nfree; ++i) state[i] = rng.uniform(0.05 * hi, 0.95 * hi);
  std::sort(state.begin(), state.end());
  double logd = log_weyl_density_unnormalized(resolved, state);

  const double width = kPi / std::sqrt(std::max(1, nfree));
  long accepted = 0, proposed = 0;

  MetropolisResult out;
  for (int step = 0; step < steps; ++step) {
    for (int i = 0; i < nfree; ++i) {
      std::vector<double> cand = state;
      double x = cand[i] + width * rng.normal();
      if (unitary) {
        x = std::fmod(x, kTwoPi);
        if (x < 0.0) x += kTwoPi;
      } else {
        // reflect at 0 and pi
        x = std::fmod(std::abs(x), kTwoPi);
        if (x > kPi) x = kTwoPi - x;
      }
      cand[i] = x;
      double cand_logd;
      try {
        cand_logd = log_weyl_density_unnormalized(resolved, cand);
      } catch (const DomainError&) {
        ++proposed;
        continue;
      }
      ++proposed;
      if (cand_logd >= logd || rng.uniform() < std::exp(cand_logd - logd)) {
        state = std::move(cand);
        logd = cand_logd;
        ++accepted;
      }
    }
    if (step >= burn_in && (step - burn_in) % std::max(1, thin) == 0) {
      std::vector<double> sorted = state;
      std::sort(sorted.begin(), sorted.end());
      EnsembleSample s;
      s.group = resolved;
      s.angles = std::move(sorted);
      if (resolved.kind == GroupKind::SO && size % 2 == 1) s.fixed_plus_one = 1;
      if (resolved.kind == GroupKind::SOminus && size % 2 == 1) s.fixed_minus_one = 1;
      if (resolved.kind == GroupKind::SOminus && size % 2 == 0)
        s.fixed_plus_one = s.fixed_minus_one = 1;
      out.samples.push_back(std::move(s));
    }
  }
  out.acceptance_rate = proposed > 0 ? static_cast<double>(accepted) / proposed : 0.0;
  return out;
}

MetropolisResult metropolis_weyl(const Group& group, int steps, int burn_in, int thin,
                                 RngStream& rng) {
  if (steps <= burn_in) throw std::invalid_argument("metropolis_weyl: steps must exceed burn-in");
  return metropolisweyl_impl(group, steps, burn_in, thin, rng);
}

std::optional<double> ds_trace_moment(const std::map<int, int>& a, const std::map<int, int>& b,
                                      int n) {
  long deg_a = 0, deg_b = 0;
  for (const auto& [k, ak] : a) {
    if (k <= 0 || ak < 0) throw std::invalid_argument("ds_trace_moment: bad exponent vector");
    deg_a += static_cast<long>(k) * ak;
  }
  for (const auto& [k, bk] : b) {
    if (k <= 0 || bk < 0) throw std::invalid_argument("ds_trace_moment: bad exponent vector");
    deg_b += static_cast<long>(k) * bk;
  }
  if (std::max(deg_a, deg_b) > n) return std::nullopt;

  double value = 1.0;
  for (const auto& [k, ak] : a) {
    const auto it = b.find(k);
    const int bk = (it == b.end()) ? 0 : it->second;
    if (ak != bk) return 0.0;
    for (int i = 1; i <= ak; ++i) value *= static_cast<double>(k) * i;  // k^{a_k} a_k!
  }
  for (const auto& [k, bk] : b) {
    if (bk != 0 && a.find(k) == a.end()) return 0.0;
  }
  return value;
}

}  // namespace rmtlab
