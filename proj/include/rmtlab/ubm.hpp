#pragma once

#include <array>
#include <vector>

#include "rmtlab/ensembles.hpp"

namespace rmtlab {

struct StepError : std::runtime_error {
  std::vector<double> state;
  StepError(const std::string& what, std::vector<double> s)
      : std::runtime_error(what), state(std::move(s)) {}
};

/// Time-discretized eigenangle trajectories of unitary Brownian motion,
/// strictly ordered in j at every stored time (unwrapped angles).
struct DysonPath {
  int n = 0;
  std::vector<double> times;
  std::vector<std::vector<double>> angles;  // angles[i][j] = theta_j(t_i)

  cdouble trace_power(std::size_t time_index, long k) const;
};

/// Euler-Maruyama for the Dyson eigenangle SDE
///   d theta_j = (1/n) sum_k cot((theta_j - theta_k)/2) dt + sqrt(2/n) dB,
/// with recursive step halving (cap 20) whenever a neighbor gap would fall
/// below sqrt(dt)/n. Initial slice drawn from Haar.
DysonPath dyson_simulate(int n, double T, double dt, RngStream& rng);

/// E Tr(U_t^k) conj(Tr(U_0^k)) = e^{-k (k v n) t / n} sinh(k (k ^ n) t / n)
/// / sinh(k t / n), continuous across t = 0 and k = n.
double two_time_cov(int n, int k, double t);

/// Ornstein-Uhlenbeck Fourier coefficients A_k(t), exact Gaussian transitions
/// (stationary start, mean e^{-k dt} A, per-component variance
/// (1 - e^{-2 k dt})/(2k)).
struct OUFieldPath {
  int k_max = 0;
  std::vector<double> times;
  std::vector<std::vector<cdouble>> coefficients;  // [time][k-1]
};

OUFieldPath ou_simulate(int k_max, double T, double dt, RngStream& rng);

/// Field on a time grid with Fourier-mode access: modes[time][k-1] is the
/// coefficient of e^{-ik theta} for k = 1..k_max (log p convention).
struct FourierFieldPath {
  std::vector<double> times;
  std::vector<std::vector<cdouble>> modes;
};

FourierFieldPath log_charpoly_modes(const DysonPath& path, int k_max);

/// Discretized tensor Sobolev norm ||F||^2_{s,-eps}: time integral of the
/// angle norm plus (s != 0) the Slobodeckij double integral, the diagonal
/// band |t-u| < 2 dt estimated from nearest-neighbor increments.
double sobolev_norm_squared(const FourierFieldPath& field, double s, double eps);

/// Pairings of {1..2j}, their lift, the fixed pairing rho, and the orbit
/// decomposition of the even indices under pi~ rho.
struct PairingSystem {
  int j = 0;
  std::vector<std::vector<int>> pairings;           // each as image array pi[i]
  std::vector<int> rho;                             // image array on 1..4j
  std::vector<std::vector<std::vector<int>>> orbits;  // per pairing: orbits over even indices
};

PairingSystem enumerate_pairings(int j);

/// Exponent assigned to even slot w (= 2 l): sigma_l, -sigma_j, -sigma_{l-j-1}.
long wick_exponent(const std::vector<long>& sigma, int w);

struct WickReport {
  double exact = 0.0;
  bool exact_is_ds = true;  // false when the DS hypothesis failed and the
                            // right side was evaluated by Haar Monte Carlo
  double mc = 0.0;
  double se = 0.0;
};

/// Right side of the pairing identity: sum over pairings of
/// E prod_orbits Tr(U^{sum s_hat}), evaluated by the exact trace moments
/// (Tr U^0 = n), with a Haar-MC fallback outside the exact regime.
double wick_rhs(const std::vector<long>& sigma, int n, RngStream* fallback_rng = nullptr,
                int fallback_samples = 4000, bool* used_fallback = nullptr);

/// Brute force of E |Tr(H U^{s1} H U^{s2} ...)|^2 over GUE x Haar samples.
WickReport wick_mc(const std::vector<long>& sigma, int n, int samples, RngStream& rng);

/// xi_n(t, f) = sum_k f_k Tr(U_t^k) for finitely supported coefficients
/// (f_0 must vanish); pairs (k, f_k).
cdouble spohn_linear_statistic(const DysonPath& path, const std::vector<std::pair<long, cdouble>>& f,
                               std::size_t time_index);

}  // namespace rmtlab
