#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "rmtlab/complex_linalg.hpp"
#include "rmtlab/ensembles.hpp"
#include "rmtlab/quadrature.hpp"

namespace rmtlab {

struct PoleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegeneracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One Fisher-Hartwig singularity |z - e^{i theta}|^{2 alpha} with jump
/// exponent beta = i * beta_im.
struct Singularity {
  double theta = 0.0;
  double alpha = 0.0;
  double beta_im = 0.0;
};

/// Symbol with a fixed number of Fisher-Hartwig singularities:
///   f(z) = e^{V(z)} z^{sum beta_j} prod_j |z-z_j|^{2 alpha_j}
///          g_{z_j,beta_j}(z) z_j^{-beta_j}.
class FHSymbol {
 public:
  FHSymbol() = default;
  FHSymbol(std::map<long, cdouble> v, std::vector<Singularity> singularities);

  static FHSymbol trivial() { return FHSymbol(); }
  static FHSymbol from_json(const std::string& text);
  std::string to_json() const;

  const std::map<long, cdouble>& v() const { return v_; }
  const std::vector<Singularity>& singularities() const { return sing_; }

  cdouble v_at(long k) const;
  cdouble v_eval(double theta) const;  // V(e^{i theta})
  bool is_even(double tol = 1e-12) const;
  bool is_real(double tol = 1e-12) const;

  /// Pointwise evaluation. Throws PoleError exactly at a singularity with
  /// alpha <= 0 (alpha < 0 diverges; alpha = 0 keeps the jump convention).
  cdouble eval(double theta) const;

  /// Adds delta_alpha at the given angle, merging with an existing
  /// singularity when present.
  FHSymbol with_extra_alpha(double theta, double delta_alpha) const;

  /// Cached Fourier coefficient f_j.
  cdouble coefficient(long j, const QuadratureSpec& spec) const;

  std::vector<double> singular_angles() const;

 private:
  std::map<long, cdouble> v_;
  std::vector<Singularity> sing_;
  mutable std::map<long, cdouble> cache_;
  mutable std::mutex cache_mutex_;
};

struct DetReport {
  int n = 0;
  int kappa = 0;  // 0 = Toeplitz, 1..4 = Toeplitz+Hankel kernels
  cdouble value;
  double condition_estimate = 0.0;  // |pivot|_max / |pivot|_min from the LU
};

/// Arbitrary circle function with known singular angles, coefficient-cached.
class CircleFunction {
 public:
  CircleFunction(std::function<cdouble(double)> eval, std::vector<double> singular_angles);
  cdouble operator()(double theta) const { return eval_(theta); }
  cdouble coefficient(long j, const QuadratureSpec& spec) const;
  const std::vector<double>& singular_angles() const { return singular_; }

 private:
  std::function<cdouble(double)> eval_;
  std::vector<double> singular_;
  mutable std::map<long, cdouble> cache_;
  mutable std::mutex cache_mutex_;
};

DetReport toeplitz_det(const FHSymbol& sym, int n, const QuadratureSpec& spec);
DetReport th_det(const FHSymbol& sym, int n, int kappa, const QuadratureSpec& spec);
DetReport toeplitz_det(const CircleFunction& f, int n, const QuadratureSpec& spec);
DetReport th_det(const CircleFunction& f, int n, int kappa, const QuadratureSpec& spec);

struct HeineSzegoReport {
  cdouble mc_estimate;
  double se = 0.0;  // standard error of the real part
  cdouble determinant;
  double z_score = 0.0;  // (Re mc - Re det) / se
};

/// Monte Carlo E det f(U) over Haar U(n) against the Toeplitz determinant.
HeineSzegoReport heine_szego_check(const FHSymbol& sym, int n, int samples, RngStream& rng,
                                   const QuadratureSpec& spec);

/// E_{G}(det h(U)) through the Toeplitz+Hankel identities applied to
/// iota(e^{i theta}) = h(e^{i theta}) h(e^{-i theta}). U(n) falls back to
/// the Heine-Szego identity; O(n) averages the two components.
cdouble baik_rains_expectation(const Group& group, const FHSymbol& h, const QuadratureSpec& spec);

struct OrthopolyConnectionReport {
  double residual[4] = {0, 0, 0, 0};  // relative residual per kappa identity
  cdouble phi0[4], phi_plus[4], phi_minus[4];
};

/// Residuals of the four Toeplitz+Hankel <-> Toeplitz identities through the
/// monic orthogonal polynomials of the matching modified weights, evaluated
/// by a direct linear solve of the moment systems.
OrthopolyConnectionReport orthopoly_connection_check(const FHSymbol& sym, int n,
                                                     const QuadratureSpec& spec);

}  // namespace rmtlab
