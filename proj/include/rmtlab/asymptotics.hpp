#pragma once

#include <string>
#include <vector>

#include "rmtlab/detkit.hpp"
#include "rmtlab/painleve.hpp"

namespace rmtlab {

struct RegimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Regime { szego, separated, merging, envelope };

struct AsymptoticPrediction {
  cdouble log_value;
  Regime regime = Regime::szego;
  int n = 0;
  int kappa = 0;
};

/// Even-symbol data extracted from a generic FHSymbol: alpha exponents at
/// +1 and -1 plus interior singularities with angles in (0, pi).
struct EvenSymbolView {
  double alpha0 = 0.0;                 // at z = 1
  double alpha_pi = 0.0;               // at z = -1
  std::vector<Singularity> interior;   // theta in (0, pi), ordered
  const FHSymbol* symbol = nullptr;

  static EvenSymbolView from(const FHSymbol& sym);
  cdouble v_plus(double theta) const;   // sum_{k>=1} V_k z^k at e^{i theta}
  cdouble v_minus(double theta) const;  // sum_{k>=1} V_{-k} conj(z)^k
};

/// Strong Szego limit: n V_0 + sum_{k>=1} k V_k V_{-k}. Symbols with
/// singularities are out of regime.
AsymptoticPrediction szego(const FHSymbol& sym, int n);

/// Full fixed-singularity Toeplitz expansion (V cross terms, pairwise
/// distances, arg terms, Barnes constants). Requires pairwise separation
/// of at least min_separation in chordal distance.
AsymptoticPrediction ehrhardt(const FHSymbol& sym, int n, double min_separation = 1e-3);

/// Fixed-singularity Toeplitz+Hankel expansion for even symbols with the
/// (q, s', t') table for kappa = 1..4.
AsymptoticPrediction dik_th(const FHSymbol& sym, int n, int kappa,
                            double min_separation = 1e-3);

/// Parameters of the two-conjugate-pair merging symbol f_{p,t}: exponents at
/// +1, e^{i(p -/+ t)} and -1; beta_j = i b_j.
struct MergingSymbolParams {
  double alpha0 = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double alpha3 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
};

/// The symbol f_{p,t} itself, for finite-n cross checks.
FHSymbol merging_symbol(double p, double t, const MergingSymbolParams& params,
                        const std::map<long, cdouble>& v);

/// Uniform (merging-regime) expansion of log D_n(f_{p,t}); the Painleve
/// solution must carry the (alpha1, alpha2, b1, b2) of the merging pair and
/// tabulate at least to 2 n t.
AsymptoticPrediction uniform_toeplitz(double p, double t, const MergingSymbolParams& params,
                                      const std::map<long, cdouble>& v, int n,
                                      const PainleveSolution& painleve);

/// Uniform expansion of log D_n^{T+H,kappa}(f_{p,t}); needs tabulation to 4 n t.
AsymptoticPrediction uniform_th(double p, double t, const MergingSymbolParams& params,
                                const std::map<long, cdouble>& v, int n, int kappa,
                                const PainleveSolution& painleve);

/// Log of the algebraic envelope of D_n^{T+H,kappa} that is uniform over the
/// whole merging region (no multiplicative constant). Interior singularities
/// only; requires alpha_j >= 0.
AsymptoticPrediction claeys_envelope(const std::vector<Singularity>& interior, double v0, int n,
                                     int kappa);

/// The large-nt side of the relation between the uniform and separated
/// expansions: value that 2 sum_j log G-factors - 2 i pi (a1 b2 - a2 b1)
/// must match as nt grows. Real-valued for beta in iR.
double relation_rhs(const MergingSymbolParams& params, double nt, const PainleveSolution& painleve);
double relation_lhs(const MergingSymbolParams& params);

}  // namespace rmtlab
