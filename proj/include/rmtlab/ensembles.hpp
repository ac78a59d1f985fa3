#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rmtlab/complex_linalg.hpp"
#include "rmtlab/rng.hpp"

namespace rmtlab {

enum class GroupKind { U, SO, SOminus, O, Sp };

/// One of the classical compact groups. For Sp the matrix is 2n x 2n.
struct Group {
  GroupKind kind = GroupKind::U;
  int n = 1;  // matrix size parameter; for Sp(2n) this is n

  int matrix_size() const { return kind == GroupKind::Sp ? 2 * n : n; }
  std::string name() const;
  static Group parse(const std::string& name);  // e.g. "U", "SO", "SOminus", "O", "Sp"
};

/// Eigenangle data of one Haar sample. For U the nontrivial angles are the
/// full spectrum in [0, 2*pi); for the other groups they lie in [0, pi] and
/// the spectrum is completed by conjugates and the listed fixed eigenvalues.
struct EnsembleSample {
  Group group;                        // resolved group (O never appears here)
  std::vector<double> angles;        // sorted nontrivial eigenangles
  int fixed_plus_one = 0;            // multiplicity of eigenvalue +1
  int fixed_minus_one = 0;           // multiplicity of eigenvalue -1

  /// Full spectrum in [0, 2*pi), conjugates and fixed eigenvalues included.
  std::vector<double> full_spectrum() const;
  /// Tr(U^k) from the full spectrum.
  cdouble trace_power(long k) const;
};

/// Haar-distributed matrix from the group (QR of Ginibre with the R-phase
/// correction; determinant sign forced for SO / SOminus; Sp built through the
/// 2n x 2n complex quaternionic embedding).
ComplexMatrix haar_matrix(const Group& group, RngStream& rng);

/// Haar sample with eigenangles extracted and fixed-eigenvalue bookkeeping.
EnsembleSample sample(const Group& group, RngStream& rng);

/// Joint eigenangle density of the nontrivial angles, normalization included.
double weyl_density(const Group& group, const std::vector<double>& angles);
double log_weyl_density_unnormalized(const Group& group, const std::vector<double>& angles);

struct MetropolisResult {
  std::vector<EnsembleSample> samples;
  double acceptance_rate = 0.0;
};

/// Metropolis chain targeting the Weyl density: single-coordinate Gaussian
/// proposals of width pi/sqrt(n), reflected at the domain edges.
MetropolisResult metropolis_weyl(const Group& group, int steps, int burn_in, int thin,
                                 RngStream& rng);

/// Exact mixed trace moment E prod_k Tr(U^k)^{a_k} conj(Tr(U^k))^{b_k} over
/// U(n), valid when max(sum k a_k, sum k b_k) <= n; nullopt outside that
/// regime (caller falls back to Monte Carlo).
std::optional<double> ds_trace_moment(const std::map<int, int>& a, const std::map<int, int>& b,
                                      int n);

}  // namespace rmtlab
