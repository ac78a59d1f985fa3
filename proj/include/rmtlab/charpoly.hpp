#pragma once

#include <vector>

#include "rmtlab/ensembles.hpp"

namespace rmtlab {

/// Im log(1 - e^{i(phi - theta)}) on the principal branch with
/// Im log 0 := pi/2; both arguments in [0, 2*pi).
double im_log_factor(double phi, double theta);

/// log p(theta) = sum_k log(1 - e^{i(theta_k - theta)}) over the full
/// spectrum, fixed eigenvalues included. Re part is -inf on the spectrum.
cdouble log_charpoly(const EnsembleSample& sample, double theta);

/// Truncated field f^{(k)}(theta) = exp(-sum_{j<=k} Tr(U^j)/j
/// (2 alpha cos j theta - 2i beta sin j theta)); beta passed as Im(beta).
/// Matches the full field for self-conjugate spectra.
cdouble truncated_field(const EnsembleSample& sample, double theta, int k, double alpha,
                        double beta_im);

/// Complex field values on a (time x) angle grid with Fourier-mode access.
struct FieldGrid {
  std::vector<double> thetas;
  std::vector<cdouble> values;
  std::vector<bool> infinite;  // flags grid points on the spectrum with alpha < 0

  cdouble fourier_coefficient(long k) const;  // trapezoid on the stored grid
};

/// f_{n,alpha,beta}(theta) = |p|^{2 alpha} e^{2i beta Im log p} on the grid;
/// O(n |grid|) from the eigenangles. Requires alpha > -1/2.
FieldGrid field_on_grid(const EnsembleSample& sample, const std::vector<double>& grid, double alpha,
                        double beta_im);

/// Single-point field value; +inf is flagged through the grid variant.
double field_value(const EnsembleSample& sample, double theta, double alpha, double beta_im);

}  // namespace rmtlab
