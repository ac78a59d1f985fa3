#pragma once

#include <complex>
#include <vector>

#include "rmtlab/errors.hpp"

namespace rmtlab {

using cdouble = std::complex<double>;

/// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cdouble& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cdouble& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  ComplexMatrix adjoint() const;

  cdouble trace() const;
  double max_abs() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cdouble> data_;
};

/// Determinant by partial-pivot LU. Pivot products are accumulated in
/// extended precision; exact for triangular inputs.
cdouble lu_determinant(const ComplexMatrix& m);

/// Solves A x = b in place by partial-pivot LU. Throws NumericalError on a
/// (numerically) singular system.
std::vector<cdouble> lu_solve(const ComplexMatrix& a, const std::vector<cdouble>& b);

/// Eigenvalue phases of a unitary matrix, sorted ascending in [0, 2*pi).
/// Hessenberg reduction followed by shifted QR with deflation. Rejects inputs
/// with ||U*U - I||_max > tol.
std::vector<double> eigenangles_unitary(const ComplexMatrix& u, double tol = 1e-8);

/// Eigenvalues of a general complex matrix (unsorted), via the same
/// Hessenberg + shifted-QR path as eigenangles_unitary.
std::vector<cdouble> eigenvalues(const ComplexMatrix& m);

}  // namespace rmtlab
