#include "rmtlab/complex_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rmtlab {

namespace {
using cldouble = std::complex<long double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw DimensionError("matrix product: inner dimensions differ");
  ComplexMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const cdouble a = (*this)(i, k);
      if (a == cdouble{}) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

cdouble ComplexMatrix::trace() const {
  if (rows_ != cols_) throw DimensionError("trace of non-square matrix");
  cdouble t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

cdouble lu_determinant(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag()))
        throw PreconditionError("determinant of matrix with non-finite entries");

  int sign = 1;
  cldouble det = 1.0L;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      sign = -sign;
    }
    det *= cldouble(a(k, k));
    const cdouble inv = 1.0 / a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cdouble f = a(i, k) * inv;
      if (f == cdouble{}) continue;
      a(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  det *= static_cast<long double>(sign);
  return {static_cast<double>(det.real()), static_cast<double>(det.imag())};
}

std::vector<cdouble> lu_solve(const ComplexMatrix& m, const std::vector<cdouble>& rhs) {
  if (m.rows() != m.cols()) throw DimensionError("lu_solve: non-square matrix");
  const std::size_t n = m.rows();
  if (rhs.size() != n) throw DimensionError("lu_solve: rhs size mismatch");
  ComplexMatrix a = m;
  std::vector<cdouble> b = rhs;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) throw NumericalError("lu_solve: singular matrix");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(b[k], b[piv]);
    }
    const cdouble inv = 1.0 / a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cdouble f = a(i, k) * inv;
      if (f == cdouble{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    cdouble s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * b[j];
    b[i] = s / a(i, i);
  }
  return b;
}

namespace {

// Householder reduction to upper Hessenberg form, in place.
void hessenberg(ComplexMatrix& a) {
  const std::size_t n = a.rows();
  if (n < 3) return;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double scale = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) scale += std::abs(a(i, k));
    if (scale == 0.0) continue;

    std::vector<cdouble> v(n - k - 1);
    double norm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i - k - 1] = a(i, k) / scale;
      norm2 += std::norm(v[i - k - 1]);
    }
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) continue;
    cdouble alpha = v[0];
    const double aabs = std::abs(alpha);
    const cdouble phase = (aabs == 0.0) ? cdouble(1.0) : alpha / aabs;
    const cdouble sigma = phase * norm;
    v[0] += sigma;
    double vnorm2 = 0.0;
    for (const auto& z : v) vnorm2 += std::norm(z);
    if (vnorm2 == 0.0) continue;

    // Apply P = I - 2 v v^* / |v|^2 from both sides.
    for (std::size_t j = k; j < n; ++j) {
      cdouble s = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i - k - 1]) * a(i, j);
      s *= 2.0 / vnorm2;
      for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= s * v[i - k - 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
      cdouble s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j - k - 1];
      s *= 2.0 / vnorm2;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= s * std::conj(v[j - k - 1]);
    }
    a(k + 1, k) = -sigma * scale;
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

// Wilkinson shift: eigenvalue of the trailing 2x2 block closest to its
// bottom-right entry.
cdouble wilkinson_shift(const ComplexMatrix& h, std::size_t m) {
  const cdouble a = h(m - 1, m - 1), b = h(m - 1, m), c = h(m, m - 1), d = h(m, m);
  const cdouble tr = a + d;
  const cdouble disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
  const cdouble l1 = 0.5 * (tr + disc), l2 = 0.5 * (tr - disc);
  return (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
}

// Shifted QR iteration on an upper Hessenberg matrix via Givens rotations.
// Returns the eigenvalues (diagonal after full deflation).
std::vector<cdouble> hessenberg_qr_eigenvalues(ComplexMatrix h) {
  const std::size_t n = h.rows();
  std::vector<cdouble> eig(n);
  if (n == 0) return eig;
  const double hnorm = std::max(h.max_abs(), 1e-300);
  const double defl = 1e-12 * hnorm;

  std::size_t hi = n - 1;
  std::size_t iter_total = 0;
  const std::size_t iter_cap = 60 * n + 200;
  while (true) {
    // Deflate converged trailing entries.
    while (hi > 0 && std::abs(h(hi, hi - 1)) <= defl) {
      h(hi, hi - 1) = 0.0;
      eig[hi] = h(hi, hi);
      --hi;
    }
    if (hi == 0) {
      eig[0] = h(0, 0);
      break;
    }
    if (++iter_total > iter_cap)
      throw NumericalError("eigenangles_unitary: QR iteration did not converge");

    // Active block [lo, hi].
    std::size_t lo = hi;
    while (lo > 0 && std::abs(h(lo, lo - 1)) > defl) --lo;

    cdouble shift = wilkinson_shift(h, hi);
    // Exceptional shift every so often to break symmetry stalls.
    if (iter_total % 37 == 0) shift += 0.5 * std::abs(h(hi, hi - 1));

    for (std::size_t i = lo; i <= hi; ++i) h(i, i) -= shift;

    // QR step via Givens: zero the subdiagonal, then multiply back on right.
    std::vector<cdouble> cs(hi - lo + 1), sn(hi - lo + 1);
    for (std::size_t k = lo; k < hi; ++k) {
      const cdouble x = h(k, k), y = h(k + 1, k);
      const double r = std::hypot(std::abs(x), std::abs(y));
      cdouble c, s;
      if (r == 0.0) {
        c = 1.0;
        s = 0.0;
      } else {
        c = x / r;
        s = y / r;
      }
      cs[k - lo] = c;
      sn[k - lo] = s;
      for (std::size_t j = k; j <= hi; ++j) {
        const cdouble t1 = h(k, j), t2 = h(k + 1, j);
        h(k, j) = std::conj(c) * t1 + std::conj(s) * t2;
        h(k + 1, j) = -s * t1 + c * t2;
      }
    }
    for (std::size_t k = lo; k < hi; ++k) {
      const cdouble c = cs[k - lo], s = sn[k - lo];
      const std::size_t top = lo;
      for (std::size_t i = top; i <= std::min(k + 2, hi); ++i) {
        const cdouble t1 = h(i, k), t2 = h(i, k + 1);
        h(i, k) = t1 * c + t2 * s;
        h(i, k + 1) = -t1 * std::conj(s) + t2 * std::conj(c);
      }
    }
    for (std::size_t i = lo; i <= hi; ++i) h(i, i) += shift;
  }
  return eig;
}

}  // namespace

std::vector<cdouble> eigenvalues(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("eigenvalues of non-square matrix");
  ComplexMatrix h = m;
  hessenberg(h);
  return hessenberg_qr_eigenvalues(std::move(h));
}

std::vector<double> eigenangles_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) throw DimensionError("eigenangles of non-square matrix");
  const std::size_t n = u.rows();

  ComplexMatrix g = u.adjoint() * u;
  for (std::size_t i = 0; i < n; ++i) g(i, i) -= 1.0;
  if (g.max_abs() > tol) throw PreconditionError("eigenangles_unitary: input is not unitary within tol");

  const std::vector<cdouble> eig = eigenvalues(u);
  std::vector<double> angles(n);
  for (std::size_t i = 0; i < n; ++i) {
    double a = std::arg(eig[i]);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a -= kTwoPi;
    angles[i] = a;
  }
  std::sort(angles.begin(), angles.end());

  cdouble prod = 1.0, det = lu_determinant(u);
  for (double a : angles) prod *= cdouble(std::cos(a), std::sin(a));
  if (std::abs(prod - det) > std::max(1e3 * tol, 1e-7) * std::max(1.0, std::abs(det)))
    throw NumericalError("eigenangles_unitary: eigenvalue product disagrees with determinant");
  return angles;
}

}  // namespace rmtlab
