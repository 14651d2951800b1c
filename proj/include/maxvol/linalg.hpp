#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "maxvol/dense_matrix.hpp"
#include "maxvol/error.hpp"

namespace maxvol {

/// Sweep limit for the Jacobi SVD.
inline constexpr int kJacobiMaxSweeps = 100;

/// All min(m, n) singular values in nonincreasing order, by one-sided
/// (Hestenes) Jacobi rotations on the columns. Throws ConvergenceError if
/// the columns are not mutually orthogonal to 1e-15 relative after
/// kJacobiMaxSweeps sweeps.
inline std::vector<double> singular_values(const DenseMatrix& input) {
  DenseMatrix a = input.rows() >= input.cols() ? input : input.transpose();
  const std::size_t m = a.rows(), n = a.cols();
  constexpr double eps = 1e-15;

  bool converged = n < 2;
  for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        auto cp = a.column(p);
        auto cq = a.column(q);
        const double alpha = dot(cp, cp);
        const double beta = dot(cq, cq);
        const double gamma = dot(cp, cq);
        if (gamma == 0.0 || std::fabs(gamma) <= eps * std::sqrt(alpha * beta)) continue;
        converged = false;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double x = cp[i], y = cq[i];
          cp[i] = c * x - s * y;
          cq[i] = s * x + c * y;
        }
      }
    }
  }
  if (!converged)
    throw ConvergenceError("singular_values: Jacobi sweeps did not converge");

  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) sv[j] = norm2(a.column(j));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

/// Upper-triangular factor R (n x n, for m >= n) of the Householder QR
/// factorization A = QR. Diagonal signs follow the reflector convention and
/// are not normalized.
inline DenseMatrix qr_r_factor(const DenseMatrix& input) {
  if (input.rows() < input.cols())
    throw InvalidArgument("qr_r_factor: needs rows >= cols");
  DenseMatrix a = input;
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<double> v(m);
  for (std::size_t k = 0; k < n; ++k) {
    double alpha = 0.0;
    {
      std::span<const double> tail(a.column(k).data() + k, m - k);
      alpha = norm2(tail);
    }
    if (alpha == 0.0) continue;
    const double x0 = a(k, k);
    if (x0 > 0) alpha = -alpha;
    // v = x - alpha e1 over rows k..m-1
    for (std::size_t i = k; i < m; ++i) v[i] = a(i, k);
    v[k] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < m; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 == 0.0) continue;
    for (std::size_t j = k; j < n; ++j) {
      auto col = a.column(j);
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += v[i] * col[i];
      s = 2.0 * s / vnorm2;
      for (std::size_t i = k; i < m; ++i) col[i] -= s * v[i];
    }
    for (std::size_t i = k + 1; i < m; ++i) a.column(k)[i] = 0.0;
  }
  DenseMatrix r(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i <= j; ++i) r.set(i, j, a(i, j));
  return r;
}

/// Contiguous block [r0, r0+nr) x [c0, c0+nc).
inline DenseMatrix block(const DenseMatrix& a, std::size_t r0, std::size_t c0, std::size_t nr,
                         std::size_t nc) {
  if (r0 + nr > a.rows() || c0 + nc > a.cols()) throw InvalidArgument("block: out of range");
  DenseMatrix b(nr, nc);
  for (std::size_t j = 0; j < nc; ++j)
    for (std::size_t i = 0; i < nr; ++i) b.set(i, j, a(r0 + i, c0 + j));
  return b;
}

/// Rows `ri` and columns `ci` of `a`, in the given orders.
inline DenseMatrix submatrix(const DenseMatrix& a, std::span<const std::size_t> ri,
                             std::span<const std::size_t> ci) {
  DenseMatrix b(ri.size(), ci.size());
  for (std::size_t j = 0; j < ci.size(); ++j)
    for (std::size_t i = 0; i < ri.size(); ++i) b.set(i, j, a(ri[i], ci[j]));
  return b;
}

/// LU factorization with partial pivoting of a square matrix.
class LuDecomposition {
 public:
  explicit LuDecomposition(const DenseMatrix& a) : lu_(a), perm_(a.rows()) {
    if (a.rows() != a.cols()) throw InvalidArgument("LU: matrix must be square");
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t piv = k;
      for (std::size_t i = k + 1; i < n; ++i)
        if (std::fabs(lu_(i, k)) > std::fabs(lu_(piv, k))) piv = i;
      if (piv != k) {
        for (std::size_t j = 0; j < n; ++j) {
          const double t = lu_(k, j);
          lu_.set(k, j, lu_(piv, j));
          lu_.set(piv, j, t);
        }
        std::swap(perm_[k], perm_[piv]);
        sign_ = -sign_;
      }
      const double d = lu_(k, k);
      if (d == 0.0) {
        singular_ = true;
        continue;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        const double f = lu_(i, k) / d;
        lu_.set(i, k, f);
        for (std::size_t j = k + 1; j < n; ++j) lu_.set(i, j, lu_(i, j) - f * lu_(k, j));
      }
    }
  }

  double determinant() const {
    if (singular_) return 0.0;
    double d = sign_;
    for (std::size_t i = 0; i < lu_.rows(); ++i) d *= lu_(i, i);
    return d;
  }

  bool singular() const noexcept { return singular_; }

  /// Solves A X = B column by column.
  DenseMatrix solve(const DenseMatrix& b) const {
    if (singular_) throw InvalidArgument("LU: singular matrix");
    const std::size_t n = lu_.rows();
    if (b.rows() != n) throw InvalidArgument("LU: right-hand side dimension mismatch");
    DenseMatrix x(n, b.cols());
    std::vector<double> y(n);
    for (std::size_t c = 0; c < b.cols(); ++c) {
      for (std::size_t i = 0; i < n; ++i) {
        double s = b(perm_[i], c);
        for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * y[j];
        y[i] = s;
      }
      for (std::size_t ii = n; ii-- > 0;) {
        double s = y[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= lu_(ii, j) * x(j, c);
        x.set(ii, c, s / lu_(ii, ii));
      }
    }
    return x;
  }

 private:
  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
  double sign_ = 1.0;
  bool singular_ = false;
};

inline double determinant(const DenseMatrix& a) { return LuDecomposition(a).determinant(); }

/// Matrix product.
inline DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("multiply: dimension mismatch");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double bkj = b(k, j);
      if (bkj == 0.0) continue;
      auto cj = c.column(j);
      auto ak = a.column(k);
      for (std::size_t i = 0; i < a.rows(); ++i) cj[i] += ak[i] * bkj;
    }
  return c;
}

/// Largest absolute entry.
inline double max_abs_entry(const DenseMatrix& a) {
  double m = 0.0;
  for (double v : a.values()) m = std::max(m, std::fabs(v));
  return m;
}

}  // namespace maxvol
