#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "maxvol/dense_matrix.hpp"
#include "maxvol/error.hpp"

namespace maxvol {

/// Relative rank tolerance: residuals below this times the largest column
/// norm count as exact linear dependence.
inline constexpr double kRankTolerance = 1e-12;

/// Volume of a column set, kept in linear and log2 scale. `residual_norms`
/// holds the distance of each column to the span of the ones before it.
struct VolumeResult {
  double volume = 1.0;
  double log2_volume = 0.0;  // -inf when volume is 0
  std::vector<double> residual_norms;

  bool is_zero() const noexcept { return volume == 0.0; }
};

namespace detail {

/// Incrementally built orthonormal basis. Every insertion runs modified
/// Gram-Schmidt twice against the current basis.
class OrthoBasis {
 public:
  explicit OrthoBasis(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return basis_.size() / (dim_ ? dim_ : 1); }

  /// Residual of `v` after projecting out the basis, written into `out`.
  void residual(std::span<const double> v, std::vector<double>& out) const {
    out.assign(v.begin(), v.end());
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t b = 0; b < size(); ++b) {
        std::span<const double> q(basis_.data() + b * dim_, dim_);
        const double c = dot(q, out);
        for (std::size_t i = 0; i < dim_; ++i) out[i] -= c * q[i];
      }
    }
  }

  double distance(std::span<const double> v) const {
    residual(v, scratch_);
    return norm2(scratch_);
  }

  /// Adds `v`; returns its residual norm. A residual at or below `tol` is
  /// reported as exactly 0 and the basis is left unchanged.
  double add(std::span<const double> v, double tol) {
    residual(v, scratch_);
    const double r = norm2(scratch_);
    if (r <= tol) return 0.0;
    for (double x : scratch_) basis_.push_back(x / r);
    return r;
  }

 private:
  std::size_t dim_;
  std::vector<double> basis_;
  mutable std::vector<double> scratch_;
};

inline double max_column_norm(const DenseMatrix& a, std::span<const std::size_t> idx) {
  double m = 0.0;
  for (std::size_t c : idx) m = std::max(m, norm2(a.column(c)));
  return m;
}

}  // namespace detail

/// Volume of the columns `order` of `a`, processed in exactly that order.
/// An empty order has volume 1.
inline VolumeResult volume_in_order(const DenseMatrix& a, std::span<const std::size_t> order) {
  for (std::size_t c : order)
    if (c >= a.cols())
      throw InvalidArgument("volume: column index " + std::to_string(c) + " out of range");
  VolumeResult res;
  res.residual_norms.reserve(order.size());
  const double tol = kRankTolerance * detail::max_column_norm(a, order);
  detail::OrthoBasis basis(a.rows());
  bool zero = false;
  for (std::size_t c : order) {
    const double r = basis.add(a.column(c), tol);
    res.residual_norms.push_back(r);
    if (r == 0.0) {
      zero = true;
    } else {
      res.volume *= r;
      res.log2_volume += std::log2(r);
    }
  }
  if (zero) {
    res.volume = 0.0;
    res.log2_volume = -std::numeric_limits<double>::infinity();
  }
  return res;
}

/// Volume of the selected columns, taken in ascending index order.
inline VolumeResult volume(const DenseMatrix& a, const ColumnSelection& s) {
  s.validate_for(a);
  return volume_in_order(a, s.indices());
}

/// Distance from `q` to the span of the columns `p` of `a` (empty `p` gives ||q||).
inline double projection_distance(std::span<const double> q, const DenseMatrix& a,
                                  const ColumnSelection& p) {
  if (q.size() != a.rows())
    throw InvalidArgument("projection_distance: vector has dimension " + std::to_string(q.size()) +
                          ", matrix has " + std::to_string(a.rows()) + " rows");
  p.validate_for(a);
  const double tol = kRankTolerance * detail::max_column_norm(a, p.indices());
  detail::OrthoBasis basis(a.rows());
  for (std::size_t c : p) basis.add(a.column(c), tol);
  return basis.distance(q);
}

/// Distance from `q` to the span of all columns of `p`.
inline double projection_distance(std::span<const double> q, const DenseMatrix& p) {
  std::vector<std::size_t> all(p.cols());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return projection_distance(q, p, ColumnSelection(std::move(all)));
}

}  // namespace maxvol
