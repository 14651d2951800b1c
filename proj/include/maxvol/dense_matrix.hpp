#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "maxvol/error.hpp"

namespace maxvol {

/// Real m x n matrix stored column-major. Each column is one vector of the
/// universe the selection problems choose from.
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {
    if (rows == 0 || cols == 0)
      throw InvalidArgument("DenseMatrix: rows and cols must be positive");
  }

  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
      : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (rows == 0 || cols == 0)
      throw InvalidArgument("DenseMatrix: rows and cols must be positive");
    if (values_.size() != rows * cols)
      throw InvalidArgument("DenseMatrix: value count does not match shape");
    for (double v : values_)
      if (!std::isfinite(v)) throw InvalidArgument("DenseMatrix: non-finite entry");
  }

  /// Builds a matrix from a list of equally sized column vectors.
  static DenseMatrix from_columns(const std::vector<std::vector<double>>& columns) {
    if (columns.empty()) throw InvalidArgument("DenseMatrix: no columns");
    const std::size_t m = columns.front().size();
    std::vector<double> values;
    values.reserve(m * columns.size());
    for (const auto& c : columns) {
      if (c.size() != m) throw InvalidArgument("DenseMatrix: ragged columns");
      values.insert(values.end(), c.begin(), c.end());
    }
    return DenseMatrix(m, columns.size(), std::move(values));
  }

  /// Row-major nested list, convenient for literals in tests.
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t m = rows.size();
    if (m == 0) throw InvalidArgument("DenseMatrix: no rows");
    const std::size_t n = rows.begin()->size();
    DenseMatrix a(m, n);
    std::size_t i = 0;
    for (const auto& r : rows) {
      if (r.size() != n) throw InvalidArgument("DenseMatrix: ragged rows");
      std::size_t j = 0;
      for (double v : r) a.set(i, j++, v);
      ++i;
    }
    return a;
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) a.set(i, i, 1.0);
    return a;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return values_.size(); }

  double operator()(std::size_t r, std::size_t c) const { return values_[c * rows_ + r]; }

  void set(std::size_t r, std::size_t c, double v) {
    if (!std::isfinite(v)) throw InvalidArgument("DenseMatrix: non-finite entry");
    values_[c * rows_ + r] = v;
  }

  std::span<const double> column(std::size_t c) const {
    return {values_.data() + c * rows_, rows_};
  }
  std::span<double> column(std::size_t c) { return {values_.data() + c * rows_, rows_}; }

  std::span<const double> values() const noexcept { return values_; }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t c = 0; c < cols_; ++c)
      for (std::size_t r = 0; r < rows_; ++r) t.values_[r * cols_ + c] = (*this)(r, c);
    return t;
  }

  /// Submatrix of the given columns, in the given order.
  DenseMatrix select_columns(std::span<const std::size_t> idx) const {
    if (idx.empty()) throw InvalidArgument("select_columns: empty index list");
    DenseMatrix s(rows_, idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (idx[j] >= cols_) throw InvalidArgument("select_columns: column index out of range");
      auto src = column(idx[j]);
      std::copy(src.begin(), src.end(), s.column(j).begin());
    }
    return s;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) {
  // Scaled sum of squares so tiny residuals do not underflow.
  double scale = 0.0, ssq = 1.0;
  for (double x : a) {
    if (x == 0.0) continue;
    const double ax = std::fabs(x);
    if (scale < ax) {
      ssq = 1.0 + ssq * (scale / ax) * (scale / ax);
      scale = ax;
    } else {
      ssq += (ax / scale) * (ax / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

/// Strictly increasing list of 0-based column indices.
class ColumnSelection {
 public:
  ColumnSelection() = default;

  /// Takes indices that must already be strictly increasing.
  explicit ColumnSelection(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
    for (std::size_t i = 1; i < indices_.size(); ++i)
      if (indices_[i] <= indices_[i - 1])
        throw InvalidArgument("ColumnSelection: indices must be strictly increasing");
  }

  /// Sorts; rejects duplicates.
  static ColumnSelection from_unsorted(std::vector<std::size_t> indices) {
    std::sort(indices.begin(), indices.end());
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
      throw InvalidArgument("ColumnSelection: duplicate column index");
    return ColumnSelection(std::move(indices));
  }

  std::size_t k() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  std::span<const std::size_t> indices() const noexcept { return indices_; }
  std::size_t operator[](std::size_t i) const { return indices_[i]; }
  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }

  bool contains(std::size_t c) const {
    return std::binary_search(indices_.begin(), indices_.end(), c);
  }

  /// Throws unless every index addresses a column of `a`.
  void validate_for(const DenseMatrix& a) const {
    if (!indices_.empty() && indices_.back() >= a.cols())
      throw InvalidArgument("ColumnSelection: column index " + std::to_string(indices_.back()) +
                            " out of range for " + std::to_string(a.cols()) + " columns");
  }

  friend bool operator==(const ColumnSelection&, const ColumnSelection&) = default;
  friend auto operator<=>(const ColumnSelection&, const ColumnSelection&) = default;

 private:
  std::vector<std::size_t> indices_;
};

// ---------------------------------------------------------------------------
// Matrix text format: "m n" on the first line, then m lines of n reals.

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_matrix_text(std::ostream& os, const DenseMatrix& a) {
  os << a.rows() << ' ' << a.cols() << '\n';
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (c) os << ' ';
      os << format_real(a(r, c));
    }
    os << '\n';
  }
}

inline std::string to_matrix_text(const DenseMatrix& a) {
  std::ostringstream os;
  write_matrix_text(os, a);
  return os.str();
}

namespace detail {

inline bool next_token(std::string_view text, std::size_t& pos, std::string_view& tok) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos >= text.size()) return false;
  const std::size_t start = pos;
  while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  tok = text.substr(start, pos - start);
  return true;
}

template <typename T>
T parse_number(std::string_view tok, const char* what) {
  T v{};
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw ParseError(std::string("invalid ") + what + ": '" + std::string(tok) + "'");
  return v;
}

}  // namespace detail

inline DenseMatrix parse_matrix_text(std::string_view text) {
  std::size_t pos = 0;
  std::string_view tok;
  auto header = [&](const char* what) {
    if (!detail::next_token(text, pos, tok))
      throw ParseError(std::string("matrix text: missing ") + what);
    return detail::parse_number<std::size_t>(tok, what);
  };
  // Header must sit on its own line.
  const std::size_t eol = text.find('\n');
  const std::string_view first = text.substr(0, eol);
  {
    std::size_t p = 0;
    std::string_view t;
    int count = 0;
    while (detail::next_token(first, p, t)) ++count;
    if (count != 2) throw ParseError("matrix text: header must be 'm n'");
  }
  const std::size_t m = header("row count");
  const std::size_t n = header("column count");
  if (m == 0 || n == 0) throw ParseError("matrix text: dimensions must be positive");

  std::vector<double> values(m * n);
  std::size_t line_start = eol == std::string_view::npos ? text.size() : eol + 1;
  for (std::size_t r = 0; r < m; ++r) {
    if (line_start >= text.size())
      throw ParseError("matrix text: expected " + std::to_string(m) + " rows, got " +
                       std::to_string(r));
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    const std::string_view line = text.substr(line_start, line_end - line_start);
    std::size_t p = 0;
    std::size_t c = 0;
    while (detail::next_token(line, p, tok)) {
      if (c >= n) throw ParseError("matrix text: row " + std::to_string(r) + " has too many entries");
      const double v = detail::parse_number<double>(tok, "matrix entry");
      if (!std::isfinite(v)) throw ParseError("matrix text: non-finite entry");
      values[c * m + r] = v;
      ++c;
    }
    if (c != n) throw ParseError("matrix text: row " + std::to_string(r) + " has " +
                                 std::to_string(c) + " entries, expected " + std::to_string(n));
    line_start = line_end + 1;
  }
  for (std::size_t p = line_start; p < text.size(); ++p)
    if (!std::isspace(static_cast<unsigned char>(text[p])))
      throw ParseError("matrix text: trailing content after last row");
  return DenseMatrix(m, n, std::move(values));
}

inline DenseMatrix read_matrix_text(std::istream& is) {
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_matrix_text(ss.str());
}

}  // namespace maxvol
