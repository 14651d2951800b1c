#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "maxvol/error.hpp"

namespace maxvol {

/// Binary vector family from a Sylvester Hadamard matrix of order 2^m: the
/// rows with -1 mapped to 0, all-ones row dropped. Any two rows, and any row
/// against the complement of another, meet in exactly 2^(m-2) ones.
struct HadamardGadget {
  unsigned m = 0;
  std::vector<std::vector<std::uint8_t>> rows;  // 2^m - 1 rows of length 2^m

  std::size_t width() const { return std::size_t{1} << m; }
  double norm_scale() const { return std::pow(2.0, (static_cast<double>(m) - 1.0) / 2.0); }
};

inline constexpr unsigned kMaxGadgetOrder = 24;

/// Row i of the Sylvester matrix has entry (-1)^popcount(i & j) in column j.
inline HadamardGadget build_gadget(unsigned m) {
  if (m < 2) throw InvalidArgument("build_gadget: m must be >= 2");
  if (m > kMaxGadgetOrder) throw CapExceeded("build_gadget: 2^m exceeds the memory budget");
  HadamardGadget g;
  g.m = m;
  const std::size_t n = std::size_t{1} << m;
  g.rows.assign(n - 1, std::vector<std::uint8_t>(n));
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      g.rows[i - 1][j] = (std::popcount(i & j) % 2 == 0) ? 1 : 0;
  return g;
}

inline std::int64_t binary_dot(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline std::vector<std::uint8_t> complement(const std::vector<std::uint8_t>& a) {
  std::vector<std::uint8_t> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] ? 0 : 1;
  return c;
}

}  // namespace maxvol
