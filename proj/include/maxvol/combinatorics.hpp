#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace maxvol {

/// C(n, k), saturating at uint64 max.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t num = n - k + i;
    // r * num / i is exact at every step; guard the multiplication.
    if (r > std::numeric_limits<std::uint64_t>::max() / num)
      return std::numeric_limits<std::uint64_t>::max();
    r = r * num / i;
  }
  return r;
}

inline double factorial(unsigned k) {
  double f = 1.0;
  for (unsigned i = 2; i <= k; ++i) f *= i;
  return f;
}

/// Lexicographic enumeration of the k-subsets of {0, ..., n-1}.
class Combinations {
 public:
  Combinations(std::size_t n, std::size_t k) : n_(n), idx_(k), done_(k > n) {
    for (std::size_t i = 0; i < k; ++i) idx_[i] = i;
  }

  bool done() const noexcept { return done_; }
  const std::vector<std::size_t>& current() const noexcept { return idx_; }

  void next() {
    const std::size_t k = idx_.size();
    std::size_t i = k;
    while (i > 0 && idx_[i - 1] == n_ - k + i - 1) --i;
    if (i == 0) {
      done_ = true;
      return;
    }
    ++idx_[i - 1];
    for (std::size_t j = i; j < k; ++j) idx_[j] = idx_[j - 1] + 1;
  }

 private:
  std::size_t n_;
  std::vector<std::size_t> idx_;
  bool done_;
};

/// Calls `fn(indices)` for each k-subset in lexicographic order.
template <typename Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  for (Combinations c(n, k); !c.done(); c.next()) fn(c.current());
}

}  // namespace maxvol
