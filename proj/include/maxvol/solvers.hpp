#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "maxvol/combinatorics.hpp"
#include "maxvol/dense_matrix.hpp"
#include "maxvol/error.hpp"
#include "maxvol/volume.hpp"

namespace maxvol {

enum class Strategy { greedy, exact, local };

inline std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::greedy: return "greedy";
    case Strategy::exact: return "exact";
    case Strategy::local: return "local";
  }
  return "unknown";
}

/// Default limit on the number of subsets the enumerating routines visit.
inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Relative band within which greedy treats two residual norms as tied.
inline constexpr double kGreedyTieTolerance = 1e-10;

/// exact_select keeps the earlier subset unless a later one beats it by more
/// than this many log2 units (about 7e-13 relative).
inline constexpr double kExactTieLog2 = 1e-12;

/// Absolute slack in the local-maximum comparison.
inline constexpr double kLocalSlack = 1e-12;

struct SolveReport {
  ColumnSelection selection;
  VolumeResult volume;
  Strategy strategy = Strategy::greedy;
  std::uint64_t swaps_or_steps = 0;
  double mu = 1.0;
  /// Greedy only: columns in the order they were picked.
  std::vector<std::size_t> pick_order;
};

namespace detail {

inline void check_k(const DenseMatrix& a, std::size_t k, const char* who) {
  if (k < 1 || k > a.cols())
    throw InvalidArgument(std::string(who) + ": k must satisfy 1 <= k <= " +
                          std::to_string(a.cols()) + ", got " + std::to_string(k));
}

inline void check_cap(std::size_t n, std::size_t k, std::uint64_t cap, const char* who) {
  const std::uint64_t count = binomial(n, k);
  if (count > cap)
    throw CapExceeded(std::string(who) + ": C(" + std::to_string(n) + "," + std::to_string(k) +
                      ") = " + std::to_string(count) + " subsets exceeds the enumeration cap " +
                      std::to_string(cap));
}

}  // namespace detail

/// Greedy column selection: repeatedly take the column with the largest
/// residual norm and project its direction out of every remaining column.
/// Residual norms within kGreedyTieTolerance (relative) of the maximum are
/// ties and go to the lowest column index.
inline SolveReport greedy_select(const DenseMatrix& a, std::size_t k) {
  detail::check_k(a, k, "greedy_select");
  const std::size_t m = a.rows(), n = a.cols();
  DenseMatrix r = a;
  std::vector<bool> taken(n, false);
  double max_norm = 0.0;
  for (std::size_t c = 0; c < n; ++c) max_norm = std::max(max_norm, norm2(a.column(c)));
  const double tol = kRankTolerance * max_norm;

  SolveReport rep;
  rep.strategy = Strategy::greedy;
  std::vector<double> norms(n);
  std::vector<double> q(m);
  for (std::size_t step = 0; step < k; ++step) {
    double best = -1.0;
    for (std::size_t c = 0; c < n; ++c) {
      norms[c] = taken[c] ? -1.0 : norm2(r.column(c));
      best = std::max(best, norms[c]);
    }
    if (best <= tol)
      throw RankDeficient("greedy_select: all residuals vanish after " + std::to_string(step) +
                          " picks; rank < k = " + std::to_string(k));
    std::size_t pick = n;
    for (std::size_t c = 0; c < n; ++c) {
      if (!taken[c] && norms[c] >= best * (1.0 - kGreedyTieTolerance)) {
        pick = c;
        break;
      }
    }
    taken[pick] = true;
    rep.pick_order.push_back(pick);
    auto rp = r.column(pick);
    for (std::size_t i = 0; i < m; ++i) q[i] = rp[i] / norms[pick];
    for (std::size_t c = 0; c < n; ++c) {
      if (taken[c]) continue;
      auto rc = r.column(c);
      const double coef = dot(q, rc);
      for (std::size_t i = 0; i < m; ++i) rc[i] -= coef * q[i];
    }
  }
  rep.swaps_or_steps = k;
  rep.selection = ColumnSelection::from_unsorted(rep.pick_order);
  rep.volume = volume(a, rep.selection);
  return rep;
}

/// Brute-force maximizer over all k-subsets, compared in log2 scale. Ties
/// (within kExactTieLog2) keep the lexicographically smallest index list.
inline SolveReport exact_select(const DenseMatrix& a, std::size_t k,
                                std::uint64_t cap = kDefaultEnumerationCap) {
  detail::check_k(a, k, "exact_select");
  detail::check_cap(a.cols(), k, cap, "exact_select");
  SolveReport rep;
  rep.strategy = Strategy::exact;
  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_idx;
  std::uint64_t visited = 0;
  for_each_combination(a.cols(), k, [&](const std::vector<std::size_t>& idx) {
    ++visited;
    const VolumeResult v = volume_in_order(a, idx);
    if (best_idx.empty() || v.log2_volume > best + kExactTieLog2) {
      best = v.log2_volume;
      best_idx = idx;
    }
  });
  rep.selection = ColumnSelection(best_idx);
  rep.volume = volume(a, rep.selection);
  rep.swaps_or_steps = visited;
  return rep;
}

/// True iff mu * Vol(s) >= Vol(s') - kLocalSlack for every single-column
/// swap s' of s. A zero-volume selection is never a local maximum.
inline bool is_local_mu_maximum(const DenseMatrix& a, const ColumnSelection& s, double mu) {
  if (!(mu >= 1.0)) throw InvalidArgument("is_local_mu_maximum: mu must be >= 1");
  const VolumeResult base = volume(a, s);
  if (base.is_zero()) return false;
  const double bound = std::isinf(mu) ? std::numeric_limits<double>::infinity() : mu * base.volume;
  std::vector<std::size_t> cand(s.begin(), s.end());
  for (std::size_t in = 0; in < a.cols(); ++in) {
    if (s.contains(in)) continue;
    for (std::size_t pos = 0; pos < s.k(); ++pos) {
      cand.assign(s.begin(), s.end());
      cand[pos] = in;
      if (volume_in_order(a, cand).volume > bound + kLocalSlack) return false;
    }
  }
  return true;
}

/// Single-swap local search toward a local mu-maximum volume selection.
/// Each round applies the best swap whose volume exceeds mu * current +
/// kLocalSlack, preferring the lowest incoming then lowest outgoing index.
inline SolveReport local_search(const DenseMatrix& a, std::size_t k, double mu,
                                const ColumnSelection& start) {
  detail::check_k(a, k, "local_search");
  if (!(mu >= 1.0)) throw InvalidArgument("local_search: mu must be >= 1");
  if (start.k() != k)
    throw InvalidArgument("local_search: start has " + std::to_string(start.k()) +
                          " columns, expected " + std::to_string(k));
  start.validate_for(a);

  SolveReport rep;
  rep.strategy = Strategy::local;
  rep.mu = mu;
  rep.selection = start;
  rep.volume = volume(a, start);
  if (rep.volume.is_zero()) throw InvalidArgument("local_search: start selection has zero volume");

  // Volume strictly grows, so no selection repeats.
  const std::uint64_t max_swaps = binomial(a.cols(), k);
  while (true) {
    const double threshold = mu * rep.volume.volume + kLocalSlack;
    double best_vol = threshold;
    std::vector<std::size_t> best;
    std::vector<std::size_t> cand;
    for (std::size_t in = 0; in < a.cols(); ++in) {
      if (rep.selection.contains(in)) continue;
      for (std::size_t pos = 0; pos < k; ++pos) {
        cand.assign(rep.selection.begin(), rep.selection.end());
        cand[pos] = in;
        const double v = volume_in_order(a, cand).volume;
        if (v > best_vol) {
          best_vol = v;
          best = cand;
        }
      }
    }
    if (best.empty()) break;
    rep.selection = ColumnSelection::from_unsorted(std::move(best));
    rep.volume = volume(a, rep.selection);
    if (++rep.swaps_or_steps > max_swaps)
      throw ConvergenceError("local_search: swap count exceeded the number of subsets");
  }
  return rep;
}

}  // namespace maxvol
