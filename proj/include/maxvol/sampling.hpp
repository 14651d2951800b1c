#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "maxvol/combinatorics.hpp"
#include "maxvol/dense_matrix.hpp"
#include "maxvol/error.hpp"
#include "maxvol/random.hpp"
#include "maxvol/solvers.hpp"
#include "maxvol/volume.hpp"

namespace maxvol {

/// Exact volume-sampling distribution: every k-subset S with probability
/// Vol(S)^2 / sum_T Vol(T)^2. Entries are in lexicographic subset order and
/// include zero-probability subsets.
struct VolumeDistribution {
  std::size_t k = 0;
  std::vector<std::pair<ColumnSelection, double>> entries;
  double normalizer = 0.0;
};

inline VolumeDistribution volume_sampling_distribution(const DenseMatrix& a, std::size_t k,
                                                       std::uint64_t cap = kDefaultEnumerationCap) {
  detail::check_k(a, k, "volume_sampling_distribution");
  detail::check_cap(a.cols(), k, cap, "volume_sampling_distribution");
  VolumeDistribution dist;
  dist.k = k;
  std::vector<double> sq;
  for_each_combination(a.cols(), k, [&](const std::vector<std::size_t>& idx) {
    const double v = volume_in_order(a, idx).volume;
    sq.push_back(v * v);
    dist.entries.emplace_back(ColumnSelection(idx), 0.0);
  });
  for (double s : sq) dist.normalizer += s;
  if (dist.normalizer == 0.0)
    throw RankDeficient("volume_sampling_distribution: every " + std::to_string(k) +
                        "-subset has zero volume");
  for (std::size_t i = 0; i < sq.size(); ++i) dist.entries[i].second = sq[i] / dist.normalizer;
  return dist;
}

/// Inverse-CDF sampler over a VolumeDistribution.
class VolumeSampler {
 public:
  VolumeSampler(const VolumeDistribution& dist, std::uint64_t seed) : dist_(&dist), rng_(seed) {
    cdf_.reserve(dist.entries.size());
    double acc = 0.0;
    for (const auto& e : dist.entries) {
      acc += e.second;
      cdf_.push_back(acc);
    }
  }

  /// Index into dist.entries of the next draw.
  std::size_t draw_index() {
    const double u = rng_.uniform() * cdf_.back();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    // upper_bound never lands on a zero-probability entry: its cdf equals
    // the previous one.
    auto i = static_cast<std::size_t>(it - cdf_.begin());
    if (i == cdf_.size()) {
      i = cdf_.size() - 1;
      while (i > 0 && dist_->entries[i].second == 0.0) --i;
    }
    return i;
  }

  const ColumnSelection& draw() { return dist_->entries[draw_index()].first; }

 private:
  const VolumeDistribution* dist_;
  Rng rng_;
  std::vector<double> cdf_;
};

/// One seeded draw; the same seed always yields the same subset.
inline ColumnSelection sample_subset(const VolumeDistribution& dist, std::uint64_t seed) {
  if (dist.entries.empty()) throw InvalidArgument("sample_subset: empty distribution");
  VolumeSampler s(dist, seed);
  return s.draw();
}

}  // namespace maxvol
