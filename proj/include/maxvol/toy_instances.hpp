#pragma once

#include <string>
#include <utility>
#include <vector>

#include "maxvol/label_cover.hpp"

namespace maxvol {

/// Small biregular Label Cover instances (at most 20 reduction columns at
/// ell = 1) for exhaustive soundness probing.
struct ToyInstance {
  std::string name;
  LabelCoverInstance lc;
};

namespace detail {

inline LabelCoverInstance make_lc(std::size_t nv, std::size_t nw, std::size_t sv, std::size_t sw,
                                  std::vector<LabelCoverEdge> edges) {
  LabelCoverInstance lc{nv, nw, sv, sw, std::move(edges)};
  lc.validate();
  return lc;
}

/// Cycle v0-w0-v1-w1-...: v_i joins w_i and w_{i+1 mod n}. Binary labels;
/// edge (v_i, w_{i+1}) negates when i is in `negated`.
inline LabelCoverInstance parity_cycle(std::size_t n, const std::vector<std::size_t>& negated) {
  std::vector<LabelCoverEdge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    edges.push_back({i, i, {0, 1}});
    bool neg = false;
    for (auto x : negated) neg = neg || x == i;
    edges.push_back({i, (i + 1) % n, neg ? std::vector<std::uint32_t>{1, 0} : std::vector<std::uint32_t>{0, 1}});
  }
  return make_lc(n, n, 2, 2, std::move(edges));
}

}  // namespace detail

inline std::vector<ToyInstance> toy_label_cover_instances() {
  using detail::make_lc;
  std::vector<ToyInstance> out;
  out.push_back({"single_edge", make_lc(1, 1, 2, 2, {{0, 0, {0, 1}}})});
  out.push_back({"k22_consistent",
                 make_lc(2, 2, 2, 2, {{0, 0, {0, 1}}, {0, 1, {0, 1}}, {1, 0, {0, 1}}, {1, 1, {0, 1}}})});
  // v0 forces w0 == w1, v1 forces w0 != w1: OPT = 3/4.
  out.push_back({"k22_inconsistent",
                 make_lc(2, 2, 2, 2, {{0, 0, {0, 1}}, {0, 1, {0, 1}}, {1, 0, {0, 1}}, {1, 1, {1, 0}}})});
  // Constant projections pin each w to conflicting labels: OPT = 1/2.
  out.push_back({"k22_constant_maps",
                 make_lc(2, 2, 3, 2,
                         {{0, 0, {0, 0, 0}}, {0, 1, {1, 1, 1}}, {1, 0, {1, 1, 1}}, {1, 1, {0, 0, 0}}})});
  out.push_back({"k22_three_labels",
                 make_lc(2, 2, 3, 2,
                         {{0, 0, {0, 1, 1}}, {0, 1, {1, 0, 1}}, {1, 0, {0, 1, 1}}, {1, 1, {1, 0, 1}}})});
  out.push_back({"cycle6_even", detail::parity_cycle(3, {})});
  // One negation around the cycle is an odd parity constraint: OPT = 5/6.
  out.push_back({"cycle6_odd", detail::parity_cycle(3, {2})});
  out.push_back({"cycle4_odd", detail::parity_cycle(2, {0})});
  return out;
}

}  // namespace maxvol
