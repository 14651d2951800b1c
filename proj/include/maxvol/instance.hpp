#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "maxvol/dense_matrix.hpp"
#include "maxvol/error.hpp"
#include "maxvol/gadget.hpp"
#include "maxvol/label_cover.hpp"

namespace maxvol {

enum class Side { V, W };

struct ColumnKey {
  Side side = Side::V;
  std::size_t vertex = 0;
  std::uint32_t label = 0;

  friend bool operator==(const ColumnKey&, const ColumnKey&) = default;
};

/// MAX-VOL instance built from a Label Cover instance: one unit column per
/// (vertex, label) pair and one block of rows per edge.
///
/// Column layout: all W-side columns first (w-major, then label), followed by
/// all V-side columns. Edge e owns rows [e * block_width, (e + 1) * block_width).
struct MaxVolInstance {
  DenseMatrix matrix;
  std::size_t k = 0;
  double delta = 0.0;
  unsigned ell = 0;
  std::size_t block_width = 0;
  LabelCoverInstance source;

  std::size_t v_offset() const { return source.w_count * source.sigma_w; }

  std::size_t column_of(Side side, std::size_t vertex, std::uint32_t label) const {
    if (side == Side::W) {
      if (vertex >= source.w_count || label >= source.sigma_w)
        throw InvalidArgument("column_of: W vertex or label out of range");
      return vertex * source.sigma_w + label;
    }
    if (vertex >= source.v_count || label >= source.sigma_v)
      throw InvalidArgument("column_of: V vertex or label out of range");
    return v_offset() + vertex * source.sigma_v + label;
  }

  ColumnKey key_of(std::size_t column) const {
    if (column >= matrix.cols()) throw InvalidArgument("key_of: column out of range");
    if (column < v_offset())
      return {Side::W, column / source.sigma_w, static_cast<std::uint32_t>(column % source.sigma_w)};
    const std::size_t c = column - v_offset();
    return {Side::V, c / source.sigma_v, static_cast<std::uint32_t>(c % source.sigma_v)};
  }

  std::pair<std::size_t, std::size_t> block_rows(std::size_t edge) const {
    if (edge >= source.edges.size()) throw InvalidArgument("block_rows: edge out of range");
    return {edge * block_width, (edge + 1) * block_width};
  }
};

/// Limit on M * N for build_maxvol_instance.
inline constexpr std::uint64_t kDefaultInstanceCap = 100'000'000;

/// Builds the instance with the gadget of order m = ell + 1. The V-side
/// column (v, i) carries complement(b_{pi_e(i)}) / sqrt(deg v) on every edge
/// e at v; the W-side column (w, j) carries b_j / sqrt(deg w) on every edge at
/// w. Gadget rows are normalized to unit length, and W label j uses gadget
/// row j in Sylvester order.
inline MaxVolInstance build_maxvol_instance(const LabelCoverInstance& lc, unsigned ell,
                                            std::uint64_t cap = kDefaultInstanceCap) {
  if (ell < 1) throw InvalidArgument("build_maxvol_instance: ell must be >= 1");
  lc.validate();
  if (ell > 20 || lc.sigma_w > (std::size_t{1} << ell))
    throw InvalidArgument("build_maxvol_instance: sigma_w = " + std::to_string(lc.sigma_w) +
                          " exceeds the gadget capacity 2^ell = " +
                          std::to_string(std::size_t{1} << std::min(ell, 20u)));
  const HadamardGadget g = build_gadget(ell + 1);
  const std::size_t width = g.width();
  const std::size_t rows = lc.edges.size() * width;
  const std::size_t cols = lc.v_count * lc.sigma_v + lc.w_count * lc.sigma_w;
  if (static_cast<double>(rows) * static_cast<double>(cols) > static_cast<double>(cap))
    throw CapExceeded("build_maxvol_instance: " + std::to_string(rows) + " x " +
                      std::to_string(cols) + " matrix exceeds the size cap");

  const double ones = static_cast<double>(std::size_t{1} << ell);  // ones per gadget row
  const double v_entry = 1.0 / std::sqrt(ones * static_cast<double>(lc.v_degree()));
  const double w_entry = 1.0 / std::sqrt(ones * static_cast<double>(lc.w_degree()));

  MaxVolInstance inst{DenseMatrix(rows, cols), lc.v_count + lc.w_count, 0.0, ell, width, lc};
  inst.delta = static_cast<double>(inst.k) / static_cast<double>(cols);
  DenseMatrix& a = inst.matrix;

  for (std::size_t e = 0; e < lc.edges.size(); ++e) {
    const auto& ed = lc.edges[e];
    const std::size_t r0 = e * width;
    for (std::uint32_t j = 0; j < lc.sigma_w; ++j) {
      auto col = a.column(inst.column_of(Side::W, ed.w, j));
      const auto& b = g.rows[j];
      for (std::size_t t = 0; t < width; ++t)
        if (b[t]) col[r0 + t] = w_entry;
    }
    for (std::uint32_t i = 0; i < lc.sigma_v; ++i) {
      auto col = a.column(inst.column_of(Side::V, ed.v, i));
      const auto& b = g.rows[ed.pi[i]];
      for (std::size_t t = 0; t < width; ++t)
        if (!b[t]) col[r0 + t] = v_entry;
    }
  }
  return inst;
}

/// The k columns {(v, label(v))} and {(w, label(w))}.
inline ColumnSelection labeling_to_selection(const MaxVolInstance& inst, const Labeling& s) {
  validate_labeling(inst.source, s);
  std::vector<std::size_t> cols;
  cols.reserve(inst.k);
  for (std::size_t w = 0; w < inst.source.w_count; ++w)
    cols.push_back(inst.column_of(Side::W, w, s.w_labels[w]));
  for (std::size_t v = 0; v < inst.source.v_count; ++v)
    cols.push_back(inst.column_of(Side::V, v, s.v_labels[v]));
  return ColumnSelection::from_unsorted(std::move(cols));
}

}  // namespace maxvol
