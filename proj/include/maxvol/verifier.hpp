#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "maxvol/combinatorics.hpp"
#include "maxvol/dense_matrix.hpp"
#include "maxvol/error.hpp"
#include "maxvol/gadget.hpp"
#include "maxvol/instance.hpp"
#include "maxvol/label_cover.hpp"
#include "maxvol/linalg.hpp"
#include "maxvol/solvers.hpp"
#include "maxvol/volume.hpp"

namespace maxvol {

inline constexpr double kDefaultSlack = 1e-9;
inline constexpr double kExactSlack = 1e-12;

/// Outcome of one inequality or equality check. `pass` is true iff
/// `lhs relation rhs` holds within `slack`.
struct CheckReport {
  std::string name;
  bool pass = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  std::string relation;
  nlohmann::json context = nlohmann::json::object();
};

namespace detail {

inline CheckReport make_le(std::string name, double lhs, double rhs, double slack) {
  CheckReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = slack;
  r.relation = "<=";
  r.pass = lhs <= rhs + slack;
  return r;
}

inline CheckReport make_ge(std::string name, double lhs, double rhs, double slack) {
  CheckReport r = make_le(std::move(name), lhs, rhs, slack);
  r.relation = ">=";
  r.pass = lhs >= rhs - slack;
  return r;
}

inline std::vector<std::size_t> to_vec(const ColumnSelection& s) { return {s.begin(), s.end()}; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Gadget

/// Verifies in integer arithmetic: |b_i|^2 = 2^(m-1), b_i . b_j = 2^(m-2)
/// and b_i . complement(b_j) = 2^(m-2) for every ordered pair i != j.
/// lhs counts violations.
inline CheckReport check_gadget(const HadamardGadget& g) {
  CheckReport r;
  r.name = "gadget";
  r.relation = "==";
  r.rhs = 0.0;
  std::size_t violations = 0;
  const std::size_t n = std::size_t{1} << g.m;
  const std::int64_t half = std::int64_t{1} << (g.m - 1);
  const std::int64_t quarter = std::int64_t{1} << (g.m - 2);
  if (g.m < 2 || g.rows.size() != n - 1) ++violations;
  std::vector<std::vector<std::uint8_t>> comp;
  for (const auto& row : g.rows) {
    if (row.size() != n) {
      ++violations;
      continue;
    }
    comp.push_back(complement(row));
  }
  if (violations == 0) {
    for (std::size_t i = 0; i < g.rows.size(); ++i) {
      if (binary_dot(g.rows[i], g.rows[i]) != half) {
        if (violations++ == 0) r.context["first_violation"] = {{"kind", "norm"}, {"i", i}};
      }
      for (std::size_t j = 0; j < g.rows.size(); ++j) {
        if (i == j) continue;
        if (binary_dot(g.rows[i], g.rows[j]) != quarter) {
          if (violations++ == 0)
            r.context["first_violation"] = {{"kind", "dot"}, {"i", i}, {"j", j}};
        }
        if (binary_dot(g.rows[i], comp[j]) != quarter) {
          if (violations++ == 0)
            r.context["first_violation"] = {{"kind", "complement_dot"}, {"i", i}, {"j", j}};
        }
      }
    }
  }
  r.context["m"] = g.m;
  r.context["vectors"] = g.rows.size();
  r.lhs = static_cast<double>(violations);
  r.pass = violations == 0;
  return r;
}

// ---------------------------------------------------------------------------
// Reduction instances

/// Largest |a_i . a_j| over pairs of the selection, with the worst pair in
/// the context. Passes when it is at most kExactSlack.
inline CheckReport check_selection_orthogonality(const DenseMatrix& a, const ColumnSelection& s) {
  s.validate_for(a);
  CheckReport r;
  r.name = "orthogonality";
  r.relation = "<=";
  r.slack = kExactSlack;
  double worst = 0.0;
  std::size_t wi = 0, wj = 0;
  for (std::size_t x = 0; x < s.k(); ++x)
    for (std::size_t y = x + 1; y < s.k(); ++y) {
      const double d = std::fabs(dot(a.column(s[x]), a.column(s[y])));
      if (d > worst) {
        worst = d;
        wi = s[x];
        wj = s[y];
      }
    }
  r.lhs = worst;
  r.rhs = 0.0;
  r.pass = worst <= kExactSlack;
  r.context["worst_pair"] = {wi, wj};
  return r;
}

/// A fully satisfying labeling must select k pairwise orthogonal columns of
/// volume 1. lhs = volume, rhs = 1.
inline CheckReport check_completeness(const MaxVolInstance& inst, const Labeling& s) {
  if (evaluate_labeling(inst.source, s) != 1.0)
    throw PreconditionError("check_completeness: labeling does not satisfy every edge");
  const ColumnSelection sel = labeling_to_selection(inst, s);
  const CheckReport ortho = check_selection_orthogonality(inst.matrix, sel);
  const VolumeResult vol = volume(inst.matrix, sel);
  CheckReport r;
  r.name = "completeness";
  r.relation = "==";
  r.lhs = vol.volume;
  r.rhs = 1.0;
  r.slack = kDefaultSlack;
  r.pass = ortho.pass && std::fabs(vol.volume - 1.0) <= kDefaultSlack;
  r.context["max_abs_dot"] = ortho.lhs;
  r.context["worst_pair"] = ortho.context["worst_pair"];
  r.context["k"] = sel.k();
  r.context["rows"] = inst.matrix.rows();
  r.context["cols"] = inst.matrix.cols();
  return r;
}

/// Expected dot product of (v, i) and (w, j) across one unsatisfied edge.
inline double unsatisfied_edge_dot(const LabelCoverInstance& lc) {
  return 1.0 / (2.0 * std::sqrt(static_cast<double>(lc.v_degree() * lc.w_degree())));
}

inline CheckReport check_unsat_edge_dot(const MaxVolInstance& inst, std::size_t edge,
                                        std::uint32_t i, std::uint32_t j) {
  if (edge >= inst.source.edges.size()) throw InvalidArgument("check_unsat_edge_dot: edge out of range");
  const auto& e = inst.source.edges[edge];
  if (i >= inst.source.sigma_v || j >= inst.source.sigma_w)
    throw InvalidArgument("check_unsat_edge_dot: label out of range");
  if (edge_satisfied(e, i, j))
    throw PreconditionError("check_unsat_edge_dot: labels satisfy the edge");
  const double d = dot(inst.matrix.column(inst.column_of(Side::V, e.v, i)),
                       inst.matrix.column(inst.column_of(Side::W, e.w, j)));
  CheckReport r;
  r.name = "unsat_edge_dot";
  r.relation = "==";
  r.lhs = d;
  r.rhs = unsatisfied_edge_dot(inst.source);
  r.slack = kExactSlack;
  r.pass = std::fabs(r.lhs - r.rhs) <= r.slack;
  r.context = {{"edge", edge}, {"i", i}, {"j", j}};
  return r;
}

/// Per-side counts of a selection over a reduction instance.
struct SelectionStats {
  std::size_t k_v = 0;
  std::size_t k_w = 0;
  std::size_t d_v = 0;
  std::size_t d_w = 0;
  std::set<std::size_t> distinct_v;
  std::set<std::size_t> distinct_w;
};

inline SelectionStats selection_stats(const MaxVolInstance& inst, const ColumnSelection& s) {
  s.validate_for(inst.matrix);
  SelectionStats st;
  for (std::size_t c : s) {
    const ColumnKey key = inst.key_of(c);
    if (key.side == Side::V) {
      ++st.k_v;
      st.distinct_v.insert(key.vertex);
    } else {
      ++st.k_w;
      st.distinct_w.insert(key.vertex);
    }
  }
  st.d_v = st.k_v - st.distinct_v.size();
  st.d_w = st.k_w - st.distinct_w.size();
  return st;
}

/// Each side's volume is at most (sqrt(3)/2)^duplicates, and every pair of
/// selected columns on the same vertex has dot product in [1/2, 1].
/// lhs = largest (volume - bound) over the two sides, rhs = 0.
inline CheckReport check_duplicate_bound(const MaxVolInstance& inst, const ColumnSelection& s) {
  const SelectionStats st = selection_stats(inst, s);
  std::vector<std::size_t> vcols, wcols;
  for (std::size_t c : s) (inst.key_of(c).side == Side::V ? vcols : wcols).push_back(c);
  const double vol_v = volume_in_order(inst.matrix, vcols).volume;
  const double vol_w = volume_in_order(inst.matrix, wcols).volume;
  const double factor = std::sqrt(3.0) / 2.0;
  const double bound_v = std::pow(factor, static_cast<double>(st.d_v));
  const double bound_w = std::pow(factor, static_cast<double>(st.d_w));

  double min_dot = std::numeric_limits<double>::infinity();
  double max_dot = -std::numeric_limits<double>::infinity();
  std::size_t pairs = 0;
  for (std::size_t x = 0; x < s.k(); ++x) {
    const ColumnKey kx = inst.key_of(s[x]);
    for (std::size_t y = x + 1; y < s.k(); ++y) {
      const ColumnKey ky = inst.key_of(s[y]);
      if (kx.side != ky.side || kx.vertex != ky.vertex) continue;
      const double d = dot(inst.matrix.column(s[x]), inst.matrix.column(s[y]));
      min_dot = std::min(min_dot, d);
      max_dot = std::max(max_dot, d);
      ++pairs;
    }
  }
  const bool dots_ok = pairs == 0 || (min_dot >= 0.5 - kExactSlack && max_dot <= 1.0 + kExactSlack);

  CheckReport r = detail::make_le("duplicate_bound", std::max(vol_v - bound_v, vol_w - bound_w), 0.0,
                                  kDefaultSlack);
  r.pass = r.pass && dots_ok;
  r.context = {{"d_v", st.d_v},         {"d_w", st.d_w},       {"vol_v", vol_v},
               {"bound_v", bound_v},    {"vol_w", vol_w},      {"bound_w", bound_w},
               {"same_vertex_pairs", pairs}};
  if (pairs) {
    r.context["min_same_vertex_dot"] = min_dot;
    r.context["max_same_vertex_dot"] = max_dot;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Generic matrices

/// Vol(P u Q) <= Vol(P) * prod_q d(q, P). lhs/rhs are the two sides.
inline CheckReport check_union_lemma(const DenseMatrix& a, const ColumnSelection& p,
                                     const ColumnSelection& q) {
  p.validate_for(a);
  q.validate_for(a);
  for (std::size_t c : q)
    if (p.contains(c)) throw InvalidArgument("check_union_lemma: P and Q overlap");
  std::vector<std::size_t> both = detail::to_vec(p);
  both.insert(both.end(), q.begin(), q.end());
  const double lhs = volume(a, ColumnSelection::from_unsorted(both)).volume;
  double rhs = volume(a, p).volume;
  for (std::size_t c : q) rhs *= projection_distance(a.column(c), a, p);
  CheckReport r = detail::make_le("union_lemma", lhs, rhs, kDefaultSlack);
  r.context = {{"P", detail::to_vec(p)}, {"Q", detail::to_vec(q)}};
  return r;
}

/// Vol(greedy) >= Vol(exact) / k!. lhs = greedy volume, rhs = exact / k!.
inline CheckReport check_greedy_ratio(const DenseMatrix& a, std::size_t k,
                                      std::uint64_t cap = kDefaultEnumerationCap) {
  const SolveReport ex = exact_select(a, k, cap);
  const SolveReport gr = greedy_select(a, k);
  CheckReport r = detail::make_ge("greedy_ratio", gr.volume.volume,
                                  ex.volume.volume / factorial(static_cast<unsigned>(k)), kExactSlack);
  r.context = {{"k", k},
               {"greedy", detail::to_vec(gr.selection)},
               {"exact", detail::to_vec(ex.selection)},
               {"greedy_volume", gr.volume.volume},
               {"exact_volume", ex.volume.volume}};
  return r;
}

/// Row and column index sets of a k x k block.
struct Block {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

inline constexpr std::uint64_t kDefaultBlockCap = 1'000'000;

/// Largest |det| over all k x k blocks; the first maximizer in
/// lexicographic (rows, cols) order is returned through `argmax`.
inline double max_block_volume(const DenseMatrix& a, std::size_t k, Block* argmax = nullptr,
                               std::uint64_t cap = kDefaultBlockCap) {
  if (k < 1 || k > std::min(a.rows(), a.cols())) throw InvalidArgument("max_block_volume: bad k");
  const std::uint64_t rc = binomial(a.rows(), k), cc = binomial(a.cols(), k);
  if (rc > cap || cc > cap / rc)
    throw CapExceeded("max_block_volume: " + std::to_string(rc) + " x " + std::to_string(cc) +
                      " blocks exceed the enumeration cap");
  double best = -1.0;
  for_each_combination(a.rows(), k, [&](const std::vector<std::size_t>& ri) {
    for_each_combination(a.cols(), k, [&](const std::vector<std::size_t>& ci) {
      const double d = std::fabs(determinant(submatrix(a, ri, ci)));
      if (d > best) {
        best = d;
        if (argmax) *argmax = {ri, ci};
      }
    });
  });
  return best;
}

/// Cross-approximation bound for a k x k block with mu = max|det| / |det(block)|:
/// max |A22 - A21 A11^-1 A12| <= mu (k + 1) sigma_{k+1}(A).
inline CheckReport check_gt_bound(const DenseMatrix& a, std::size_t k, const Block& chosen,
                                  std::uint64_t cap = kDefaultBlockCap) {
  if (chosen.rows.size() != k || chosen.cols.size() != k)
    throw InvalidArgument("check_gt_bound: block must be k x k");
  const ColumnSelection rs = ColumnSelection::from_unsorted(chosen.rows);
  const ColumnSelection cs = ColumnSelection::from_unsorted(chosen.cols);
  if (rs[k - 1] >= a.rows() || cs[k - 1] >= a.cols())
    throw InvalidArgument("check_gt_bound: block index out of range");

  const double maxdet = max_block_volume(a, k, nullptr, cap);
  const DenseMatrix a11 = submatrix(a, rs.indices(), cs.indices());
  const LuDecomposition lu(a11);
  const double det = std::fabs(lu.determinant());
  if (lu.singular() || det <= kRankTolerance * maxdet)
    throw InvalidArgument("check_gt_bound: chosen block is singular");
  const double mu = maxdet / det;

  std::vector<std::size_t> rc, cc;
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (!rs.contains(i)) rc.push_back(i);
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!cs.contains(j)) cc.push_back(j);

  double resid = 0.0;
  if (!rc.empty() && !cc.empty()) {
    const DenseMatrix a12 = submatrix(a, rs.indices(), cc);
    const DenseMatrix a21 = submatrix(a, rc, cs.indices());
    const DenseMatrix a22 = submatrix(a, rc, cc);
    const DenseMatrix corr = multiply(a21, lu.solve(a12));
    for (std::size_t j = 0; j < cc.size(); ++j)
      for (std::size_t i = 0; i < rc.size(); ++i)
        resid = std::max(resid, std::fabs(a22(i, j) - corr(i, j)));
  }
  const std::vector<double> sv = singular_values(a);
  const double sigma = k < sv.size() ? sv[k] : 0.0;
  CheckReport r = detail::make_le("gt_bound", resid, mu * static_cast<double>(k + 1) * sigma,
                                  kDefaultSlack);
  r.context = {{"k", k}, {"mu", mu}, {"sigma_k_plus_1", sigma},
               {"rows", detail::to_vec(rs)}, {"cols", detail::to_vec(cs)}};
  return r;
}

/// RRQR quality of a locally mu-maximal leading column set: with AP = QR,
/// sigma_min(R11) >= sigma_k(A) / f and sigma_1(R22) <= f sigma_{k+1}(A),
/// f = sqrt(k (n - k) mu^2 + 1). lhs = largest violation margin of the two,
/// rhs = 0.
inline CheckReport check_pan_bounds(const DenseMatrix& a, std::size_t k, double mu,
                                    const ColumnSelection& leading) {
  const std::size_t n = a.cols();
  if (a.rows() < n) throw InvalidArgument("check_pan_bounds: needs rows >= cols");
  if (k < 1 || k >= n) throw InvalidArgument("check_pan_bounds: need 1 <= k < n");
  if (leading.k() != k) throw InvalidArgument("check_pan_bounds: leading set must have k columns");
  leading.validate_for(a);
  if (!is_local_mu_maximum(a, leading, mu))
    throw PreconditionError("check_pan_bounds: leading columns are not a local mu-maximum");

  std::vector<std::size_t> perm = detail::to_vec(leading);
  for (std::size_t j = 0; j < n; ++j)
    if (!leading.contains(j)) perm.push_back(j);
  const DenseMatrix rfac = qr_r_factor(a.select_columns(perm));
  const double smin_r11 = singular_values(block(rfac, 0, 0, k, k)).back();
  const double s1_r22 = singular_values(block(rfac, k, k, n - k, n - k)).front();
  const std::vector<double> sv = singular_values(a);
  const double f = std::sqrt(static_cast<double>(k * (n - k)) * mu * mu + 1.0);
  const double lower = sv[k - 1] / f;
  const double upper = f * sv[k];

  const double margin = std::max(lower - smin_r11, s1_r22 - upper);
  CheckReport r = detail::make_le("pan_bounds", margin, 0.0, kDefaultSlack);
  r.context = {{"k", k},
               {"mu", mu},
               {"leading", detail::to_vec(leading)},
               {"sigma_min_R11", smin_r11},
               {"sigma_k_over_f", lower},
               {"sigma_1_R22", s1_r22},
               {"f_sigma_k_plus_1", upper}};
  return r;
}

/// Convenience form: the leading set is local_search(mu) started from greedy.
inline CheckReport check_pan_bounds(const DenseMatrix& a, std::size_t k, double mu) {
  const SolveReport start = greedy_select(a, k);
  const SolveReport loc = local_search(a, k, mu, start.selection);
  return check_pan_bounds(a, k, mu, loc.selection);
}

/// Exhaustive probe on a tiny Label Cover instance: the best k columns have
/// volume 1 when OPT = 1 and volume below 1 - 1e-6 when OPT < 1.
/// lhs = best volume, rhs = OPT.
inline CheckReport brute_force_soundness_probe(const LabelCoverInstance& lc, unsigned ell,
                                               std::uint64_t cap = kDefaultEnumerationCap) {
  const double opt = label_cover_optimum(lc, cap);
  const MaxVolInstance inst = build_maxvol_instance(lc, ell);
  const SolveReport ex = exact_select(inst.matrix, inst.k, cap);
  CheckReport r;
  r.name = "soundness_probe";
  r.lhs = ex.volume.volume;
  r.rhs = opt;
  if (opt == 1.0) {
    r.relation = "vol == 1";
    r.slack = kDefaultSlack;
    r.pass = std::fabs(r.lhs - 1.0) <= r.slack;
  } else {
    r.relation = "vol < 1 - 1e-6";
    r.slack = 1e-6;
    r.pass = r.lhs < 1.0 - r.slack;
  }
  r.context = {{"columns", inst.matrix.cols()},
               {"k", inst.k},
               {"opt", opt},
               {"best", detail::to_vec(ex.selection)},
               {"log2_volume", ex.volume.log2_volume}};
  return r;
}

}  // namespace maxvol
