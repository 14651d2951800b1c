#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "maxvol/cnf.hpp"
#include "maxvol/error.hpp"

namespace maxvol {

/// One constraint edge (v, w) with its projection table pi: [sigma_v] -> [sigma_w].
struct LabelCoverEdge {
  std::size_t v = 0;
  std::size_t w = 0;
  std::vector<std::uint32_t> pi;

  friend bool operator==(const LabelCoverEdge&, const LabelCoverEdge&) = default;
};

/// Biregular bipartite Label Cover instance. Labels are 0-based.
struct LabelCoverInstance {
  std::size_t v_count = 0;
  std::size_t w_count = 0;
  std::size_t sigma_v = 0;
  std::size_t sigma_w = 0;
  std::vector<LabelCoverEdge> edges;

  std::vector<std::vector<std::size_t>> edges_of_v() const {
    std::vector<std::vector<std::size_t>> out(v_count);
    for (std::size_t e = 0; e < edges.size(); ++e) out[edges[e].v].push_back(e);
    return out;
  }

  std::vector<std::vector<std::size_t>> edges_of_w() const {
    std::vector<std::vector<std::size_t>> out(w_count);
    for (std::size_t e = 0; e < edges.size(); ++e) out[edges[e].w].push_back(e);
    return out;
  }

  std::size_t v_degree() const { return v_count ? edges.size() / v_count : 0; }
  std::size_t w_degree() const { return w_count ? edges.size() / w_count : 0; }

  /// Throws InvalidArgument unless the instance is a simple biregular
  /// bipartite graph with total, in-range projection tables.
  void validate() const {
    if (v_count == 0 || w_count == 0 || sigma_v == 0 || sigma_w == 0)
      throw InvalidArgument("LabelCover: vertex counts and alphabets must be positive");
    if (edges.empty()) throw InvalidArgument("LabelCover: no edges");
    std::vector<std::size_t> dv(v_count, 0), dw(w_count, 0);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto& ed = edges[e];
      const std::string where = "LabelCover edge " + std::to_string(e) + ": ";
      if (ed.v >= v_count || ed.w >= w_count) throw InvalidArgument(where + "endpoint out of range");
      if (!seen.emplace(ed.v, ed.w).second) throw InvalidArgument(where + "duplicate edge");
      if (ed.pi.size() != sigma_v)
        throw InvalidArgument(where + "projection table has " + std::to_string(ed.pi.size()) +
                              " entries, expected " + std::to_string(sigma_v));
      for (auto x : ed.pi)
        if (x >= sigma_w) throw InvalidArgument(where + "projection value out of range");
      ++dv[ed.v];
      ++dw[ed.w];
    }
    for (std::size_t v = 0; v < v_count; ++v)
      if (dv[v] != dv[0]) throw InvalidArgument("LabelCover: V side is not regular");
    for (std::size_t w = 0; w < w_count; ++w)
      if (dw[w] != dw[0]) throw InvalidArgument("LabelCover: W side is not regular");
    if (dv[0] == 0 || dw[0] == 0) throw InvalidArgument("LabelCover: isolated vertices");
  }

  friend bool operator==(const LabelCoverInstance&, const LabelCoverInstance&) = default;
};

/// Total assignment of labels to both sides.
struct Labeling {
  std::vector<std::uint32_t> v_labels;
  std::vector<std::uint32_t> w_labels;
};

inline void validate_labeling(const LabelCoverInstance& lc, const Labeling& s) {
  if (s.v_labels.size() != lc.v_count || s.w_labels.size() != lc.w_count)
    throw InvalidArgument("Labeling: size does not match the instance");
  for (auto x : s.v_labels)
    if (x >= lc.sigma_v) throw InvalidArgument("Labeling: V label out of range");
  for (auto x : s.w_labels)
    if (x >= lc.sigma_w) throw InvalidArgument("Labeling: W label out of range");
}

inline bool edge_satisfied(const LabelCoverEdge& e, std::uint32_t i, std::uint32_t j) {
  return e.pi[i] == j;
}

/// Fraction of edges with pi_e(label(v)) == label(w).
inline double evaluate_labeling(const LabelCoverInstance& lc, const Labeling& s) {
  validate_labeling(lc, s);
  std::size_t sat = 0;
  for (const auto& e : lc.edges)
    if (edge_satisfied(e, s.v_labels[e.v], s.w_labels[e.w])) ++sat;
  return static_cast<double>(sat) / static_cast<double>(lc.edges.size());
}

/// OPT by enumerating every labeling; throws CapExceeded beyond `cap` labelings.
inline double label_cover_optimum(const LabelCoverInstance& lc, std::uint64_t cap,
                                  Labeling* argmax = nullptr) {
  lc.validate();
  double count = 1.0;
  for (std::size_t i = 0; i < lc.v_count; ++i) count *= static_cast<double>(lc.sigma_v);
  for (std::size_t i = 0; i < lc.w_count; ++i) count *= static_cast<double>(lc.sigma_w);
  if (count > static_cast<double>(cap))
    throw CapExceeded("label_cover_optimum: " + std::to_string(count) +
                      " labelings exceed the enumeration cap " + std::to_string(cap));
  Labeling cur{std::vector<std::uint32_t>(lc.v_count, 0),
               std::vector<std::uint32_t>(lc.w_count, 0)};
  double best = -1.0;
  while (true) {
    const double val = evaluate_labeling(lc, cur);
    if (val > best) {
      best = val;
      if (argmax) *argmax = cur;
    }
    // Odometer increment over (v labels, then w labels).
    std::size_t i = 0;
    for (; i < lc.v_count + lc.w_count; ++i) {
      auto& slot = i < lc.v_count ? cur.v_labels[i] : cur.w_labels[i - lc.v_count];
      const std::size_t radix = i < lc.v_count ? lc.sigma_v : lc.sigma_w;
      if (++slot < radix) break;
      slot = 0;
    }
    if (i == lc.v_count + lc.w_count) break;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Max-3SAT(5) -> Label Cover

/// Label index of a clause's satisfying assignment. Bit 2 is the truth of
/// literal 1, bit 1 of literal 2, bit 0 of literal 3; the seven satisfying
/// patterns 1..7 map to labels 0..6.
inline std::uint32_t clause_label(bool lit1, bool lit2, bool lit3) {
  const unsigned bits = (lit1 ? 4u : 0u) | (lit2 ? 2u : 0u) | (lit3 ? 1u : 0u);
  if (bits == 0) throw InvalidArgument("clause_label: all-false pattern does not satisfy the clause");
  return bits - 1;
}

/// Truth of literal `pos` (0..2) under clause label `label`.
inline bool clause_label_literal(std::uint32_t label, std::size_t pos) {
  return (((label + 1) >> (2 - pos)) & 1u) != 0;
}

/// V = clauses, W = variables; one edge per (clause, variable-in-clause)
/// incidence in clause-major order. W labels: 0 = false, 1 = true.
inline LabelCoverInstance sat_to_labelcover(const CnfFormula& f) {
  const auto rep = validate_3sat5(f);
  if (!rep.ok()) throw InvalidArgument("sat_to_labelcover: not a 3SAT(5) formula: " + rep.violations.front());
  LabelCoverInstance lc;
  lc.v_count = f.clauses.size();
  lc.w_count = f.num_vars;
  lc.sigma_v = 7;
  lc.sigma_w = 2;
  for (std::size_t c = 0; c < f.clauses.size(); ++c) {
    for (std::size_t pos = 0; pos < 3; ++pos) {
      const int lit = f.clauses[c][pos];
      LabelCoverEdge e;
      e.v = c;
      e.w = CnfFormula::var_of(lit) - 1;
      e.pi.resize(7);
      for (std::uint32_t label = 0; label < 7; ++label) {
        const bool lit_true = clause_label_literal(label, pos);
        e.pi[label] = (lit > 0 ? lit_true : !lit_true) ? 1u : 0u;
      }
      lc.edges.push_back(std::move(e));
    }
  }
  lc.validate();
  return lc;
}

/// The labeling induced by a variable assignment. Clauses the assignment
/// falsifies get label 0.
inline Labeling labeling_from_assignment(const CnfFormula& f, const std::vector<bool>& assignment) {
  if (assignment.size() != f.num_vars) throw InvalidArgument("assignment size != variable count");
  Labeling s;
  for (const auto& c : f.clauses) {
    const bool a = literal_value(c[0], assignment), b = literal_value(c[1], assignment),
               d = literal_value(c[2], assignment);
    s.v_labels.push_back((a || b || d) ? clause_label(a, b, d) : 0u);
  }
  for (bool x : assignment) s.w_labels.push_back(x ? 1u : 0u);
  return s;
}

/// Some satisfying assignment by exhaustive search (num_vars <= 24).
inline bool find_satisfying_assignment(const CnfFormula& f, std::vector<bool>& out) {
  if (f.num_vars > 24) throw CapExceeded("find_satisfying_assignment: more than 24 variables");
  std::vector<bool> a(f.num_vars);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << f.num_vars); ++mask) {
    for (std::size_t v = 0; v < f.num_vars; ++v) a[v] = (mask >> v) & 1u;
    if (satisfies(f, a)) {
      out = a;
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Parallel repetition

/// Default limit on projection-table entries |E|^l * sigma_v^l for repeat().
inline constexpr std::uint64_t kDefaultRepeatCap = 200'000'000;

namespace detail {

inline std::uint64_t checked_pow(std::uint64_t base, unsigned exp, std::uint64_t cap,
                                 const char* what) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base)
      throw CapExceeded(std::string("repeat: ") + what + " exceeds the size cap");
    r *= base;
  }
  return r;
}

}  // namespace detail

/// The l-fold product instance. Tuples of vertices, labels and edges are
/// encoded as mixed-radix integers with coordinate 1 most significant.
inline LabelCoverInstance repeat(const LabelCoverInstance& lc, unsigned ell,
                                 std::uint64_t cap = kDefaultRepeatCap) {
  if (ell < 1) throw InvalidArgument("repeat: ell must be >= 1");
  lc.validate();
  const std::uint64_t ne = detail::checked_pow(lc.edges.size(), ell, cap, "edge count");
  const std::uint64_t sv = detail::checked_pow(lc.sigma_v, ell, cap, "V alphabet");
  const std::uint64_t sw = detail::checked_pow(lc.sigma_w, ell, cap, "W alphabet");
  if (sv > UINT32_MAX || sw > UINT32_MAX) throw CapExceeded("repeat: alphabet exceeds 32-bit labels");
  if (ne > cap / sv) throw CapExceeded("repeat: projection tables exceed the size cap");

  LabelCoverInstance out;
  out.v_count = detail::checked_pow(lc.v_count, ell, cap, "V count");
  out.w_count = detail::checked_pow(lc.w_count, ell, cap, "W count");
  out.sigma_v = sv;
  out.sigma_w = sw;
  out.edges.resize(ne);

  std::vector<std::size_t> coord(ell);
  for (std::uint64_t t = 0; t < ne; ++t) {
    std::uint64_t rem = t;
    for (unsigned j = ell; j-- > 0;) {
      coord[j] = rem % lc.edges.size();
      rem /= lc.edges.size();
    }
    LabelCoverEdge& e = out.edges[t];
    for (unsigned j = 0; j < ell; ++j) {
      e.v = e.v * lc.v_count + lc.edges[coord[j]].v;
      e.w = e.w * lc.w_count + lc.edges[coord[j]].w;
    }
    e.pi.resize(sv);
    for (std::uint64_t label = 0; label < sv; ++label) {
      std::uint64_t lrem = label;
      std::uint64_t place = 1;
      std::uint64_t image = 0;
      for (unsigned j = ell; j-- > 0;) {
        const auto li = lrem % lc.sigma_v;
        lrem /= lc.sigma_v;
        image += lc.edges[coord[j]].pi[li] * place;
        place *= lc.sigma_w;
      }
      e.pi[label] = static_cast<std::uint32_t>(image);
    }
  }
  return out;
}

/// Coordinatewise lift of a base labeling to the l-fold instance.
inline Labeling repeat_labeling(const LabelCoverInstance& base, const Labeling& s, unsigned ell) {
  validate_labeling(base, s);
  auto lift = [ell](const std::vector<std::uint32_t>& labels, std::size_t count, std::size_t sigma) {
    std::uint64_t total = 1;
    for (unsigned j = 0; j < ell; ++j) total *= count;
    std::vector<std::uint32_t> out(total);
    for (std::uint64_t t = 0; t < total; ++t) {
      std::uint64_t rem = t, place = 1, value = 0;
      for (unsigned j = ell; j-- > 0;) {
        value += labels[rem % count] * place;
        rem /= count;
        place *= sigma;
      }
      out[t] = static_cast<std::uint32_t>(value);
    }
    return out;
  };
  return {lift(s.v_labels, base.v_count, base.sigma_v), lift(s.w_labels, base.w_count, base.sigma_w)};
}

}  // namespace maxvol
