#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "maxvol/maxvol.hpp"
#include "oracle.hpp"

using namespace maxvol;

namespace {

CnfFormula fixture() {
  std::ifstream in(oracle::data_path("fixture_3sat5.cnf"));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_dimacs(ss.str());
}

MaxVolInstance fixture_instance() { return build_maxvol_instance(sat_to_labelcover(fixture()), 1); }

Labeling satisfying() { return labeling_from_assignment(fixture(), {false, false, false}); }

}  // namespace

TEST(CheckGadget, PassesForSmallOrders) {
  for (unsigned m = 2; m <= 8; ++m) {
    const auto r = check_gadget(build_gadget(m));
    EXPECT_TRUE(r.pass) << m;
    EXPECT_EQ(r.lhs, 0.0);
  }
}

TEST(CheckGadget, CorruptedRowFails) {
  auto g = build_gadget(3);
  g.rows[2][5] ^= 1;
  const auto r = check_gadget(g);
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.lhs, 0.0);
}

TEST(CheckCompleteness, FixturePasses) {
  const auto r = check_completeness(fixture_instance(), satisfying());
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.lhs, 1.0, 1e-12);
  EXPECT_LE(r.context["max_abs_dot"].get<double>(), 1e-12);
}

TEST(CheckCompleteness, SingleEdgeToyPasses) {
  const auto inst = build_maxvol_instance(toy_label_cover_instances()[0].lc, 1);
  EXPECT_TRUE(check_completeness(inst, {{1}, {1}}).pass);
  EXPECT_TRUE(check_completeness(inst, {{0}, {0}}).pass);
}

TEST(CheckCompleteness, BrokenEdge) {
  const auto inst = fixture_instance();
  auto s = satisfying();
  // Clause 0 is (-1 2 3); label 6 (pattern 111) sets x1 true on its first edge.
  s.v_labels[0] = 6;
  ASSERT_LT(evaluate_labeling(inst.source, s), 1.0);
  EXPECT_THROW(check_completeness(inst, s), PreconditionError);
  const auto ortho = check_selection_orthogonality(inst.matrix, labeling_to_selection(inst, s));
  EXPECT_FALSE(ortho.pass);
  EXPECT_NEAR(ortho.lhs, 1.0 / (2.0 * std::sqrt(15.0)), 1e-12);
}

TEST(CheckUnsatEdgeDot, AllTriplesAtEllOne) {
  const auto inst = fixture_instance();
  std::size_t n = 0;
  for (std::size_t e = 0; e < inst.source.edges.size(); ++e)
    for (std::uint32_t i = 0; i < 7; ++i)
      for (std::uint32_t j = 0; j < 2; ++j) {
        if (edge_satisfied(inst.source.edges[e], i, j)) {
          EXPECT_THROW(check_unsat_edge_dot(inst, e, i, j), PreconditionError);
          continue;
        }
        const auto r = check_unsat_edge_dot(inst, e, i, j);
        EXPECT_TRUE(r.pass);
        EXPECT_NEAR(r.lhs, 0.1290994448735806, 1e-12);
        ++n;
      }
  EXPECT_EQ(n, 15u * 7u);
}

TEST(CheckUnsatEdgeDot, EllTwo) {
  const auto lc = repeat(sat_to_labelcover(fixture()), 2);
  const auto inst = build_maxvol_instance(lc, 2);
  for (std::size_t e : {0u, 17u, 224u})
    for (std::uint32_t i = 0; i < 49; i += 5)
      for (std::uint32_t j = 0; j < 4; ++j) {
        if (edge_satisfied(lc.edges[e], i, j)) continue;
        const auto r = check_unsat_edge_dot(inst, e, i, j);
        EXPECT_TRUE(r.pass);
        EXPECT_NEAR(r.lhs, 1.0 / 30.0, 1e-12);
      }
}

TEST(CheckUnion, Examples) {
  const auto id = DenseMatrix::identity(4);
  const auto eq = check_union_lemma(id, ColumnSelection({0, 1}), ColumnSelection({2, 3}));
  EXPECT_TRUE(eq.pass);
  EXPECT_NEAR(eq.lhs, eq.rhs, 1e-15);

  const auto a = DenseMatrix::from_rows({{1.0, 0.0, 2.0}, {0.0, 1.0, 3.0}, {0.0, 0.0, 0.0}});
  const auto in_span = check_union_lemma(a, ColumnSelection({0, 1}), ColumnSelection({2}));
  EXPECT_TRUE(in_span.pass);
  EXPECT_EQ(in_span.lhs, 0.0);

  EXPECT_THROW(check_union_lemma(id, ColumnSelection({0, 1}), ColumnSelection({1})), InvalidArgument);
}

TEST(CheckUnion, RandomDraws) {
  Rng rng(31);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_gaussian_matrix(8, 8, rng);
    std::vector<std::size_t> perm(8);
    for (std::size_t i = 0; i < 8; ++i) perm[i] = i;
    for (std::size_t i = 8; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    const std::size_t qs = 1 + rng.below(4), ps = rng.below(8 - qs + 1);
    const auto p = ColumnSelection::from_unsorted({perm.begin(), perm.begin() + ps});
    const auto q = ColumnSelection::from_unsorted({perm.begin() + ps, perm.begin() + ps + qs});
    const auto r = check_union_lemma(a, p, q);
    ASSERT_TRUE(r.pass) << t;
    // Oracle: Gram-determinant volumes and least-squares distances.
    double rhs = oracle::gram_volume(a, {p.begin(), p.end()});
    for (auto c : q) rhs *= oracle::distance(oracle::to_eigen(a).col(c), oracle::columns(a, {p.begin(), p.end()}));
    EXPECT_NEAR(r.rhs, rhs, 1e-9 * std::max(1.0, rhs));
  }
}

TEST(SelectionStats, Examples) {
  const auto inst = fixture_instance();
  const auto sel = labeling_to_selection(inst, satisfying());
  auto st = selection_stats(inst, sel);
  EXPECT_EQ(st.d_v, 0u);
  EXPECT_EQ(st.d_w, 0u);
  EXPECT_EQ(st.k_v + st.k_w, inst.k);

  std::vector<std::size_t> cols(sel.begin(), sel.end());
  const std::size_t v = 2;
  const std::uint32_t other = (satisfying().v_labels[v] + 1) % 7;
  cols.push_back(inst.column_of(Side::V, v, other));
  st = selection_stats(inst, ColumnSelection::from_unsorted(cols));
  EXPECT_EQ(st.d_v, 1u);
  EXPECT_EQ(st.k_v, 6u);
  EXPECT_EQ(st.distinct_v.size(), 5u);
}

TEST(CheckDuplicateBound, Examples) {
  const auto inst = fixture_instance();
  const auto free = check_duplicate_bound(inst, labeling_to_selection(inst, satisfying()));
  EXPECT_TRUE(free.pass);
  EXPECT_EQ(free.context["bound_v"], 1.0);

  // Two labels of one clause vertex whose projections differ on every edge
  // meet at dot 1/2: distance sqrt(3)/2 exactly.
  const auto& lc = inst.source;
  std::uint32_t i = 0, j = 0;
  bool found = false;
  for (i = 0; i < 7 && !found; ++i)
    for (j = i + 1; j < 7 && !found; ++j) {
      bool all_differ = true;
      for (const auto& e : lc.edges)
        if (e.v == 0) all_differ = all_differ && e.pi[i] != e.pi[j];
      found = all_differ;
    }
  ASSERT_TRUE(found);
  --i;
  --j;
  const auto s = ColumnSelection::from_unsorted({inst.column_of(Side::V, 0, i), inst.column_of(Side::V, 0, j)});
  const auto r = check_duplicate_bound(inst, s);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.context["vol_v"].get<double>(), std::sqrt(3.0) / 2.0, 1e-12);
  EXPECT_NEAR(r.context["bound_v"].get<double>(), 0.8660254037844386, 1e-15);
}

TEST(CheckDuplicateBound, RandomDuplicateHeavy) {
  const auto inst = fixture_instance();
  Rng rng(32);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::size_t> cols;
    const std::size_t v = rng.below(5), w = rng.below(3);
    cols.push_back(inst.column_of(Side::V, v, 0));
    cols.push_back(inst.column_of(Side::V, v, 1 + rng.below(6)));
    cols.push_back(inst.column_of(Side::W, w, 0));
    cols.push_back(inst.column_of(Side::W, w, 1));
    for (int extra = 0; extra < 4; ++extra) cols.push_back(rng.below(inst.matrix.cols()));
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    const auto s = ColumnSelection(cols);
    const auto r = check_duplicate_bound(inst, s);
    EXPECT_TRUE(r.pass) << t;
    EXPECT_GE(r.context["d_v"].get<std::size_t>(), 1u);
    EXPECT_GE(r.context["d_w"].get<std::size_t>(), 1u);
  }
}

TEST(CheckGreedyRatio, Examples) {
  const auto id = check_greedy_ratio(DenseMatrix::identity(4), 2);
  EXPECT_TRUE(id.pass);
  EXPECT_EQ(id.context["greedy_volume"], id.context["exact_volume"]);
  const auto tv = check_greedy_ratio(oracle::three_vectors(), 2);
  EXPECT_TRUE(tv.pass);
  EXPECT_DOUBLE_EQ(tv.lhs, 1.0);
  EXPECT_DOUBLE_EQ(tv.rhs, 0.5);
}

TEST(CheckGtBound, MaxVolumeBlockOnRandom) {
  Rng rng(33);
  for (int t = 0; t < 25; ++t) {
    const auto a = random_gaussian_matrix(4, 4, rng);
    Block b;
    const double best = max_block_volume(a, 2, &b);
    // Oracle: brute-force 2x2 determinants over C(4,2)^2 blocks.
    double ref = 0.0;
    for (const auto& ri : oracle::subsets(4, 2))
      for (const auto& ci : oracle::subsets(4, 2)) {
        const double d = a(ri[0], ci[0]) * a(ri[1], ci[1]) - a(ri[0], ci[1]) * a(ri[1], ci[0]);
        ref = std::max(ref, std::fabs(d));
      }
    EXPECT_NEAR(best, ref, 1e-12 * ref);
    const auto r = check_gt_bound(a, 2, b);
    EXPECT_TRUE(r.pass) << t;
    EXPECT_NEAR(r.context["mu"].get<double>(), 1.0, 1e-12);
  }
}

TEST(CheckGtBound, DiagonalTopBlock) {
  const auto rank2 = DenseMatrix::from_rows({{4, 0, 0, 0}, {0, 3, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
  const auto r0 = check_gt_bound(rank2, 2, {{0, 1}, {0, 1}});
  EXPECT_TRUE(r0.pass);
  EXPECT_EQ(r0.lhs, 0.0);

  // Full rank: the Schur complement is diag(2, 1), so the residual is sigma_3.
  const auto a = DenseMatrix::from_rows({{4, 0, 0, 0}, {0, 3, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 1}});
  const auto r = check_gt_bound(a, 2, {{0, 1}, {0, 1}});
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.lhs, 2.0);
  EXPECT_NEAR(r.context["sigma_k_plus_1"].get<double>(), 2.0, 1e-14);
  EXPECT_NEAR(r.rhs, 6.0, 1e-13);
}

TEST(CheckGtBound, PoorBlockScalesMu) {
  Rng rng(34);
  for (int t = 0; t < 25; ++t) {
    const auto a = random_gaussian_matrix(5, 5, rng);
    const auto r = check_gt_bound(a, 2, {{3, 4}, {0, 2}});
    EXPECT_TRUE(r.pass) << t;
    EXPECT_GE(r.context["mu"].get<double>(), 1.0);
  }
  EXPECT_THROW(check_gt_bound(DenseMatrix::identity(3), 2, {{0, 1}, {1, 2}}), InvalidArgument);
}

TEST(CheckPanBounds, Examples) {
  const auto id = DenseMatrix::identity(5);
  const auto r = check_pan_bounds(id, 2, 1.0);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.context["sigma_min_R11"].get<double>(), 1.0, 1e-14);

  Rng rng(35);
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(oracle::to_eigen(random_gaussian_matrix(6, 6, rng)))
                                .householderQ();
  DenseMatrix orth(6, 6);
  for (int c = 0; c < 6; ++c)
    for (int r2 = 0; r2 < 6; ++r2) orth.set(r2, c, q(r2, c));
  const auto ro = check_pan_bounds(orth, 3, 1.0);
  EXPECT_TRUE(ro.pass);
  EXPECT_NEAR(ro.context["sigma_min_R11"].get<double>(), 1.0, 1e-12);
}

TEST(CheckPanBounds, RandomAfterLocalSearch) {
  Rng rng(36);
  for (int t = 0; t < 25; ++t) {
    const auto a = random_gaussian_matrix(6, 6, rng);
    const auto r = check_pan_bounds(a, 2, 1.0);
    EXPECT_TRUE(r.pass) << t;
    const auto ref = oracle::singular_values(a);
    const double f = std::sqrt(2.0 * 4.0 + 1.0);
    EXPECT_NEAR(r.context["sigma_k_over_f"].get<double>(), ref[1] / f, 1e-10);
  }
}

TEST(CheckPanBounds, RejectsNonLocalMaximum) {
  const auto a = DenseMatrix::from_rows({{1.0, 0.0, 0.8}, {0.0, 1.0, 0.6}, {0.0, 0.0, 0.0}});
  EXPECT_THROW(check_pan_bounds(a, 2, 1.0, ColumnSelection({0, 2})), PreconditionError);
}

TEST(SoundnessProbe, ToySuite) {
  std::size_t passing = 0;
  for (const auto& toy : toy_label_cover_instances()) {
    const auto inst = build_maxvol_instance(toy.lc, 1);
    ASSERT_LE(inst.matrix.cols(), 20u) << toy.name;
    const auto r = brute_force_soundness_probe(toy.lc, 1);
    EXPECT_TRUE(r.pass) << toy.name;
    if (r.rhs == 1.0)
      EXPECT_NEAR(r.lhs, 1.0, 1e-9) << toy.name;
    else
      EXPECT_LT(r.lhs, 1.0 - 1e-6) << toy.name;
    // Oracle: Gram-determinant maximum over all k-subsets.
    EXPECT_NEAR(r.lhs, oracle::max_volume(inst.matrix, inst.k), 1e-9) << toy.name;
    passing += r.pass;
  }
  EXPECT_GE(passing, 5u);
}

TEST(Reports, Reproducible) {
  Rng r1(40), r2(40);
  const auto a = random_gaussian_matrix(6, 6, r1), b = random_gaussian_matrix(6, 6, r2);
  EXPECT_EQ(to_json(check_pan_bounds(a, 2, 1.0)).dump(), to_json(check_pan_bounds(b, 2, 1.0)).dump());
  EXPECT_EQ(to_json(check_greedy_ratio(a, 3)).dump(), to_json(check_greedy_ratio(b, 3)).dump());
}
