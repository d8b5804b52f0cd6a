#include "gbis/cuts.hpp"
#include "gbis/generators.hpp"
#include "gbis/sdp_model.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gbis;

namespace {

Matrix random_unit_sym(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> u(0, 1);
  Matrix x(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i) x(i, j) = x(j, i) = u(rng);
  return x;
}

// Every triangle, written out from the definitions.
std::vector<Cut> all_triangles(int n) {
  std::vector<Cut> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        out.push_back({CutKind::TriA, i, j, k, 0});
        if (k > j) out.push_back({CutKind::TriB, i, j, k, 0});
      }
  return out;
}

double direct_lhs(const Cut& c, const Matrix& x) {
  const int i = c.i, j = c.j, k = c.k;
  if (c.kind == CutKind::TriA) return x(i, k) + x(j, k) - x(k, k) - x(i, j);
  return x(i, i) + x(j, j) + x(k, k) - x(i, j) - x(i, k) - x(j, k) - 1.0;
}

}  // namespace

TEST(Cut, Labels) {
  EXPECT_EQ(cut_label({CutKind::TriA, 0, 1, 2, 0}), "bqp-cut(TriA,1,2,3)");
  EXPECT_EQ(cut_label({CutKind::TriB, 3, 5, 9, 0}), "bqp-cut(TriB,4,6,10)");
  EXPECT_EQ(to_string(CutKind::TriB), "TriB");
}

TEST(Cut, WorkedExamples) {
  // x = (1,1,0): X_ik + X_jk - X_kk - X_ij with k = 3 gives 0 + 0 - 0 - 1
  Vector z(3);
  z << 1, 1, 0;
  const Matrix x = z * z.transpose();
  EXPECT_EQ(cut_violation({CutKind::TriA, 0, 1, 2, 0}, x), -1.0);
  EXPECT_EQ(cut_violation({CutKind::TriB, 0, 1, 2, 0}, x), 0.0);
  // fractional point violating TriB: diag 0.5, off-diagonal 0
  const Matrix h = 0.5 * Matrix::Identity(3, 3);
  EXPECT_DOUBLE_EQ(cut_violation({CutKind::TriB, 0, 1, 2, 0}, h), 0.5);
  // X_13 = X_23 = 0.5, X_33 = 0.5, X_12 = 0 violates TriA(1,2,3) by 0.5
  Matrix a = Matrix::Zero(3, 3);
  a(0, 2) = a(2, 0) = a(1, 2) = a(2, 1) = 0.5;
  a(2, 2) = 0.5;
  EXPECT_DOUBLE_EQ(cut_violation({CutKind::TriA, 0, 1, 2, 0}, a), 0.5);
}

TEST(Cut, CoeffMatchesDefinition) {
  std::mt19937 rng(1);
  const Matrix x = random_unit_sym(rng, 6);
  for (const Cut& c : all_triangles(6)) {
    EXPECT_NEAR(cut_coeff(c).dot(x) - cut_rhs(c), direct_lhs(c, x), 1e-14);
    EXPECT_NEAR(cut_violation(c, x), direct_lhs(c, x), 1e-14);
  }
}

TEST(Cut, Validation) {
  EXPECT_NO_THROW(validate_cut({CutKind::TriA, 0, 1, 2, 0}, 3));
  EXPECT_NO_THROW(validate_cut({CutKind::TriA, 1, 2, 0, 0}, 3));
  EXPECT_THROW(validate_cut({CutKind::TriA, 1, 0, 2, 0}, 3), std::invalid_argument);
  EXPECT_THROW(validate_cut({CutKind::TriA, 0, 1, 1, 0}, 3), std::invalid_argument);
  EXPECT_THROW(validate_cut({CutKind::TriB, 0, 2, 1, 0}, 3), std::invalid_argument);
  EXPECT_THROW(validate_cut({CutKind::TriB, 0, 1, 3, 0}, 3), std::invalid_argument);
}

TEST(CutProperty, ValidOnIntegerPoints) {
  for (int n : {3, 4, 6}) {
    const auto tris = all_triangles(n);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      Vector z(n);
      for (int i = 0; i < n; ++i) z[i] = (mask >> i) & 1u;
      const Matrix x = z * z.transpose();
      for (const Cut& c : tris) ASSERT_LE(cut_violation(c, x), 0.0);
    }
  }
}

TEST(Separate, ExhaustiveAndSorted) {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4 + trial;
    const Matrix x = random_unit_sym(rng, n);
    std::vector<Cut> expect;
    for (Cut c : all_triangles(n)) {
      c.violation = direct_lhs(c, x);
      if (c.violation > 1e-6) expect.push_back(c);
    }
    const auto got = separate(x);
    ASSERT_EQ(got.size(), expect.size());
    for (std::size_t t = 1; t < got.size(); ++t) {
      EXPECT_GE(got[t - 1].violation, got[t].violation);
      if (got[t - 1].violation == got[t].violation) {
        EXPECT_LT(got[t - 1].key(), got[t].key());
      }
    }
    std::set<std::tuple<int, int, int, int>> a, b;
    for (const Cut& c : got) a.insert(c.key());
    for (const Cut& c : expect) b.insert(c.key());
    EXPECT_EQ(a, b);

    const auto top = separate(x, 5);
    ASSERT_EQ(top.size(), std::min<std::size_t>(5, got.size()));
    for (std::size_t t = 0; t < top.size(); ++t) EXPECT_EQ(top[t].key(), got[t].key());
  }
}

TEST(Separate, RespectsEpsilon) {
  Matrix x = 0.5 * Matrix::Identity(3, 3);
  EXPECT_EQ(separate(x, 10, 0.49).size(), 1u);
  EXPECT_TRUE(separate(x, 10, 0.5).empty());
}

TEST(CutPool, DeduplicatesAndCaps) {
  CutPool pool(3, 2);
  const Cut a{CutKind::TriA, 0, 1, 2, 0.3}, b{CutKind::TriB, 0, 1, 2, 0.1}, c{CutKind::TriA, 0, 2, 1, 0.1};
  EXPECT_TRUE(pool.add(a, 1));
  EXPECT_FALSE(pool.add(a, 2));
  EXPECT_TRUE(pool.add(b, 2));
  EXPECT_TRUE(pool.full());
  EXPECT_FALSE(pool.add(c, 3));
  EXPECT_EQ(pool.size(), 2u);
  EXPECT_EQ(pool.entries()[1].round, 2);
  EXPECT_EQ(CutPool(10).cap(), 400u);
  EXPECT_THROW(CutPool(2), std::invalid_argument);
}

TEST(AppendCuts, SkipsDuplicates) {
  const BisectionInstance inst(Graph(4, {{0, 1, 1}, {2, 3, 1}}), 2, 2);
  ConicProblem p = build_new(inst);
  const std::size_t base = p.inequalities().size();
  const std::vector<Cut> cuts{{CutKind::TriA, 0, 1, 2, 0}, {CutKind::TriB, 0, 1, 3, 0}};
  EXPECT_EQ(append_cuts(p, cuts), 2u);
  EXPECT_EQ(append_cuts(p, cuts), 0u);
  EXPECT_EQ(p.inequalities().size(), base + 2);
  EXPECT_TRUE(p.has_label("bqp-cut(TriB,1,2,4)"));
}

TEST(CeilBound, Rules) {
  EXPECT_EQ(ceil_bound(5.6353, true), 6.0);
  EXPECT_EQ(ceil_bound(4.9999999, true), 5.0);
  EXPECT_EQ(ceil_bound(5.0000001, true), 5.0);
  EXPECT_EQ(ceil_bound(5.00001, true), 6.0);
  EXPECT_FALSE(ceil_bound(5.5, false).has_value());
}

TEST(Loop, ConfigValidation) {
  LoopConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.max_rounds = -1;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Loop, EmptyGraphStopsImmediately) {
  const BisectionInstance inst(Graph(5, {}), 3, 2);
  const LoopResult r = cutting_plane_loop(inst);
  ASSERT_FALSE(r.rounds.empty());
  EXPECT_NEAR(r.certified, 0.0, 1e-6);
  EXPECT_EQ(r.ceiled, 0.0);
}

TEST(Loop, PappusReachesSeven) {
  const BisectionInstance inst(GraphRegistry::builtin().generate("pappus"), 10, 8);
  const LoopResult r = cutting_plane_loop(inst);
  ASSERT_GE(r.rounds.size(), 2u);
  EXPECT_EQ(r.rounds.front().round, 0);
  EXPECT_EQ(ceil_bound(r.rounds.front().safe_bound, true), 6.0);
  EXPECT_EQ(r.ceiled, 7.0);
  for (std::size_t t = 1; t < r.rounds.size(); ++t) {
    EXPECT_GE(r.rounds[t].safe_bound, r.rounds[t - 1].safe_bound - 1e-6);
    EXPECT_GE(r.rounds[t].cuts_total, r.rounds[t - 1].cuts_total);
  }
  EXPECT_LE(r.certified, 8.0);
}

TEST(Loop, Deterministic) {
  std::mt19937 rng(6);
  std::vector<Edge> edges;
  for (int i = 0; i < 10; ++i)
    for (int j = i + 1; j < 10; ++j)
      if (rng() % 2) edges.push_back({i, j, 1.0});
  const BisectionInstance inst(Graph(10, edges), 6, 4);
  LoopConfig cfg;
  cfg.max_rounds = 3;
  const LoopResult a = cutting_plane_loop(inst, cfg), b = cutting_plane_loop(inst, cfg);
  ASSERT_EQ(a.rounds.size(), b.rounds.size());
  for (std::size_t t = 0; t < a.rounds.size(); ++t) {
    EXPECT_EQ(a.rounds[t].safe_bound, b.rounds[t].safe_bound);
    EXPECT_EQ(a.rounds[t].cuts_total, b.rounds[t].cuts_total);
  }
  EXPECT_EQ(a.stop_reason, b.stop_reason);
}
