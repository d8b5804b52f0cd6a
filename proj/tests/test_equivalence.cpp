#include "gbis/equivalence.hpp"
#include "gbis/sdp_model.hpp"
#include "gbis/sdp_solver.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace gbis;

namespace {

BisectionInstance random_instance(std::mt19937& rng, int n, double p) {
  std::bernoulli_distribution edge(p);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (edge(rng)) edges.push_back({i, j, 1.0});
  const int m2 = 1 + int(rng() % ((n - 1) / 2));
  return BisectionInstance(Graph(n, edges), n - m2, m2);
}

// Convex combination of random integer points: feasible for New.
Matrix random_new_point(std::mt19937& rng, const BisectionInstance& inst, int terms) {
  const int n = inst.n();
  std::vector<double> w(terms);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (double& v : w) v = u(rng);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  Matrix x = Matrix::Zero(n, n);
  std::vector<int> order(n);
  for (int t = 0; t < terms; ++t) {
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    Vector z = Vector::Zero(n);
    for (int i = 0; i < inst.m1; ++i) z[order[i]] = 1.0;
    x += (w[t] / total) * z * z.transpose();
  }
  return x;
}

Matrix block(const Matrix& y, int r, int c, int n) { return y.block(1 + r * n, 1 + c * n, n, n); }

}  // namespace

TEST(Lift, IntegerPointMatchesWzIntegerPoint) {
  const BisectionInstance inst(Graph(5, {{0, 1, 1}, {1, 2, 1}, {3, 4, 1}}), 3, 2);
  const Assignment a({1, 1, 2, 1, 2});
  const Matrix y = lift_new_to_wz(inst, integer_point(RelaxationKind::New, inst, a));
  EXPECT_LT((y - integer_point(RelaxationKind::WZ, inst, a)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Lift, InteriorPointBlocks) {
  const int n = 7, m1 = 4, m2 = 3;
  const BisectionInstance inst(Graph(n, {{0, 1, 1}}), m1, m2);
  const Matrix x = strictly_feasible_point(inst);
  const Matrix y = lift_new_to_wz(inst, x);
  const Matrix j = Matrix::Ones(n, n);
  EXPECT_NEAR((j.array() * block(y, 1, 1, n).array()).sum(), double(m2) * m2, 1e-12);
  EXPECT_NEAR(block(y, 1, 1, n).trace(), m2, 1e-12);
  EXPECT_NEAR((j.array() * block(y, 0, 1, n).array()).sum(), double(m1) * m2, 1e-12);
  for (int i = 0; i < n; ++i) EXPECT_NEAR(block(y, 0, 1, n)(i, i), 0.0, 1e-15);
  EXPECT_TRUE(check_feasibility(build_wz(inst), y, 1e-9).pass);
}

TEST(Lift, RejectsInfeasibleInput) {
  const BisectionInstance inst(Graph(4, {{0, 1, 1}}), 2, 2);
  EXPECT_THROW(lift_new_to_wz(inst, Matrix::Identity(4, 4)), std::invalid_argument);
  EXPECT_THROW(project_wz_to_new(inst, Matrix::Identity(9, 9)), std::invalid_argument);
}

TEST(LiftProperty, FeasibleRoundTripAndObjective) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const auto inst = random_instance(rng, 5 + trial % 7, 0.5);
    const int n = inst.n();
    const Matrix x = random_new_point(rng, inst, 1 + trial % 4);
    ASSERT_TRUE(check_feasibility(build_new(inst), x, 1e-9).pass);

    const Matrix y = lift_new_to_wz(inst, x);
    const ConicProblem wz = build_wz(inst);
    const FeasibilityReport rep = check_feasibility(wz, y, 1e-9);
    EXPECT_TRUE(rep.pass) << rep.max_residual() << " " << rep.lambda_min;

    // PSD witnessed by random quadratic forms on the Y block
    std::normal_distribution<double> nd;
    for (int s = 0; s < 10; ++s) {
      Vector v(2 * n + 1);
      for (int i = 0; i <= 2 * n; ++i) v[i] = nd(rng);
      EXPECT_GE(v.dot(y * v), -1e-10);
    }

    EXPECT_LT((project_wz_to_new(inst, y) - x).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_NEAR(wz.objective_value(y), build_new(inst).objective_value(x), 1e-10);

    const Matrix xb = project_wz_to_basic(inst, y);
    const ConicProblem basic = build_basic(inst);
    const Matrix m = 2 * xb - Matrix::Ones(n, n);
    EXPECT_TRUE(check_feasibility(basic, m, 1e-9).pass);
    EXPECT_NEAR(basic.objective_value(m), wz.objective_value(y), 1e-10);

    const FeasibilityReport ids = check_property8(y, inst.m1, inst.m2, 1e-10);
    EXPECT_TRUE(ids.pass);
    EXPECT_EQ(ids.residuals.size(), 5u);
  }
}

TEST(BlockIdentities, DetectsBrokenIdentity) {
  const BisectionInstance inst(Graph(4, {{0, 1, 1}}), 2, 2);
  Matrix y = integer_point(RelaxationKind::WZ, inst, Assignment({1, 2, 1, 2}));
  EXPECT_TRUE(check_property8(y, 2, 2, 1e-12).pass);
  y(1, 5) += 0.1;
  y(5, 1) += 0.1;
  const FeasibilityReport r = check_property8(y, 2, 2, 1e-12);
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.residuals.at("Y11+Y12=y1e'"), 0.1, 1e-15);
}

// X = aI + bJ: x = (a + b) e, and [[1, x'], [x, X]] is PSD exactly when
// a >= 0 and a + n b >= n (a + b)^2.
TEST(BorderedPsd, ScalarFamily) {
  const int n = 5;
  int bordered = 0, psd_not_bordered = 0;
  for (double a : {0.0, 0.1, 0.3, 0.5, 1.0})
    for (double b : {-0.05, 0.0, 0.02, 0.05, 0.1, 0.2}) {
      if (a + b <= 0) continue;
      const Matrix x = a * Matrix::Identity(n, n) + b * Matrix::Ones(n, n);
      const Prop2Check c = check_prop2(x);
      const double s = a + n * b - n * (a + b) * (a + b);
      EXPECT_NEAR(c.c, (a + n * b) / (a + b), 1e-12);
      EXPECT_TRUE(c.agree()) << a << " " << b;
      if (std::abs(s) > 1e-9) {
        EXPECT_EQ(c.bordered_psd, a >= 0 && s > 0) << a << " " << b;
      }
      bordered += c.bordered_psd;
      psd_not_bordered += (a + n * b >= 0) && !c.bordered_psd;
    }
  EXPECT_GT(bordered, 0);
  // PSD alone is not enough: the trace condition is what separates them.
  EXPECT_GT(psd_not_bordered, 0);
}

TEST(BorderedPsd, NewFeasiblePoints) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = random_instance(rng, 6 + trial % 4, 0.5);
    const Prop2Check c = check_prop2(random_new_point(rng, inst, 3));
    EXPECT_NEAR(c.c, inst.m1, 1e-10);
    EXPECT_TRUE(c.bordered_psd);
    EXPECT_TRUE(c.psd_and_trace);
  }
}

TEST(BorderedPsd, RejectsNonParallel) {
  Matrix x = Matrix::Identity(3, 3);
  x(0, 1) = x(1, 0) = 0.5;
  EXPECT_THROW(check_prop2(x), std::invalid_argument);
}

TEST(FullBqp, ContainsWzAndIntegerPoints) {
  const BisectionInstance inst(Graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}}), 2, 2);
  const ConicProblem full = build_wz_full_bqp(inst), wz = build_wz(inst);
  EXPECT_GT(full.inequalities().size(), wz.inequalities().size());
  for (const auto& c : wz.inequalities()) EXPECT_TRUE(full.has_label(c.label));
  const ConicProblem cuts = build_new_all_cuts(inst);
  // 4 * C(4,2) TriA-style rows (k free) and C(4,3) TriB rows
  EXPECT_EQ(cuts.inequalities().size(), build_new(inst).inequalities().size() + 12u + 4u);
  for (const auto& parts : std::vector<std::vector<int>>{{1, 1, 2, 2}, {1, 2, 1, 2}, {2, 1, 1, 2}}) {
    const Assignment a(parts);
    EXPECT_TRUE(check_feasibility(full, integer_point(RelaxationKind::WZ, inst, a), 1e-12).pass);
    EXPECT_TRUE(check_feasibility(cuts, integer_point(RelaxationKind::New, inst, a), 1e-12).pass);
  }
}

TEST(Equivalence, SolvedOptimaAgree) {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 3; ++trial) {
    const auto inst = random_instance(rng, 7 + trial, 0.5);
    const ConicProblem pn = build_new(inst), pw = build_wz(inst), pb = build_basic(inst);
    const ConicSolution sn = solve(pn), sw = solve(pw), sb = solve(pb);
    const double ln = safe_lower_bound(pn, sn).value, lw = safe_lower_bound(pw, sw).value;
    const double lb = safe_lower_bound(pb, sb).value;
    EXPECT_NEAR(ln, lw, 1e-5 * (1 + std::abs(ln)));
    EXPECT_LE(lb, sn.objective_primal + 1e-6);
    // the New optimum lifts to a WZ point with the same value
    const Matrix y = lift_new_to_wz(inst, sn.primal, 1e-5);
    EXPECT_NEAR(pw.objective_value(y), sn.objective_primal, 1e-9);
  }
}
