// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Set GBIS_ACCEPT_BIGGS_SMITH=1 to include the long Biggs-Smith run.

#include "gbis/cuts.hpp"
#include "gbis/equivalence.hpp"
#include "gbis/generators.hpp"
#include "gbis/heuristic.hpp"
#include "gbis/sdp_model.hpp"
#include "gbis/sdp_solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace gbis;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void verdict(int id, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  failures += !pass;
}

void note(const std::string& s) {
  std::printf("  %s\n", s.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

BisectionInstance random_instance(std::mt19937& rng, int n, double p) {
  std::bernoulli_distribution edge(p);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (edge(rng)) edges.push_back({i, j, 1.0});
  // m1 > m2 strictly
  const int m2 = 1 + int(rng() % ((n - 1) / 2));
  return BisectionInstance(Graph(n, edges), n - m2, m2);
}

// Minimum bisection by enumeration of every m1-subset.
double enumerate_min_cut(const BisectionInstance& inst) {
  const int n = inst.n();
  double best = 1e300;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != inst.m1) continue;
    double cut = 0;
    for (const auto& e : inst.graph.edges())
      if (((mask >> e.u) & 1u) != ((mask >> e.v) & 1u)) cut += e.w;
    best = std::min(best, cut);
  }
  return best;
}

struct Bound {
  bool ok = false;
  double safe = 0.0;
  double primal = 0.0;
};

Bound bound_of(const ConicProblem& p, const SolverConfig& cfg = {}) {
  const ConicSolution s = solve(p, cfg);
  Bound b;
  b.ok = s.status == SolveStatus::Optimal;
  b.safe = safe_lower_bound(p, s).value;
  b.primal = s.objective_primal;
  return b;
}

void criterion1() {
  struct Target {
    const char* name;
    int m1, m2;
    double plain, cut;
  };
  const Target targets[] = {{"pappus", 10, 8, 6, 7}, {"desargues", 15, 5, 5, 6}, {"johnson:7,2", 11, 10, 37, 40}};
  const auto& reg = GraphRegistry::builtin();
  bool pass = true;
  for (const Target& t : targets) {
    const auto t0 = Clock::now();
    const BisectionInstance inst(reg.generate(t.name), t.m1, t.m2, t.name);
    const LoopResult r = cutting_plane_loop(inst);
    const double secs = seconds_since(t0);
    const RoundRecord& first = r.rounds.front();
    const auto c0 = ceil_bound(first.safe_bound, true);
    const bool ok = first.status == SolveStatus::Optimal && c0 == t.plain && r.ceiled == t.cut && secs <= 60.0;
    note(std::string(t.name) + fmt(": round 0 %.9f -> %.0f, final %.9f -> %.0f", first.safe_bound, c0.value_or(-1),
                                   r.certified, r.ceiled.value_or(-1)) +
         fmt(" (target %.0f / %.0f), %.2f s, ", t.plain, t.cut, secs) + std::to_string(r.rounds.size() - 1) +
         " cut rounds, " + r.stop_reason);
    pass = pass && ok;
  }

  const char* env = std::getenv("GBIS_ACCEPT_BIGGS_SMITH");
  if (env && std::string(env) == "1") {
    const auto t0 = Clock::now();
    const BisectionInstance inst(reg.generate("biggs-smith"), 70, 32, "biggs-smith");
    const LoopResult r = cutting_plane_loop(inst);
    const double secs = seconds_since(t0);
    const bool ok = ceil_bound(r.rounds.front().safe_bound, true) == 10.0 && r.ceiled == 15.0 && secs <= 1800;
    note(fmt("biggs-smith (soft): round 0 %.6f, final %.6f -> %.0f (target 10 / 15), %.0f s", r.rounds.front().safe_bound,
             r.certified, r.ceiled.value_or(-1), secs) +
         (ok ? ", met" : ", not met"));
  } else {
    note("biggs-smith (soft): SKIP, set GBIS_ACCEPT_BIGGS_SMITH=1 to run");
  }
  verdict(1, pass, "Pappus, Desargues and J(7,2) ceiled bounds match, each within 60 s");
}

void criteria2and3() {
  std::mt19937 rng(2024);
  const double ps[] = {0.3, 0.5, 0.7};
  bool eq = true, dom = true;
  double worst_eq = 0, worst_dom = -1e300;
  for (int t = 0; t < 20; ++t) {
    const int n = 6 + int(rng() % 7);
    const auto inst = random_instance(rng, n, ps[t % 3]);
    const Bound b9 = bound_of(build_new(inst, true));
    const Bound b3 = bound_of(build_wz(inst));
    const Bound b2 = bound_of(build_basic(inst));
    const double ref = b9.safe;
    const double dev = std::abs(b9.safe - b3.safe) / (1 + std::abs(ref));
    worst_eq = std::max(worst_eq, dev);
    worst_dom = std::max(worst_dom, (b2.safe - b9.safe) / (1 + std::abs(ref)));
    eq = eq && b9.ok && b3.ok && dev <= 1e-5;
    dom = dom && b2.ok && b2.safe <= b9.safe + 1e-6 * (1 + std::abs(ref));
  }
  verdict(2, eq, fmt("20 instances, max |new - wz| / (1 + |bound|) = %.2e", worst_eq));
  verdict(3, dom, fmt("20 instances, max (basic - new) / (1 + |bound|) = %.2e", worst_dom));
}

void criterion4() {
  std::mt19937 rng(77);
  bool pass = true;
  double worst = 0;
  for (int t = 0; t < 5; ++t) {
    const int n = 6 + t % 3;
    const auto inst = random_instance(rng, n, 0.5);
    const Bound a = bound_of(build_wz_full_bqp(inst));
    const Bound b = bound_of(build_new_all_cuts(inst));
    const double dev = std::abs(a.primal - b.primal) / (1 + std::abs(b.primal));
    worst = std::max(worst, dev);
    pass = pass && a.ok && b.ok && dev <= 1e-5;
  }
  verdict(4, pass, fmt("5 instances n <= 8, max relative gap between lifted+facets and new+cuts = %.2e", worst));
}

void criterion5() {
  std::mt19937 rng(5150);
  const double ps[] = {0.3, 0.5, 0.7};
  int violations = 0;
  for (int t = 0; t < 30; ++t) {
    const int n = 6 + t % 9;
    const auto inst = random_instance(rng, n, ps[t % 3]);
    const double opt = enumerate_min_cut(inst);
    TabuConfig tc;
    tc.seed = std::uint64_t(t + 1);
    const double ub = tabu_search(inst, tc).cut;
    LoopConfig lc;
    lc.max_rounds = 5;
    const LoopResult r = cutting_plane_loop(inst, lc);
    double lb = *r.ceiled;
    for (RelaxationKind k : {RelaxationKind::Basic, RelaxationKind::WZ})
      lb = std::max(lb, *ceil_bound(bound_of(build(k, inst)).safe, true));
    if (!(lb <= opt && opt <= ub)) {
      ++violations;
      note(fmt("instance %.0f: lb %.0f, opt %.0f, ub %.0f", t, lb, opt, ub));
    }
  }
  verdict(5, violations == 0, "30 instances n <= 14, ceil(lb) <= brute force <= tabu, violations = " +
                                  std::to_string(violations));
}

void criterion6() {
  std::mt19937 rng(606);
  int mismatches = 0, checked = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 4 + int(rng() % 13);
    std::uniform_int_distribution<int> w(1, 5);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng() % 2) edges.push_back({i, j, double(w(rng))});
    const int m2 = 1 + int(rng() % (n / 2));
    const BisectionInstance inst(Graph(n, edges), n - m2, m2);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> parts(n, 2);
    for (int i = 0; i < inst.m1; ++i) parts[order[i]] = 1;
    const Assignment a(parts);
    double cut = 0;
    for (const auto& e : inst.graph.edges()) cut += parts[e.u] != parts[e.v] ? e.w : 0.0;
    for (RelaxationKind k : {RelaxationKind::Basic, RelaxationKind::New, RelaxationKind::NewBare,
                             RelaxationKind::WZ}) {
      ++checked;
      if (build(k, inst).objective_value(integer_point(k, inst, a)) != cut) ++mismatches;
    }
  }
  verdict(6, mismatches == 0, "100 assignments x 4 relaxations (" + std::to_string(checked) +
                                  " checks), objective == cut exactly, mismatches = " + std::to_string(mismatches));
}

void criterion7() {
  double worst_res = 0, worst_lambda = 1e300;
  int cases = 0;
  for (int n = 4; n <= 50; ++n) {
    const Graph g(n, {});
    for (int m2 = 2; 2 * m2 < n; ++m2) {
      const BisectionInstance inst(g, n - m2, m2);
      const Matrix x = strictly_feasible_point(inst);
      const ConicProblem p = build_new(inst, false);
      // long double accumulation so the check sees X, not summation error
      for (const auto& c : p.equalities()) {
        const Matrix a = c.coeff.dense(n);
        long double lhs = 0;
        for (int j = 0; j < n; ++j)
          for (int i = 0; i < n; ++i) lhs += static_cast<long double>(a(i, j)) * x(i, j);
        worst_res = std::max(worst_res, double(std::abs(lhs - c.rhs)));
      }
      worst_lambda = std::min(worst_lambda, min_eigenvalue(x));
      ++cases;
    }
  }
  verdict(7, worst_res <= 1e-12 && worst_lambda > 0,
          std::to_string(cases) + fmt(" (n, m) pairs, max residual %.1e, min eigenvalue %.3e", worst_res, worst_lambda));
}

void criterion8() {
  std::mt19937 rng(88);
  std::vector<Matrix> iterates;
  for (int t = 0; t < 5; ++t) {
    const auto inst = random_instance(rng, 8 + t, 0.5);
    const ConicProblem p = build_new(inst);
    SolverConfig early;
    early.max_iters = 3 + t;
    iterates.push_back(extract_x(RelaxationKind::New, solve(p, early).primal));
    iterates.push_back(extract_x(RelaxationKind::New, solve(p).primal));
  }
  int mismatched = 0;
  std::size_t total = 0;
  for (const Matrix& x : iterates) {
    const double eps = 1e-6;
    const int n = int(x.rows());
    std::set<std::tuple<int, int, int, int>> expect;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          if (k == i || k == j) continue;
          if (x(i, k) + x(j, k) - x(k, k) - x(i, j) > eps) expect.insert({0, i, j, k});
          if (k > j && x(i, i) + x(j, j) + x(k, k) - x(i, j) - x(i, k) - x(j, k) - 1.0 > eps)
            expect.insert({1, i, j, k});
        }
    std::set<std::tuple<int, int, int, int>> got;
    for (const Cut& c : separate(x, std::numeric_limits<std::size_t>::max(), eps)) got.insert(c.key());
    mismatched += got != expect;
    total += expect.size();
  }
  verdict(8, mismatched == 0, std::to_string(iterates.size()) + " iterates, " + std::to_string(total) +
                                  " violated triangles in total, mismatched iterates = " + std::to_string(mismatched));
}

void run(const std::function<void()>& f, int id) {
  try {
    f();
  } catch (const std::exception& e) {
    verdict(id, false, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main() {
  run(criterion1, 1);
  run(criteria2and3, 2);
  run(criterion4, 4);
  run(criterion5, 5);
  run(criterion6, 6);
  run(criterion7, 7);
  run(criterion8, 8);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
