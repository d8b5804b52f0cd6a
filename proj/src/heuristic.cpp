#include "gbis/heuristic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace gbis {

void TabuConfig::validate() const {
  if (max_iters < 0 || tenure < 0 || restarts < 1) throw std::invalid_argument("tabu parameters must be positive");
}

SwapState::SwapState(const BisectionInstance& inst, const Assignment& a)
    : n_(inst.n()), w_(inst.graph.adjacency()), adj_(inst.n()), part_(a.parts()), d_(inst.n(), 0.0) {
  a.validate(inst);
  for (const auto& e : inst.graph.edges()) {
    adj_[e.u].push_back({e.v, e.w});
    adj_[e.v].push_back({e.u, e.w});
  }
  for (int x = 0; x < n_; ++x)
    for (const auto& [y, w] : adj_[x]) {
      const bool cross = part_[x] != part_[y];
      d_[x] += cross ? w : -w;
      if (cross && x < y) cut_ += w;
    }
}

double SwapState::delta(int u, int v) const { return -(d_[u] + d_[v] - 2.0 * w_(u, v)); }

void SwapState::move(int x) {
  for (const auto& [y, w] : adj_[x]) d_[y] += part_[y] == part_[x] ? 2.0 * w : -2.0 * w;
  d_[x] = -d_[x];
  part_[x] = 3 - part_[x];
}

void SwapState::apply(int u, int v) {
  if (part_[u] != 1 || part_[v] != 2) throw std::invalid_argument("swap expects u in part 1 and v in part 2");
  cut_ += delta(u, v);
  move(u);
  move(v);
}

namespace {

HeuristicResult one_restart(const BisectionInstance& inst, long long iters, int tenure, std::uint64_t seed, int r) {
  const int n = inst.n();
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(r)};
  std::mt19937_64 rng(seq);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> parts(n, 2);
  for (int i = 0; i < inst.m1; ++i) parts[order[i]] = 1;

  SwapState st(inst, Assignment(parts));
  HeuristicResult best{st.assignment(), st.cut()};
  std::vector<long long> tabu_until(n, -1);
  // Exact improvements are compared with a small slack so that float noise
  // in the incremental cut never counts as progress.
  const double slack = 1e-9 * (1.0 + inst.graph.total_weight());

  for (long long it = 0; it < iters; ++it) {
    int bu = -1, bv = -1, fu = -1, fv = -1;
    double bd = std::numeric_limits<double>::infinity(), fd = bd;
    for (int u = 0; u < n; ++u) {
      if (st.parts()[u] != 1) continue;
      for (int v = 0; v < n; ++v) {
        if (st.parts()[v] != 2) continue;
        const double d = st.delta(u, v);
        if (d < fd) fd = d, fu = u, fv = v;
        const bool tabu = tabu_until[u] > it || tabu_until[v] > it;
        const bool aspire = st.cut() + d < best.cut - slack;
        if ((!tabu || aspire) && d < bd) bd = d, bu = u, bv = v;
      }
    }
    if (bu < 0) bu = fu, bv = fv;
    if (bu < 0) break;
    st.apply(bu, bv);
    tabu_until[bu] = tabu_until[bv] = it + tenure;
    if (st.cut() < best.cut - slack) best = {st.assignment(), st.cut()};
  }
  best.cut = cut_value(inst, best.assignment);
  return best;
}

}  // namespace

HeuristicResult tabu_search(const BisectionInstance& inst, const TabuConfig& cfg) {
  cfg.validate();
  const int n = inst.n();
  const long long iters = cfg.max_iters > 0 ? cfg.max_iters : 2000LL * n;
  const int tenure =
      cfg.tenure > 0 ? cfg.tenure : std::clamp(static_cast<int>(std::lround(0.1 * n)), 5, 50);

  std::vector<HeuristicResult> runs(cfg.restarts, HeuristicResult{Assignment(std::vector<int>{}), 0.0});
#pragma omp parallel for schedule(dynamic, 1)
  for (int r = 0; r < cfg.restarts; ++r) runs[r] = one_restart(inst, iters, tenure, cfg.seed, r);

  std::size_t pick = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].cut < runs[pick].cut) pick = r;
  return runs[pick];
}

HeuristicResult brute_force(const BisectionInstance& inst) {
  const int n = inst.n(), m1 = inst.m1;
  if (n > 24) throw InstanceError("brute_force supports n <= 24, got " + std::to_string(n));
  const auto& edges = inst.graph.edges();

  // Lexicographic enumeration of m1-subsets; strict improvement keeps the
  // first (smallest) optimal set.
  std::vector<int> comb(m1);
  std::iota(comb.begin(), comb.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_set;
  for (;;) {
    std::uint32_t mask = 0;
    for (int v : comb) mask |= 1u << v;
    double cut = 0.0;
    for (const auto& e : edges)
      if (((mask >> e.u) ^ (mask >> e.v)) & 1u) cut += e.w;
    if (cut < best) best = cut, best_set = comb;

    int i = m1 - 1;
    while (i >= 0 && comb[i] == n - m1 + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < m1; ++j) comb[j] = comb[j - 1] + 1;
  }
  Assignment a = Assignment::from_part1(n, best_set);
  return {a, cut_value(inst, a)};
}

}  // namespace gbis
