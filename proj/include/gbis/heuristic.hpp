#pragma once

#include "gbis/graph.hpp"

#include <cstdint>
#include <vector>

namespace gbis {

struct TabuConfig {
  /// Iterations per restart; 0 means 2000 n.
  long long max_iters = 0;
  /// Tabu tenure; 0 means round(0.1 n) clamped to [5, 50].
  int tenure = 0;
  int restarts = 10;
  std::uint64_t seed = 1;

  void validate() const;
};

struct HeuristicResult {
  Assignment assignment;
  double cut = 0.0;
};

/// Bisection with incremental swap gains. D[v] is the weight from v to the
/// other part minus the weight to its own part, so exchanging u (part 1) and
/// v (part 2) changes the cut by -(D[u] + D[v] - 2 w(u, v)).
class SwapState {
 public:
  SwapState(const BisectionInstance& inst, const Assignment& a);

  double cut() const { return cut_; }
  double delta(int u, int v) const;
  /// u must be in part 1 and v in part 2.
  void apply(int u, int v);
  const std::vector<int>& parts() const { return part_; }
  Assignment assignment() const { return Assignment(part_); }

 private:
  void move(int x);

  int n_;
  Matrix w_;
  std::vector<std::vector<std::pair<int, double>>> adj_;
  std::vector<int> part_;
  std::vector<double> d_;
  double cut_ = 0.0;
};

/// Swap-neighbourhood tabu search with aspiration, restarted from random
/// m1-subsets. Restarts run in parallel; the best cut wins, ties going to
/// the lowest restart index, so the result depends only on cfg.seed.
HeuristicResult tabu_search(const BisectionInstance& inst, const TabuConfig& cfg = {});

/// Exact optimum by enumeration of all m1-subsets (n <= 24). Ties go to the
/// lexicographically smallest part-1 set. Throws InstanceError when n > 24.
HeuristicResult brute_force(const BisectionInstance& inst);

}  // namespace gbis
