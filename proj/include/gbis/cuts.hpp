#pragma once

#include "gbis/conic_problem.hpp"
#include "gbis/graph.hpp"
#include "gbis/kernels.hpp"
#include "gbis/sdp_solver.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace gbis {

using CutKind = kernels::TriangleKind;

/// Triangle inequality on the order-n matrix X (0-based indices):
///   TriA, i < j, k free:  X_ik + X_jk - X_kk - X_ij <= 0
///   TriB, i < j < k:      X_ii + X_jj + X_kk - X_ij - X_ik - X_jk <= 1
struct Cut {
  CutKind kind = CutKind::TriA;
  int i = 0;
  int j = 0;
  int k = 0;
  double violation = 0.0;  // at separation time

  auto key() const { return std::make_tuple(static_cast<int>(kind), i, j, k); }
};

std::string to_string(CutKind kind);

/// "bqp-cut(TriA,i,j,k)" with 1-based indices.
std::string cut_label(const Cut& c);
SymCoeff cut_coeff(const Cut& c);
double cut_rhs(const Cut& c);

/// Left side minus right side at X; positive means violated.
double cut_violation(const Cut& c, const Matrix& x);

/// Throws std::invalid_argument unless the indices are distinct, ordered as
/// the kind requires and below n.
void validate_cut(const Cut& c, int n);

/// All triangles violated by more than eps, most violated first, ties broken
/// by (kind, i, j, k). At most `limit` are returned.
std::vector<Cut> separate(const Matrix& x, std::size_t limit = std::numeric_limits<std::size_t>::max(),
                          double eps = 1e-6);

/// Cuts added during a run, each stamped with its round. Cuts are never
/// removed; the cap (default 40 n) bounds memory.
class CutPool {
 public:
  struct Entry {
    Cut cut;
    int round;
  };

  explicit CutPool(int n, std::size_t cap = 0);

  /// False when the cut is already present or the pool is full.
  bool add(const Cut& c, int round);
  bool contains(const Cut& c) const { return keys_.count(c.key()) > 0; }
  bool full() const { return entries_.size() >= cap_; }

  std::size_t size() const { return entries_.size(); }
  std::size_t cap() const { return cap_; }
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  int n_;
  std::size_t cap_;
  std::vector<Entry> entries_;
  std::set<std::tuple<int, int, int, int>> keys_;
};

/// Adds one inequality per cut, skipping labels already present. Returns the
/// number of rows added.
std::size_t append_cuts(ConicProblem& p, const std::vector<Cut>& cuts);

struct LoopConfig {
  /// Cut rounds after the initial solve.
  int max_rounds = 20;
  /// 0 means 2 n.
  int cuts_per_round = 0;
  double eps = 1e-6;
  /// Stop after `stall_rounds` consecutive rounds that improve the certified
  /// bound by less than stall_rel * (1 + |bound|).
  double stall_rel = 1e-5;
  int stall_rounds = 2;
  /// 0 means 40 n.
  std::size_t pool_cap = 0;
  SolverConfig solver;

  void validate() const;
};

struct RoundRecord {
  int round = 0;
  std::size_t cuts_added = 0;
  std::size_t cuts_total = 0;
  double objective_primal = 0.0;
  double objective_dual = 0.0;
  double safe_bound = 0.0;
  SolveStatus status = SolveStatus::NumericalTrouble;
  std::string message;
  int iterations = 0;
  double seconds = 0.0;
};

struct LoopResult {
  std::vector<RoundRecord> rounds;
  /// Best safe bound over all rounds.
  double certified = 0.0;
  std::optional<double> ceiled;
  std::string stop_reason;
  Matrix last_x;
};

/// ceil(value - 1e-6) for integral weights, nothing otherwise.
std::optional<double> ceil_bound(double value, bool integral_weights);

/// Solves the New relaxation, then repeatedly separates on the primal X,
/// appends up to cuts_per_round cuts and re-solves from scratch. A round
/// whose solve is not optimal ends the loop.
LoopResult cutting_plane_loop(const BisectionInstance& inst, const LoopConfig& cfg = {});

}  // namespace gbis
