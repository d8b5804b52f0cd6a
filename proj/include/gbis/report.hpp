#pragma once

#include "gbis/cuts.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gbis {

/// One relaxation solved once (no cuts).
struct RelaxationResult {
  std::string relaxation;
  SolveStatus status = SolveStatus::NumericalTrouble;
  std::string message;
  double objective_primal = 0.0;
  double objective_dual = 0.0;
  double safe_bound = 0.0;
  std::optional<double> ceiled;
  int iterations = 0;
  double regularization = 0.0;
  double seconds = 0.0;
};

struct CutTrace {
  std::vector<RoundRecord> rounds;
  double certified = 0.0;
  std::optional<double> ceiled;
  std::string stop_reason;
};

struct UpperBound {
  std::string method;  // "tabu" or "brute"
  double value = 0.0;
  std::vector<int> part1;  // 1-based
  double seconds = 0.0;
};

/// Everything one `solve` run produced. Non-finite numbers are written as
/// null and read back as -infinity.
struct BoundReport {
  std::string instance;
  int n = 0;
  int m1 = 0;
  int m2 = 0;
  bool integral_weights = true;
  std::vector<RelaxationResult> relaxations;
  std::optional<CutTrace> cuts;
  std::optional<UpperBound> upper;
  /// Flag values as given, stored verbatim.
  std::vector<std::pair<std::string, std::string>> config;
  double seconds = 0.0;

  const RelaxationResult* find(const std::string& relaxation) const;
};

std::string to_json(const BoundReport& r, int indent = 2);
/// Throws std::invalid_argument on malformed input.
BoundReport report_from_json(const std::string& text);

/// Columns: instance, n, m, basic, new, new+cuts, ub. Bounds are the ceiled
/// values for integral weights and the safe values otherwise; missing
/// entries are empty.
std::string csv_header();
std::string csv_row(const BoundReport& r);

}  // namespace gbis
