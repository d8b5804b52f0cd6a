#pragma once

#include "gbis/conic_problem.hpp"

#include <stdexcept>
#include <string>

namespace gbis {

struct SolverConfig {
  double tol_primal = 1e-7;
  double tol_dual = 1e-7;
  double tol_gap = 1e-7;
  int max_iters = 500;
  int verbosity = 0;
  /// Largest PSD block order accepted by solve().
  int max_order = 300;

  /// Throws std::invalid_argument unless every tolerance is in (0, 1e-2].
  void validate() const;
};

enum class SolveStatus { Optimal, MaxIters, NumericalTrouble };

std::string to_string(SolveStatus s);

struct Residuals {
  double primal = 0.0;  // relative, equalities and inequalities together
  double dual = 0.0;    // relative
  double gap = 0.0;     // relative
};

/// Primal M, duals y (equalities) and w >= 0 (inequalities), with
///   Z = C - sum y_i A_i + sum w_j G_j,  dual objective b'y - h'w + c0.
struct ConicSolution {
  SolveStatus status = SolveStatus::NumericalTrouble;
  Matrix primal;
  Vector dual_eq;
  Vector dual_ineq;
  /// Z, or V' Z V when the problem carries a face basis V.
  Matrix dual_slack;
  double objective_primal = 0.0;
  double objective_dual = 0.0;
  Residuals residuals;
  int iterations = 0;
  /// Diagonal shift added to the primal Newton block, 0 unless the solver
  /// had to regularize a stalled or singular system.
  double regularization = 0.0;
  /// Equalities dropped as linearly dependent (their dual stays 0).
  int dropped_equalities = 0;
  /// Inequalities whose left side is fixed by the equalities (dual 0).
  int dropped_inequalities = 0;
  std::string message;
};

/// Lower bound on the relaxation optimum certified by a dual point.
struct SafeBound {
  double value = 0.0;
  Vector y;
  Vector w;
  double lambda_min = 0.0;
  double trace = 0.0;
};

class UnsupportedProblem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Infeasible primal-dual path-following method with Nesterov-Todd scaling
/// and Mehrotra predictor-corrector steps. Inequalities carry nonnegative
/// slacks; the Newton system is reduced to the primal svec space and
/// factored densely, so the cost per iteration is O(n^6) in the block
/// order n and linear in the number of (sparse) inequalities.
ConicSolution solve(const ConicProblem& p, const SolverConfig& cfg = {});

/// Certified bound from the dual part of `sol`:
///   b'y - h'w + c0 + t * min(0, lambda_min(Z)),  w clamped to >= 0,
/// valid for every primal feasible M because tr(M) = t is implied by the
/// equalities. With a face basis V the eigenvalue is taken of V' Z V.
/// Throws UnsupportedProblem when no trace constant is recorded.
SafeBound safe_lower_bound(const ConicProblem& p, const ConicSolution& sol);

/// Same certificate for arbitrary dual multipliers.
SafeBound safe_lower_bound(const ConicProblem& p, const Vector& y, const Vector& w);

/// Smallest eigenvalue of a symmetric matrix. Throws std::invalid_argument on
/// non-finite input.
double min_eigenvalue(const Matrix& m);

/// Dense C - sum y_i A_i + sum w_j G_j.
Matrix dual_slack(const ConicProblem& p, const Vector& y, const Vector& w);

}  // namespace gbis
