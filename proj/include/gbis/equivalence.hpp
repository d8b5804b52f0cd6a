#pragma once

#include "gbis/conic_problem.hpp"
#include "gbis/graph.hpp"

#include <map>
#include <string>

namespace gbis {

/// Residuals of a candidate point, grouped by constraint family. The family
/// of a label is the text before its first '('.
struct FeasibilityReport {
  std::map<std::string, double> residuals;  // max |violation| per family
  double lambda_min = 0.0;
  double tolerance = 0.0;
  bool pass = false;

  double max_residual() const;
};

/// Equalities contribute |<A, M> - b|, inequalities max(0, <G, M> - h).
FeasibilityReport check_feasibility(const ConicProblem& p, const Matrix& m, double tol);

/// Bordered WZ point built from a New point X, x = diag(X):
///   Y11 = X,  Y12 = x e' - X,  Y22 = J + X - x e' - e x',  y = (x; e - x).
/// Throws std::invalid_argument if X is not feasible for the New relaxation
/// of `inst` within tol.
Matrix lift_new_to_wz(const BisectionInstance& inst, const Matrix& x, double tol = 1e-6);

/// X = Y11. Throws std::invalid_argument if Y is not feasible for WZ.
Matrix project_wz_to_new(const BisectionInstance& inst, const Matrix& y, double tol = 1e-6);

/// X = Y11 + Y22 (the Basic relaxation in its X form; M = 2X - J).
Matrix project_wz_to_basic(const BisectionInstance& inst, const Matrix& y, double tol = 1e-6);

/// The four identities every feasible WZ point satisfies:
///   Y11 + Y12 = y1 e',  Y12' + Y22 = y2 e',  y1 + y2 = e,  Yii e = m_i y_i,
/// with y_i = diag(Yii). `y` is the bordered matrix of order 2n + 1.
FeasibilityReport check_property8(const Matrix& y, int m1, int m2, double tol);

struct Prop2Check {
  double c = 0.0;             // X e = c diag(X)
  bool bordered_psd = false;  // [[1, x'], [x, X]] PSD
  bool psd_and_trace = false; // X PSD and tr(JX) >= tr(X)^2
  bool agree() const { return bordered_psd == psd_and_trace; }
};

/// Evaluates both sides of the bordering criterion, each to tolerance tol.
/// Throws std::invalid_argument unless X e is parallel to diag(X).
Prop2Check check_prop2(const Matrix& x, double tol = 1e-9);

/// WZ relaxation plus every BQP facet on the 2n lifted indices:
///   0 <= Y_ab <= Y_aa,  Y_aa + Y_bb <= 1 + Y_ab  and both triangle families.
ConicProblem build_wz_full_bqp(const BisectionInstance& inst);

/// New relaxation plus every triangle inequality on 1..n.
ConicProblem build_new_all_cuts(const BisectionInstance& inst);

}  // namespace gbis
