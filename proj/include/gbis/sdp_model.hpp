#pragma once

#include "gbis/conic_problem.hpp"
#include "gbis/graph.hpp"

#include <string>

namespace gbis {

/// The four relaxations of the minimum bisection problem.
///
///  Basic   - order n, variable M = 2X - J with diag(X) = e and
///            tr(JX) = m1^2 + m2^2; objective 1/2 tr(LX).
///  New     - order n, variable X with x = diag(X), tr X = m1,
///            tr(JX) = m1^2, Xe = m1 x, plus the entrywise nonnegativity
///            of X, xe^T - X and J + X - xe^T - ex^T; objective tr(LX).
///  NewBare - New without the entrywise inequalities.
///  WZ      - order 2n + 1 vector-lifting relaxation in bordered form
///            [[1, y^T], [y, Y]], y = diag(Y), Y >= 0;
///            objective 1/2 tr L(Y11 + Y22).
enum class RelaxationKind { Basic, New, NewBare, WZ };

std::string to_string(RelaxationKind kind);

/// Accepts "basic", "new", "new-bare", "wz". Throws std::invalid_argument.
RelaxationKind parse_relaxation(const std::string& name);

ConicProblem build_basic(const BisectionInstance& inst);
ConicProblem build_new(const BisectionInstance& inst, bool with_nonneg = true);
ConicProblem build_wz(const BisectionInstance& inst);
ConicProblem build(RelaxationKind kind, const BisectionInstance& inst);

/// (m1/n) I + m1(m1-1)/(n(n-1)) (J - I): an interior point of the New
/// relaxation whenever 1 < m1 < n.
Matrix strictly_feasible_point(const BisectionInstance& inst);

/// The PSD variable M of relaxation `kind` at the integer point given by `a`.
Matrix integer_point(RelaxationKind kind, const BisectionInstance& inst, const Assignment& a);

/// Order-n matrix X (the part-1 Gram matrix for New/WZ, ZZ^T for Basic)
/// read off a value of the PSD variable M.
Matrix extract_x(RelaxationKind kind, const Matrix& m);

/// Inequality families attached by build_new(with_nonneg = true).
namespace labels {
std::string nonneg(int i, int j);
std::string upper(int i, int j);
std::string tri0(int i, int j);
std::string diag_upper(int i);
}  // namespace labels

}  // namespace gbis
