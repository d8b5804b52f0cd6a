#pragma once

// Dense data-parallel kernels. Every kernel has a serial reference in
// `serial::` and an OpenMP version in `omp::`; both produce bitwise
// identical results for any thread count.

#include "gbis/graph.hpp"

#include <vector>

namespace gbis::kernels {

/// Position of entry (i, j), i <= j, in the packed upper triangle.
inline Eigen::Index svec_index(Eigen::Index i, Eigen::Index j) { return j * (j + 1) / 2 + i; }
inline Eigen::Index svec_dim(Eigen::Index n) { return n * (n + 1) / 2; }

/// Isometric packing: diagonal entries as is, off-diagonal scaled by sqrt 2,
/// so that dot(svec(A), svec(B)) = <A, B>.
Vector svec(const Matrix& a);
Matrix smat(const Vector& v, Eigen::Index n);

enum class TriangleKind { TriA, TriB };

/// One violated BQP triangle inequality on an order-n matrix X:
///   TriA (i < j, k distinct): X_ik + X_jk - X_kk - X_ij <= 0
///   TriB (i < j < k):         X_ii + X_jj + X_kk - X_ij - X_ik - X_jk <= 1
struct TriangleViolation {
  TriangleKind kind;
  int i;
  int j;
  int k;
  double violation;
};

namespace serial {

/// out = matrix of the operator U -> P U P in the svec basis (P symmetric).
void skron(const Matrix& p, Matrix& out);

/// All triangles with violation > eps, in (i, j, kind, k) scan order.
std::vector<TriangleViolation> triangle_scan(const Matrix& x, double eps);

}  // namespace serial

namespace omp {

void skron(const Matrix& p, Matrix& out);
std::vector<TriangleViolation> triangle_scan(const Matrix& x, double eps);

}  // namespace omp

}  // namespace gbis::kernels
