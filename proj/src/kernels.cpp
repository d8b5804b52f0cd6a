#include "gbis/kernels.hpp"

#include <cmath>

namespace gbis::kernels {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

// Column (r, s) of the symmetric Kronecker operator.
inline void skron_column(const Matrix& p, Eigen::Index r, Eigen::Index s, double* col) {
  const Eigen::Index n = p.rows();
  const double* pr = p.col(r).data();
  const double* ps = p.col(s).data();
  if (r == s) {
    for (Eigen::Index q = 0; q < n; ++q) {
      for (Eigen::Index a = 0; a < q; ++a) col[svec_index(a, q)] = kSqrt2 * pr[a] * pr[q];
      col[svec_index(q, q)] = pr[q] * pr[q];
    }
  } else {
    for (Eigen::Index q = 0; q < n; ++q) {
      for (Eigen::Index a = 0; a < q; ++a) col[svec_index(a, q)] = pr[a] * ps[q] + ps[a] * pr[q];
      col[svec_index(q, q)] = kSqrt2 * pr[q] * ps[q];
    }
  }
}

// Triangles whose smallest-index pair is (i, j), i < j.
inline void scan_pair(const Matrix& x, int i, int j, double eps, std::vector<TriangleViolation>& out) {
  const int n = static_cast<int>(x.rows());
  const double xij = x(i, j);
  for (int k = 0; k < n; ++k) {
    if (k == i || k == j) continue;
    const double v = x(i, k) + x(j, k) - x(k, k) - xij;
    if (v > eps) out.push_back({TriangleKind::TriA, i, j, k, v});
  }
  const double base = x(i, i) + x(j, j) - xij - 1.0;
  for (int k = j + 1; k < n; ++k) {
    const double v = base + x(k, k) - x(i, k) - x(j, k);
    if (v > eps) out.push_back({TriangleKind::TriB, i, j, k, v});
  }
}

}  // namespace

Vector svec(const Matrix& a) {
  const Eigen::Index n = a.rows();
  Vector v(svec_dim(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) v[svec_index(i, j)] = kSqrt2 * 0.5 * (a(i, j) + a(j, i));
    v[svec_index(j, j)] = a(j, j);
  }
  return v;
}

Matrix smat(const Vector& v, Eigen::Index n) {
  Matrix a(n, n);
  const double inv = 1.0 / kSqrt2;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) a(i, j) = a(j, i) = inv * v[svec_index(i, j)];
    a(j, j) = v[svec_index(j, j)];
  }
  return a;
}

namespace serial {

void skron(const Matrix& p, Matrix& out) {
  const Eigen::Index n = p.rows();
  const Eigen::Index dim = svec_dim(n);
  out.resize(dim, dim);
  for (Eigen::Index s = 0; s < n; ++s)
    for (Eigen::Index r = 0; r <= s; ++r) skron_column(p, r, s, out.col(svec_index(r, s)).data());
}

std::vector<TriangleViolation> triangle_scan(const Matrix& x, double eps) {
  const int n = static_cast<int>(x.rows());
  std::vector<TriangleViolation> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) scan_pair(x, i, j, eps, out);
  return out;
}

}  // namespace serial

namespace omp {

void skron(const Matrix& p, Matrix& out) {
  const Eigen::Index n = p.rows();
  const Eigen::Index dim = svec_dim(n);
  out.resize(dim, dim);
#pragma omp parallel for schedule(dynamic, 4)
  for (Eigen::Index c = 0; c < dim; ++c) {
    // invert c = s(s+1)/2 + r
    Eigen::Index s = static_cast<Eigen::Index>((std::sqrt(8.0 * double(c) + 1.0) - 1.0) / 2.0);
    while (s * (s + 1) / 2 > c) --s;
    while ((s + 1) * (s + 2) / 2 <= c) ++s;
    const Eigen::Index r = c - s * (s + 1) / 2;
    skron_column(p, r, s, out.col(c).data());
  }
}

std::vector<TriangleViolation> triangle_scan(const Matrix& x, double eps) {
  const int n = static_cast<int>(x.rows());
  std::vector<std::vector<TriangleViolation>> per_row(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) scan_pair(x, i, j, eps, per_row[i]);

  std::size_t total = 0;
  for (const auto& r : per_row) total += r.size();
  std::vector<TriangleViolation> out;
  out.reserve(total);
  for (auto& r : per_row) out.insert(out.end(), r.begin(), r.end());
  return out;
}

}  // namespace omp

}  // namespace gbis::kernels
