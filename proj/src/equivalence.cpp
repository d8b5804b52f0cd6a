#include "gbis/equivalence.hpp"

#include "gbis/cuts.hpp"
#include "gbis/sdp_model.hpp"
#include "gbis/sdp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gbis {

namespace {

std::string family_of(const std::string& label) { return label.substr(0, label.find('(')); }

void note(FeasibilityReport& r, const std::string& family, double v) {
  double& slot = r.residuals[family];
  slot = std::max(slot, v);
}

void finalize(FeasibilityReport& r) {
  r.pass = r.lambda_min >= -r.tolerance && r.max_residual() <= r.tolerance;
}

void require_feasible(const ConicProblem& p, const Matrix& m, double tol, const char* what) {
  if (m.rows() != p.order() || m.cols() != p.order())
    throw std::invalid_argument(std::string(what) + ": matrix has the wrong order");
  const FeasibilityReport r = check_feasibility(p, m, tol);
  if (!r.pass)
    throw std::invalid_argument(std::string(what) + ": input infeasible (residual " + std::to_string(r.max_residual()) +
                                ", lambda_min " + std::to_string(r.lambda_min) + ")");
}

std::string idx(int a) { return std::to_string(a + 1); }

}  // namespace

double FeasibilityReport::max_residual() const {
  double m = 0.0;
  for (const auto& [_, v] : residuals) m = std::max(m, v);
  return m;
}

FeasibilityReport check_feasibility(const ConicProblem& p, const Matrix& m, double tol) {
  FeasibilityReport r;
  r.tolerance = tol;
  for (const auto& c : p.equalities()) note(r, family_of(c.label), std::abs(c.coeff.dot(m) - c.rhs));
  for (const auto& c : p.inequalities()) note(r, family_of(c.label), std::max(0.0, c.coeff.dot(m) - c.rhs));
  r.lambda_min = min_eigenvalue(0.5 * (m + m.transpose()));
  finalize(r);
  return r;
}

Matrix lift_new_to_wz(const BisectionInstance& inst, const Matrix& x, double tol) {
  require_feasible(build_new(inst, true), x, tol, "lift_new_to_wz");
  const int n = inst.n();
  const Vector d = x.diagonal();
  const Vector e = Vector::Ones(n);
  const Matrix xe = d * e.transpose();

  Matrix y(2 * n + 1, 2 * n + 1);
  y(0, 0) = 1.0;
  y.block(1, 0, n, 1) = d;
  y.block(1 + n, 0, n, 1) = e - d;
  y.block(0, 1, 1, 2 * n) = y.block(1, 0, 2 * n, 1).transpose();
  y.block(1, 1, n, n) = x;
  y.block(1, 1 + n, n, n) = xe - x;
  y.block(1 + n, 1, n, n) = (xe - x).transpose();
  y.block(1 + n, 1 + n, n, n) = Matrix::Ones(n, n) + x - xe - xe.transpose();
  return y;
}

Matrix project_wz_to_new(const BisectionInstance& inst, const Matrix& y, double tol) {
  require_feasible(build_wz(inst), y, tol, "project_wz_to_new");
  return y.block(1, 1, inst.n(), inst.n());
}

Matrix project_wz_to_basic(const BisectionInstance& inst, const Matrix& y, double tol) {
  require_feasible(build_wz(inst), y, tol, "project_wz_to_basic");
  const int n = inst.n();
  return y.block(1, 1, n, n) + y.block(1 + n, 1 + n, n, n);
}

FeasibilityReport check_property8(const Matrix& y, int m1, int m2, double tol) {
  const Eigen::Index n = (y.rows() - 1) / 2;
  if (y.rows() != y.cols() || y.rows() != 2 * n + 1 || n < 1)
    throw std::invalid_argument("check_property8: expected a bordered matrix of order 2n + 1");
  const Matrix y11 = y.block(1, 1, n, n), y12 = y.block(1, 1 + n, n, n), y22 = y.block(1 + n, 1 + n, n, n);
  const Vector y1 = y11.diagonal(), y2 = y22.diagonal();
  const Vector e = Vector::Ones(n);

  FeasibilityReport r;
  r.tolerance = tol;
  r.residuals["Y11+Y12=y1e'"] = (y11 + y12 - y1 * e.transpose()).cwiseAbs().maxCoeff();
  r.residuals["Y12'+Y22=y2e'"] = (y12.transpose() + y22 - y2 * e.transpose()).cwiseAbs().maxCoeff();
  r.residuals["y1+y2=e"] = (y1 + y2 - e).cwiseAbs().maxCoeff();
  r.residuals["Y11e=m1y1"] = (y11 * e - double(m1) * y1).cwiseAbs().maxCoeff();
  r.residuals["Y22e=m2y2"] = (y22 * e - double(m2) * y2).cwiseAbs().maxCoeff();
  r.lambda_min = min_eigenvalue(0.5 * (y + y.transpose()));
  finalize(r);
  return r;
}

Prop2Check check_prop2(const Matrix& x, double tol) {
  const Eigen::Index n = x.rows();
  if (n == 0 || x.cols() != n) throw std::invalid_argument("check_prop2: square matrix required");
  const Vector d = x.diagonal();
  const Vector row = x.rowwise().sum();
  const double dd = d.squaredNorm();
  if (dd == 0.0) throw std::invalid_argument("check_prop2: diag(X) is zero");

  Prop2Check out;
  out.c = d.dot(row) / dd;
  if ((row - out.c * d).norm() > tol * (1.0 + row.norm()))
    throw std::invalid_argument("check_prop2: X e is not a multiple of diag(X)");

  Matrix bordered(n + 1, n + 1);
  bordered(0, 0) = 1.0;
  bordered.block(1, 0, n, 1) = d;
  bordered.block(0, 1, 1, n) = d.transpose();
  bordered.block(1, 1, n, n) = x;
  out.bordered_psd = min_eigenvalue(bordered) >= -tol;
  const double tr = x.trace();
  out.psd_and_trace = min_eigenvalue(x) >= -tol && x.sum() >= tr * tr - tol;
  return out;
}

ConicProblem build_wz_full_bqp(const BisectionInstance& inst) {
  ConicProblem p = build_wz(inst);
  const int n = inst.n();
  const int k2 = 2 * n;
  auto y = [](int a) { return a + 1; };
  auto label = [](const char* fam, std::initializer_list<int> ids) {
    std::string s = std::string(fam) + "(";
    bool first = true;
    for (int a : ids) {
      if (!first) s += ",";
      s += idx(a);
      first = false;
    }
    return s + ")";
  };

  // build_wz already carries Y >= 0 apart from the pinned diag(Y12) entries.
  for (int a = 0; a < k2; ++a)
    for (int b = 0; b < k2; ++b)
      if (a != b)
        p.add_inequality(label("bqp-ub", {a, b}), SymCoeff::from({{y(a), y(b), 0.5}, {y(a), y(a), -1.0}}), 0.0);
  for (int b = 0; b < k2; ++b)
    for (int a = 0; a < b; ++a)
      p.add_inequality(label("bqp-tri0", {a, b}),
                       SymCoeff::from({{y(a), y(a), 1.0}, {y(b), y(b), 1.0}, {y(a), y(b), -0.5}}), 1.0);
  for (int a = 0; a < k2; ++a)
    for (int b = a + 1; b < k2; ++b)
      for (int c = 0; c < k2; ++c) {
        if (c == a || c == b) continue;
        p.add_inequality(label("bqp-triA", {a, b, c}),
                         SymCoeff::from({{y(a), y(c), 0.5}, {y(b), y(c), 0.5}, {y(c), y(c), -1.0}, {y(a), y(b), -0.5}}),
                         0.0);
      }
  for (int a = 0; a < k2; ++a)
    for (int b = a + 1; b < k2; ++b)
      for (int c = b + 1; c < k2; ++c)
        p.add_inequality(label("bqp-triB", {a, b, c}),
                         SymCoeff::from({{y(a), y(a), 1.0},
                                         {y(b), y(b), 1.0},
                                         {y(c), y(c), 1.0},
                                         {y(a), y(b), -0.5},
                                         {y(a), y(c), -0.5},
                                         {y(b), y(c), -0.5}}),
                         1.0);
  return p;
}

ConicProblem build_new_all_cuts(const BisectionInstance& inst) {
  ConicProblem p = build_new(inst, true);
  const int n = inst.n();
  std::vector<Cut> all;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      for (int k = 0; k < n; ++k)
        if (k != i && k != j) all.push_back({CutKind::TriA, i, j, k, 0.0});
      for (int k = j + 1; k < n; ++k) all.push_back({CutKind::TriB, i, j, k, 0.0});
    }
  append_cuts(p, all);
  return p;
}

}  // namespace gbis
