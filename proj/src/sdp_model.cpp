#include "gbis/sdp_model.hpp"

#include <Eigen/QR>

#include <stdexcept>

namespace gbis {

namespace {

std::string idx(int i) { return std::to_string(i + 1); }

std::string pair_label(const char* family, int i, int j) {
  return std::string(family) + "(" + idx(i) + "," + idx(j) + ")";
}

// All-ones coefficient on the principal block [lo, lo + len).
SymCoeff block_ones(int lo, int len) {
  std::vector<SymEntry> e;
  e.reserve(static_cast<std::size_t>(len) * (len + 1) / 2);
  for (int j = 0; j < len; ++j)
    for (int i = 0; i <= j; ++i) e.push_back({lo + i, lo + j, 1.0});
  return SymCoeff::from(std::move(e));
}

SymCoeff block_trace(int lo, int len) {
  std::vector<SymEntry> e;
  for (int i = 0; i < len; ++i) e.push_back({lo + i, lo + i, 1.0});
  return SymCoeff::from(std::move(e));
}

// Copies `scale * L` into the principal block starting at `lo`.
std::vector<SymEntry> laplacian_entries(const Graph& g, int lo, double scale) {
  std::vector<SymEntry> e;
  std::vector<double> deg(g.order(), 0.0);
  for (const auto& ed : g.edges()) {
    e.push_back({lo + ed.u, lo + ed.v, -scale * ed.w});
    deg[ed.u] += ed.w;
    deg[ed.v] += ed.w;
  }
  for (int i = 0; i < g.order(); ++i) e.push_back({lo + i, lo + i, scale * deg[i]});
  return e;
}

}  // namespace

namespace labels {
std::string nonneg(int i, int j) { return pair_label("bqp-nonneg", i, j); }
std::string upper(int i, int j) { return pair_label("bqp-ub", i, j); }
std::string tri0(int i, int j) { return pair_label("bqp-tri0", i, j); }
std::string diag_upper(int i) { return "bqp-diag-ub(" + idx(i) + ")"; }
}  // namespace labels

std::string to_string(RelaxationKind kind) {
  switch (kind) {
    case RelaxationKind::Basic: return "basic";
    case RelaxationKind::New: return "new";
    case RelaxationKind::NewBare: return "new-bare";
    case RelaxationKind::WZ: return "wz";
  }
  return "?";
}

RelaxationKind parse_relaxation(const std::string& name) {
  if (name == "basic") return RelaxationKind::Basic;
  if (name == "new") return RelaxationKind::New;
  if (name == "new-bare") return RelaxationKind::NewBare;
  if (name == "wz") return RelaxationKind::WZ;
  throw std::invalid_argument("unknown relaxation: " + name);
}

ConicProblem build_basic(const BisectionInstance& inst) {
  const int n = inst.n();
  const double m1 = inst.m1, m2 = inst.m2;
  ConicProblem p(n);

  // X = (M + J) / 2, so 1/2 tr(LX) = 1/4 tr(LM) + 1/4 tr(LJ).
  double ltj = 0.0;
  Matrix l = laplacian(inst.graph);
  ltj = l.sum();
  p.set_objective(SymCoeff::from(laplacian_entries(inst.graph, 0, 0.25)), 0.25 * ltj);

  for (int i = 0; i < n; ++i) p.add_equality("diag(" + idx(i) + ")", SymCoeff().add(i, i, 1.0), 1.0);
  p.add_equality("j-trace", block_ones(0, n), 2.0 * (m1 * m1 + m2 * m2) - double(n) * n);
  p.set_trace_constant(n);
  if (inst.m1 == inst.m2) {
    // e'Me = 0 forces Me = 0 on an equal split.
    Matrix e = Matrix::Ones(n, 1);
    Eigen::HouseholderQR<Matrix> qr(e);
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    p.set_face(q.rightCols(n - 1));
  }
  return p;
}

ConicProblem build_new(const BisectionInstance& inst, bool with_nonneg) {
  const int n = inst.n();
  const double m1 = inst.m1;
  ConicProblem p(n);
  p.set_objective(SymCoeff::from(laplacian_entries(inst.graph, 0, 1.0)), 0.0);

  p.add_equality("trace", block_trace(0, n), m1);
  p.add_equality("j-trace", block_ones(0, n), m1 * m1);
  for (int i = 0; i < n; ++i) {
    // sum_j X_ij - m1 X_ii = 0
    std::vector<SymEntry> e;
    for (int j = 0; j < n; ++j)
      if (j != i) e.push_back({i, j, 0.5});
    e.push_back({i, i, 1.0 - m1});
    p.add_equality("row-sum(" + idx(i) + ")", SymCoeff::from(std::move(e)), 0.0);
  }
  p.set_trace_constant(m1);

  if (!with_nonneg) return p;

  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i)
      p.add_inequality(labels::nonneg(i, j), SymCoeff().add(i, j, i == j ? -1.0 : -0.5), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) p.add_inequality(labels::upper(i, j), SymCoeff::from({{i, j, 0.5}, {i, i, -1.0}}), 0.0);
  // Summing the tri0 rows over j gives (m2 - 1) X_ii + m1 <= n - 1, which is
  // X_ii <= 1 with equality throughout when m2 = 1, so each row is tight.
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      SymCoeff c = SymCoeff::from({{i, i, 1.0}, {j, j, 1.0}, {i, j, -0.5}});
      if (inst.m2 == 1)
        p.add_equality(labels::tri0(i, j), std::move(c), 1.0);
      else
        p.add_inequality(labels::tri0(i, j), std::move(c), 1.0);
    }
  for (int i = 0; i < n; ++i) p.add_inequality(labels::diag_upper(i), SymCoeff().add(i, i, 1.0), 1.0);
  return p;
}

ConicProblem build_wz(const BisectionInstance& inst) {
  const int n = inst.n();
  const double m1 = inst.m1, m2 = inst.m2;
  const int order = 2 * n + 1;
  // Index 0 is the border; Y occupies 1..2n with Y11 first.
  auto y = [](int a) { return a + 1; };
  ConicProblem p(order);

  auto obj = laplacian_entries(inst.graph, 1, 0.5);
  auto obj2 = laplacian_entries(inst.graph, 1 + n, 0.5);
  obj.insert(obj.end(), obj2.begin(), obj2.end());
  p.set_objective(SymCoeff::from(std::move(obj)), 0.0);

  p.add_equality("corner", SymCoeff().add(0, 0, 1.0), 1.0);
  for (int a = 0; a < 2 * n; ++a)
    p.add_equality("border(" + idx(a) + ")", SymCoeff::from({{0, y(a), 0.5}, {y(a), y(a), -1.0}}), 0.0);
  p.add_equality("trace-Y11", block_trace(1, n), m1);
  p.add_equality("trace-Y22", block_trace(1 + n, n), m2);
  p.add_equality("j-trace-Y11", block_ones(1, n), m1 * m1);
  p.add_equality("j-trace-Y22", block_ones(1 + n, n), m2 * m2);
  for (int i = 0; i < n; ++i)
    p.add_equality("diag-Y12(" + idx(i) + ")", SymCoeff().add(y(i), y(n + i), 0.5), 0.0);
  {
    std::vector<SymEntry> e;
    for (int a = 0; a < n; ++a)
      for (int b = n; b < 2 * n; ++b) e.push_back({y(a), y(b), 1.0});
    p.add_equality("j-trace-Y12", SymCoeff::from(std::move(e)), 2.0 * m1 * m2);
  }
  p.set_trace_constant(1.0 + m1 + m2);

  // Every feasible Y is annihilated by (-1; e_i; e_i) and (-m1; e; 0), so it
  // lives on the face spanned by the orthogonal complement of those vectors.
  {
    Matrix null(order, n + 1);
    null.setZero();
    for (int i = 0; i < n; ++i) {
      null(0, i) = -1.0;
      null(y(i), i) = 1.0;
      null(y(n + i), i) = 1.0;
    }
    null(0, n) = -m1;
    for (int i = 0; i < n; ++i) null(y(i), n) = 1.0;
    Eigen::HouseholderQR<Matrix> qr(null);
    Matrix q = qr.householderQ() * Matrix::Identity(order, order);
    p.set_face(q.rightCols(order - (n + 1)));
  }

  // With m2 = 1 the nonnegative off-diagonal of Y22 sums to m2^2 - m2 = 0,
  // so those entries are zero on the whole feasible set.
  const bool y22_diagonal = inst.m2 == 1;
  if (y22_diagonal)
    for (int j = n + 1; j < 2 * n; ++j)
      for (int i = n; i < j; ++i)
        p.add_equality("offdiag-Y22(" + idx(i - n) + "," + idx(j - n) + ")", SymCoeff().add(y(i), y(j), 0.5), 0.0);

  // Entries of diag(Y12) are already pinned to zero and get no inequality.
  for (int b = 0; b < 2 * n; ++b)
    for (int a = 0; a <= b; ++a) {
      if (a < n && b == a + n) continue;
      if (y22_diagonal && a >= n && a != b) continue;
      p.add_inequality("nonneg(" + idx(a) + "," + idx(b) + ")", SymCoeff().add(y(a), y(b), a == b ? -1.0 : -0.5),
                       0.0);
    }
  return p;
}

ConicProblem build(RelaxationKind kind, const BisectionInstance& inst) {
  switch (kind) {
    case RelaxationKind::Basic: return build_basic(inst);
    case RelaxationKind::New: return build_new(inst, true);
    case RelaxationKind::NewBare: return build_new(inst, false);
    case RelaxationKind::WZ: return build_wz(inst);
  }
  throw std::invalid_argument("unknown relaxation kind");
}

Matrix strictly_feasible_point(const BisectionInstance& inst) {
  const double n = inst.n(), m1 = inst.m1;
  const double off = m1 * (m1 - 1.0) / (n * (n - 1.0));
  Matrix x = Matrix::Constant(inst.n(), inst.n(), off);
  x.diagonal().setConstant(m1 / n);
  return x;
}

Matrix integer_point(RelaxationKind kind, const BisectionInstance& inst, const Assignment& a) {
  a.validate(inst);
  const Vector z = a.indicator();
  const int n = inst.n();
  switch (kind) {
    case RelaxationKind::Basic: {
      Vector u = 2.0 * z - Vector::Ones(n);
      return u * u.transpose();
    }
    case RelaxationKind::New:
    case RelaxationKind::NewBare: return z * z.transpose();
    case RelaxationKind::WZ: {
      Vector yhat(2 * n + 1);
      yhat[0] = 1.0;
      yhat.segment(1, n) = z;
      yhat.segment(1 + n, n) = Vector::Ones(n) - z;
      return yhat * yhat.transpose();
    }
  }
  throw std::invalid_argument("unknown relaxation kind");
}

Matrix extract_x(RelaxationKind kind, const Matrix& m) {
  switch (kind) {
    case RelaxationKind::Basic: return 0.5 * (m + Matrix::Ones(m.rows(), m.cols()));
    case RelaxationKind::New:
    case RelaxationKind::NewBare: return m;
    case RelaxationKind::WZ: {
      const Eigen::Index n = (m.rows() - 1) / 2;
      return m.block(1, 1, n, n);
    }
  }
  throw std::invalid_argument("unknown relaxation kind");
}

}  // namespace gbis
