#include "gbis/sdp_solver.hpp"

#include "gbis/kernels.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace gbis {

using kernels::smat;
using kernels::svec;
using kernels::svec_dim;
using kernels::svec_index;

void SolverConfig::validate() const {
  for (double t : {tol_primal, tol_dual, tol_gap})
    if (!(t > 0.0 && t <= 1e-2)) throw std::invalid_argument("solver tolerances must lie in (0, 1e-2]");
  if (max_iters <= 0) throw std::invalid_argument("max_iters must be positive");
  if (max_order <= 0) throw std::invalid_argument("max_order must be positive");
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::MaxIters: return "max-iters";
    case SolveStatus::NumericalTrouble: return "numerical-trouble";
  }
  return "?";
}

double min_eigenvalue(const Matrix& m) {
  if (!m.allFinite()) throw std::invalid_argument("min_eigenvalue: non-finite entries");
  if (m.rows() == 0) throw std::invalid_argument("min_eigenvalue: empty matrix");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

Matrix dual_slack(const ConicProblem& p, const Vector& y, const Vector& w) {
  const int n = p.order();
  Matrix z = p.objective().dense(n);
  auto accumulate = [&](const SymCoeff& a, double scale) {
    for (const auto& e : a.entries()) {
      z(e.row, e.col) += scale * e.value;
      if (e.row != e.col) z(e.col, e.row) += scale * e.value;
    }
  };
  for (std::size_t i = 0; i < p.equalities().size(); ++i) accumulate(p.equalities()[i].coeff, -y[i]);
  for (std::size_t j = 0; j < p.inequalities().size(); ++j) accumulate(p.inequalities()[j].coeff, w[j]);
  return z;
}

SafeBound safe_lower_bound(const ConicProblem& p, const Vector& y, const Vector& w_in) {
  if (!p.trace_constant())
    throw UnsupportedProblem("safe_lower_bound needs a problem whose equalities fix trace(M)");
  if (y.size() != static_cast<Eigen::Index>(p.equalities().size()) ||
      w_in.size() != static_cast<Eigen::Index>(p.inequalities().size()))
    throw std::invalid_argument("dual vector sizes do not match the problem");

  SafeBound sb;
  sb.y = y;
  sb.w = w_in.cwiseMax(0.0);
  sb.trace = *p.trace_constant();
  const Matrix z = dual_slack(p, sb.y, sb.w);
  sb.lambda_min = p.face() ? min_eigenvalue(p.face()->transpose() * z * *p.face()) : min_eigenvalue(z);

  double value = p.objective_constant();
  for (std::size_t i = 0; i < p.equalities().size(); ++i) value += p.equalities()[i].rhs * sb.y[i];
  for (std::size_t j = 0; j < p.inequalities().size(); ++j) value -= p.inequalities()[j].rhs * sb.w[j];
  value += sb.trace * std::min(0.0, sb.lambda_min);
  sb.value = value;
  return sb;
}

SafeBound safe_lower_bound(const ConicProblem& p, const ConicSolution& sol) {
  return safe_lower_bound(p, sol.dual_eq, sol.dual_ineq);
}

namespace {

using SparseRows = Eigen::SparseMatrix<double, Eigen::RowMajor>;

constexpr double kInf = std::numeric_limits<double>::infinity();

Vector svec_coeff(const SymCoeff& a, Eigen::Index dim) {
  Vector v = Vector::Zero(dim);
  for (const auto& e : a.entries())
    v[svec_index(e.row, e.col)] = e.row == e.col ? e.value : std::sqrt(2.0) * e.value;
  return v;
}

struct Data {
  int n = 0;
  Eigen::Index dim = 0;
  Vector c;
  double c0 = 0.0;
  Matrix a;                  // independent equality rows, svec form
  Vector b;
  std::vector<int> eq_rows;  // original index of each kept row
  SparseRows g;              // inequality rows, svec form
  Vector h;
  std::vector<int> ineq_rows;  // original index of each kept inequality
  bool consistent = true;
};

Data assemble(const ConicProblem& p) {
  Data d;
  d.n = p.order();
  d.dim = svec_dim(d.n);
  d.c = svec_coeff(p.objective(), d.dim);
  d.c0 = p.objective_constant();

  const auto& eqs = p.equalities();
  const Eigen::Index me = static_cast<Eigen::Index>(eqs.size());
  Matrix a_full(me, d.dim);
  Vector b_full(me);
  for (Eigen::Index i = 0; i < me; ++i) {
    a_full.row(i) = svec_coeff(eqs[i].coeff, d.dim).transpose();
    b_full[i] = eqs[i].rhs;
  }

  // Drop linearly dependent equalities, keeping the lowest indices.
  std::vector<int> keep;
  if (me > 0) {
    Eigen::ColPivHouseholderQR<Matrix> qr(a_full.transpose());
    qr.setThreshold(1e-10);
    const Eigen::Index rank = qr.rank();
    for (Eigen::Index k = 0; k < rank; ++k) keep.push_back(qr.colsPermutation().indices()[k]);
    std::sort(keep.begin(), keep.end());
  }
  d.eq_rows = keep;
  d.a.resize(static_cast<Eigen::Index>(keep.size()), d.dim);
  d.b.resize(static_cast<Eigen::Index>(keep.size()));
  for (std::size_t r = 0; r < keep.size(); ++r) {
    d.a.row(r) = a_full.row(keep[r]);
    d.b[r] = b_full[keep[r]];
  }
  if (static_cast<Eigen::Index>(keep.size()) < me) {
    Eigen::ColPivHouseholderQR<Matrix> qr(d.a.transpose());
    std::vector<bool> kept(me, false);
    for (int k : keep) kept[k] = true;
    for (Eigen::Index i = 0; i < me; ++i) {
      if (kept[i]) continue;
      Vector coef = qr.solve(a_full.row(i).transpose());
      const double implied = coef.dot(d.b);
      const double scale = 1.0 + std::abs(b_full[i]) + coef.cwiseAbs().dot(d.b.cwiseAbs());
      if (std::abs(implied - b_full[i]) > 1e-9 * scale) d.consistent = false;
    }
  }

  // An inequality whose coefficient lies in the span of the equalities is
  // constant on the feasible set. Keeping it would leave its slack pinned at
  // zero, so it is checked once here and dropped.
  const auto& ineqs = p.inequalities();
  const Eigen::Index mi = static_cast<Eigen::Index>(ineqs.size());
  SparseRows g_full(mi, d.dim);
  {
    std::vector<Eigen::Triplet<double>> trip;
    for (Eigen::Index j = 0; j < mi; ++j)
      for (const auto& e : ineqs[j].coeff.entries())
        trip.emplace_back(static_cast<int>(j), static_cast<int>(svec_index(e.row, e.col)),
                          e.row == e.col ? e.value : std::sqrt(2.0) * e.value);
    g_full.setFromTriplets(trip.begin(), trip.end());
  }
  std::vector<bool> pinned(mi, false);
  if (d.a.rows() > 0 && mi > 0) {
    const Eigen::Index r = d.a.rows();
    Eigen::HouseholderQR<Matrix> qr(d.a.transpose());
    const Matrix q = qr.householderQ() * Matrix::Identity(d.dim, r);
    const Matrix rr = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
    // Minimum-norm solution of A x = b, expressed in the basis q.
    const Vector u = rr.transpose().triangularView<Eigen::Lower>().solve(d.b);
    const Matrix gq = g_full * q;
    for (Eigen::Index j = 0; j < mi; ++j) {
      const double g2 = g_full.row(j).squaredNorm();
      const double in_span = gq.row(j).squaredNorm();
      if (g2 == 0.0 || g2 - in_span > 1e-12 * g2) continue;
      pinned[j] = true;
      const double value = gq.row(j).dot(u);
      if (value > ineqs[j].rhs + 1e-9 * (1.0 + std::abs(ineqs[j].rhs) + std::abs(value))) d.consistent = false;
    }
  }
  for (Eigen::Index j = 0; j < mi; ++j)
    if (!pinned[j]) d.ineq_rows.push_back(static_cast<int>(j));

  const Eigen::Index kept = static_cast<Eigen::Index>(d.ineq_rows.size());
  std::vector<Eigen::Triplet<double>> trip;
  d.h.resize(kept);
  for (Eigen::Index r = 0; r < kept; ++r) {
    const int j = d.ineq_rows[r];
    for (SparseRows::InnerIterator it(g_full, j); it; ++it)
      trip.emplace_back(static_cast<int>(r), static_cast<int>(it.col()), it.value());
    d.h[r] = ineqs[j].rhs;
  }
  d.g.resize(kept, d.dim);
  d.g.setFromTriplets(trip.begin(), trip.end());
  d.g.makeCompressed();
  return d;
}

// Largest step t with X + t dX still PSD, given the Cholesky factor of X.
double max_step_psd(const Eigen::LLT<Matrix>& llt, const Matrix& dx) {
  Matrix t = llt.matrixL().solve(dx);
  t = llt.matrixL().solve(t.transpose().eval());
  t = 0.5 * (t + t.transpose()).eval();
  const double lam = Eigen::SelfAdjointEigenSolver<Matrix>(t, Eigen::EigenvaluesOnly).eigenvalues()[0];
  return lam >= 0.0 ? kInf : -1.0 / lam;
}

double max_step_lp(const Vector& s, const Vector& ds) {
  double t = kInf;
  for (Eigen::Index j = 0; j < s.size(); ++j)
    if (ds[j] < 0.0) t = std::min(t, -s[j] / ds[j]);
  return t;
}

struct Direction {
  Matrix dx_mat, dz_mat;
  Vector dx, dy, dz, ds, dw;
};

class Ipm {
 public:
  Ipm(const Data& d, const SolverConfig& cfg) : d_(d), cfg_(cfg) {}

  ConicSolution run();

 private:
  void initial_point();
  void residuals();
  bool factor();
  Direction newton(const Matrix& rc, const Vector& rlp) const;

  const Data& d_;
  const SolverConfig& cfg_;

  Matrix x_mat_, z_mat_;
  Vector x_, y_, z_, s_, w_;
  Vector rp_, rq_, rd_;
  double pobj_ = 0, dobj_ = 0, pinf_ = 0, dinf_ = 0, gap_ = 0, mu_ = 0;
  double reg_ = 0.0;

  // Factorization state of the current iterate.
  Matrix gnt_, gnt_inv_, w_inv_;
  Vector lambda_;
  Matrix k_mat_;
  Eigen::LLT<Matrix> k_llt_, m_llt_;
  Matrix kinv_at_;
};

void Ipm::initial_point() {
  const int n = d_.n;
  double ratio = 0.0, norm_a = 0.0;
  for (Eigen::Index i = 0; i < d_.a.rows(); ++i) {
    const double na = d_.a.row(i).norm();
    ratio = std::max(ratio, (1.0 + std::abs(d_.b[i])) / (1.0 + na));
    norm_a = std::max(norm_a, na);
  }
  for (Eigen::Index j = 0; j < d_.g.rows(); ++j) {
    const double ng = d_.g.row(j).norm();
    norm_a = std::max(norm_a, ng);
  }
  const double sqn = std::sqrt(double(n));
  const double xi = std::max({10.0, sqn, n * ratio});
  const double eta = std::max({10.0, sqn, norm_a, d_.c.norm()});

  x_mat_ = xi * Matrix::Identity(n, n);
  z_mat_ = eta * Matrix::Identity(n, n);
  x_ = svec(x_mat_);
  z_ = svec(z_mat_);
  y_ = Vector::Zero(d_.a.rows());
  s_ = Vector::Constant(d_.g.rows(), xi);
  w_ = Vector::Constant(d_.g.rows(), eta);
}

void Ipm::residuals() {
  rp_ = d_.b - d_.a * x_;
  rq_ = d_.h - d_.g * x_ - s_;
  rd_ = d_.c - d_.a.transpose() * y_ + d_.g.transpose() * w_ - z_;
  pobj_ = d_.c.dot(x_) + d_.c0;
  dobj_ = d_.b.dot(y_) - d_.h.dot(w_) + d_.c0;
  const double normb = std::sqrt(d_.b.squaredNorm() + d_.h.squaredNorm());
  pinf_ = std::sqrt(rp_.squaredNorm() + rq_.squaredNorm()) / (1.0 + normb);
  dinf_ = rd_.norm() / (1.0 + d_.c.norm());
  const double compl_ = x_.dot(z_) + s_.dot(w_);
  gap_ = std::max(std::abs(pobj_ - dobj_), compl_) / (1.0 + std::abs(pobj_) + std::abs(dobj_));
  mu_ = compl_ / double(d_.n + d_.g.rows());
}

bool Ipm::factor() {
  const int n = d_.n;
  // Nesterov-Todd scaling point: W = G G^T with G^{-1} X G^{-T} = G^T Z G = diag(lambda).
  Eigen::LLT<Matrix> lx(x_mat_);
  if (lx.info() != Eigen::Success) return false;
  Matrix l = lx.matrixL();
  Matrix t = l.transpose() * z_mat_ * l;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (t + t.transpose()));
  if (es.info() != Eigen::Success || es.eigenvalues()[0] <= 0.0) return false;
  lambda_ = es.eigenvalues().cwiseSqrt();
  const Vector rs = lambda_.cwiseSqrt();
  gnt_ = l * es.eigenvectors() * rs.cwiseInverse().asDiagonal();
  Matrix linv = l.triangularView<Eigen::Lower>().solve(Matrix::Identity(n, n));
  gnt_inv_ = rs.asDiagonal() * es.eigenvectors().transpose() * linv;
  w_inv_ = gnt_inv_.transpose() * gnt_inv_;

  // K = W^{-1} (x) W^{-1} + G^T diag(w/s) G
  Matrix& k = k_mat_;
  kernels::omp::skron(w_inv_, k);
  for (Eigen::Index j = 0; j < d_.g.outerSize(); ++j) {
    const double dj = w_[j] / s_[j];
    for (SparseRows::InnerIterator a(d_.g, j); a; ++a)
      for (SparseRows::InnerIterator b(d_.g, j); b; ++b) k(a.col(), b.col()) += dj * a.value() * b.value();
  }
  if (reg_ > 0.0) k.diagonal().array() += reg_ * std::max(1.0, k.diagonal().maxCoeff());

  k_llt_.compute(k);
  if (k_llt_.info() != Eigen::Success) return false;
  kinv_at_ = k_llt_.solve(d_.a.transpose());
  Matrix m = d_.a * kinv_at_;
  m = 0.5 * (m + m.transpose()).eval();
  if (reg_ > 0.0 && m.rows() > 0) m.diagonal().array() += reg_ * std::max(1.0, m.diagonal().maxCoeff());
  m_llt_.compute(m);
  return m_llt_.info() == Eigen::Success;
}

Direction Ipm::newton(const Matrix& rc, const Vector& rlp) const {
  const int n = d_.n;
  Direction dir;
  const Vector hinv_rc = svec(w_inv_ * rc * w_inv_);
  const Vector lp = (rlp - w_.cwiseProduct(rq_)).cwiseQuotient(s_);
  const Vector f = hinv_rc - rd_ - d_.g.transpose() * lp;
  // Block system [K -A^T; A 0] (dx, dy) = (f, rp), solved through the Schur
  // complement A K^{-1} A^T, then refined against the unfactored K.
  auto reduced_solve = [&](const Vector& r1, const Vector& r2, Vector& dx, Vector& dy) {
    const Vector kf = k_llt_.solve(r1);
    if (d_.a.rows() > 0) {
      dy = m_llt_.solve(r2 - d_.a * kf);
      dx = kf + kinv_at_ * dy;
    } else {
      dy = Vector();
      dx = kf;
    }
  };
  reduced_solve(f, rp_, dir.dx, dir.dy);
  for (int pass = 0; pass < 2; ++pass) {
    Vector r1 = f - k_mat_.selfadjointView<Eigen::Lower>() * dir.dx;
    Vector r2 = rp_;
    if (d_.a.rows() > 0) {
      r1 += d_.a.transpose() * dir.dy;
      r2 -= d_.a * dir.dx;
    }
    Vector cx, cy;
    reduced_solve(r1, r2, cx, cy);
    dir.dx += cx;
    if (d_.a.rows() > 0) dir.dy += cy;
  }
  dir.dx_mat = smat(dir.dx, n);
  dir.ds = rq_ - d_.g * dir.dx;
  dir.dw = (rlp - w_.cwiseProduct(dir.ds)).cwiseQuotient(s_);
  // dZ from the dual equation rather than W^{-1}(R - dX)W^{-1}: the latter
  // loses the dual residual to cancellation once W is ill-conditioned.
  dir.dz = rd_ + d_.g.transpose() * dir.dw;
  if (d_.a.rows() > 0) dir.dz -= d_.a.transpose() * dir.dy;
  dir.dz_mat = smat(dir.dz, n);
  return dir;
}

ConicSolution Ipm::run() {
  ConicSolution sol;
  initial_point();
  const int n = d_.n;
  const double nu = double(n + d_.g.rows());
  double best_merit = kInf;
  int since_best = 0;
  int tiny_steps = 0;

  auto finish = [&](SolveStatus st, int it, std::string msg) {
    // A stall within a factor 10 of every tolerance still counts.
    if (st == SolveStatus::NumericalTrouble && pinf_ <= 10 * cfg_.tol_primal && dinf_ <= 10 * cfg_.tol_dual &&
        gap_ <= 10 * cfg_.tol_gap) {
      st = SolveStatus::Optimal;
      msg = "converged to reduced accuracy (" + msg + ")";
    }
    sol.status = st;
    sol.iterations = it;
    sol.primal = x_mat_;
    sol.dual_slack = z_mat_;
    sol.dual_ineq = w_;
    sol.objective_primal = pobj_;
    sol.objective_dual = dobj_;
    sol.residuals = {pinf_, dinf_, gap_};
    sol.regularization = reg_;
    sol.message = std::move(msg);
    sol.dual_eq = y_;
    return sol;
  };

  // Failures report the best interior iterate seen so far.
  struct Snapshot {
    Vector x, y, z, s, w;
  };
  Snapshot best;
  double best_snapshot_merit = kInf;
  auto fail = [&](SolveStatus st, int it, std::string msg) {
    if (std::isfinite(best_snapshot_merit)) {
      x_ = best.x;
      y_ = best.y;
      z_ = best.z;
      s_ = best.s;
      w_ = best.w;
      x_mat_ = smat(x_, n);
      z_mat_ = smat(z_, n);
      residuals();
    }
    return finish(st, it, std::move(msg));
  };
  auto interior = [&] {
    return std::isfinite(pobj_) && std::isfinite(dobj_) && mu_ > 0.0 && (s_.size() == 0 || s_.minCoeff() > 0.0) &&
           (w_.size() == 0 || w_.minCoeff() > 0.0) && Eigen::LLT<Matrix>(x_mat_).info() == Eigen::Success &&
           Eigen::LLT<Matrix>(z_mat_).info() == Eigen::Success;
  };

  for (int it = 0;; ++it) {
    residuals();
    if (cfg_.verbosity > 0)
      std::fprintf(stderr, "%4d  pobj %+.10e  dobj %+.10e  pinf %.2e  dinf %.2e  gap %.2e  mu %.2e\n", it, pobj_,
                   dobj_, pinf_, dinf_, gap_, mu_);
    if (!interior()) return fail(SolveStatus::NumericalTrouble, it, "lost interiority");
    if (pinf_ <= cfg_.tol_primal && dinf_ <= cfg_.tol_dual && gap_ <= cfg_.tol_gap)
      return finish(SolveStatus::Optimal, it, "converged");

    const double merit = std::max({pinf_ / cfg_.tol_primal, dinf_ / cfg_.tol_dual, gap_ / cfg_.tol_gap});
    if (merit < best_snapshot_merit) {
      best_snapshot_merit = merit;
      best = {x_, y_, z_, s_, w_};
    }
    if (it >= cfg_.max_iters) return fail(SolveStatus::MaxIters, it, "iteration limit");

    if (merit < 0.9 * best_merit) {
      best_merit = merit;
      since_best = 0;
    } else if (++since_best >= 15) {
      // Stalled: turn on (or strengthen) primal regularization, then give up.
      if (reg_ == 0.0) {
        reg_ = 1e-9;
        since_best = 0;
      } else {
        return fail(SolveStatus::NumericalTrouble, it, "stalled");
      }
    }

    bool ok = factor();
    while (!ok && reg_ < 1e-6) {
      reg_ = reg_ == 0.0 ? 1e-9 : 10.0 * reg_;
      ok = factor();
    }
    if (!ok) return fail(SolveStatus::NumericalTrouble, it, "factorization breakdown");

    Eigen::LLT<Matrix> lx(x_mat_), lz(z_mat_);

    // Predictor.
    Direction aff = newton(-x_mat_, -s_.cwiseProduct(w_));
    const double ap_aff = std::min({1.0, max_step_psd(lx, aff.dx_mat), max_step_lp(s_, aff.ds)});
    const double ad_aff = std::min({1.0, max_step_psd(lz, aff.dz_mat), max_step_lp(w_, aff.dw)});
    const double mu_aff = ((x_ + ap_aff * aff.dx).dot(z_ + ad_aff * aff.dz) +
                           (s_ + ap_aff * aff.ds).dot(w_ + ad_aff * aff.dw)) /
                          nu;
    const double sigma = std::clamp(std::pow(mu_aff / mu_, 3.0), 0.0, 1.0);

    // Corrector in the scaled space, where X and Z both become diag(lambda).
    const Matrix dxs = gnt_inv_ * aff.dx_mat * gnt_inv_.transpose();
    const Matrix dzs = gnt_.transpose() * aff.dz_mat * gnt_;
    Matrix rt = -(dxs * dzs + dzs * dxs);
    for (int i = 0; i < n; ++i) rt(i, i) += 2.0 * sigma * mu_ - 2.0 * lambda_[i] * lambda_[i];
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) rt(i, j) /= lambda_[i] + lambda_[j];
    Matrix rc = gnt_ * rt * gnt_.transpose();
    rc = 0.5 * (rc + rc.transpose()).eval();
    const Vector rlp = Vector::Constant(s_.size(), sigma * mu_) - s_.cwiseProduct(w_) - aff.ds.cwiseProduct(aff.dw);
    Direction dir = newton(rc, rlp);

    const double ap_max = std::min(max_step_psd(lx, dir.dx_mat), max_step_lp(s_, dir.ds));
    const double ad_max = std::min(max_step_psd(lz, dir.dz_mat), max_step_lp(w_, dir.dw));
    const double gam = 0.9 + 0.09 * std::min(ap_aff, ad_aff);
    const double ap = std::min(1.0, gam * ap_max);
    const double ad = std::min(1.0, gam * ad_max);
    if (ap < 1e-10 && ad < 1e-10) {
      if (++tiny_steps >= 3) return fail(SolveStatus::NumericalTrouble, it, "step length collapsed");
    } else {
      tiny_steps = 0;
    }

    x_ += ap * dir.dx;
    s_ += ap * dir.ds;
    y_ += ad * dir.dy;
    z_ += ad * dir.dz;
    w_ += ad * dir.dw;
    x_mat_ = smat(x_, n);
    z_mat_ = smat(z_, n);
  }
}

// V' A V for sparse symmetric A.
SymCoeff restrict_to_face(const SymCoeff& a, const Matrix& v) {
  const Eigen::Index r = v.cols();
  Matrix out = Matrix::Zero(r, r);
  for (const auto& e : a.entries()) {
    const auto vr = v.row(e.row);
    const auto vc = v.row(e.col);
    if (e.row == e.col)
      out.noalias() += e.value * vr.transpose() * vr;
    else
      out.noalias() += e.value * (vr.transpose() * vc + vc.transpose() * vr);
  }
  const double drop = 1e-14 * std::max(1.0, out.cwiseAbs().maxCoeff());
  std::vector<SymEntry> entries;
  for (Eigen::Index j = 0; j < r; ++j)
    for (Eigen::Index i = 0; i <= j; ++i)
      if (std::abs(out(i, j)) > drop) entries.push_back({int(i), int(j), out(i, j)});
  return SymCoeff::from(std::move(entries));
}

ConicProblem restrict_problem(const ConicProblem& p) {
  const Matrix& v = *p.face();
  ConicProblem q(static_cast<int>(v.cols()));
  q.set_objective(restrict_to_face(p.objective(), v), p.objective_constant());
  for (const auto& c : p.equalities()) q.add_equality(c.label, restrict_to_face(c.coeff, v), c.rhs);
  for (const auto& c : p.inequalities()) q.add_inequality(c.label, restrict_to_face(c.coeff, v), c.rhs);
  if (p.trace_constant()) q.set_trace_constant(*p.trace_constant());
  return q;
}

}  // namespace

ConicSolution solve(const ConicProblem& p, const SolverConfig& cfg) {
  cfg.validate();
  if (p.order() < 1) throw std::invalid_argument("empty conic problem");
  if (p.face()) {
    if (p.face()->cols() > cfg.max_order)
      throw UnsupportedProblem("face order " + std::to_string(p.face()->cols()) + " exceeds the configured cap " +
                               std::to_string(cfg.max_order));
    ConicSolution sol = solve(restrict_problem(p), cfg);
    const Matrix& v = *p.face();
    sol.primal = v * sol.primal * v.transpose();
    return sol;
  }
  if (p.order() > cfg.max_order)
    throw UnsupportedProblem("block order " + std::to_string(p.order()) + " exceeds the configured cap " +
                             std::to_string(cfg.max_order));

  const Data d = assemble(p);
  const Eigen::Index me = static_cast<Eigen::Index>(p.equalities().size());
  if (!d.consistent) {
    ConicSolution sol;
    sol.status = SolveStatus::NumericalTrouble;
    sol.message = "inconsistent constraints";
    sol.primal = Matrix::Zero(p.order(), p.order());
    sol.dual_slack = Matrix::Zero(p.order(), p.order());
    sol.dual_eq = Vector::Zero(me);
    sol.dual_ineq = Vector::Zero(static_cast<Eigen::Index>(p.inequalities().size()));
    sol.residuals = {kInf, kInf, kInf};
    sol.objective_primal = kInf;
    sol.objective_dual = -kInf;
    sol.dropped_equalities = static_cast<int>(me - d.a.rows());
    sol.dropped_inequalities = static_cast<int>(p.inequalities().size() - d.ineq_rows.size());
    return sol;
  }

  Ipm ipm(d, cfg);
  ConicSolution sol = ipm.run();
  // Scatter the reduced equality duals back to the original numbering.
  Vector y = Vector::Zero(me);
  for (std::size_t r = 0; r < d.eq_rows.size(); ++r) y[d.eq_rows[r]] = sol.dual_eq[r];
  sol.dual_eq = std::move(y);
  Vector w = Vector::Zero(static_cast<Eigen::Index>(p.inequalities().size()));
  for (std::size_t r = 0; r < d.ineq_rows.size(); ++r) w[d.ineq_rows[r]] = sol.dual_ineq[r];
  sol.dual_ineq = std::move(w);
  sol.dropped_equalities = static_cast<int>(me - d.a.rows());
  sol.dropped_inequalities = static_cast<int>(p.inequalities().size() - d.ineq_rows.size());
  return sol;
}

}  // namespace gbis
