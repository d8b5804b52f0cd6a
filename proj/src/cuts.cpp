#include "gbis/cuts.hpp"

#include "gbis/sdp_model.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace gbis {

std::string to_string(CutKind kind) { return kind == CutKind::TriA ? "TriA" : "TriB"; }

std::string cut_label(const Cut& c) {
  return "bqp-cut(" + to_string(c.kind) + "," + std::to_string(c.i + 1) + "," + std::to_string(c.j + 1) + "," +
         std::to_string(c.k + 1) + ")";
}

SymCoeff cut_coeff(const Cut& c) {
  if (c.kind == CutKind::TriA)
    return SymCoeff::from({{c.i, c.k, 0.5}, {c.j, c.k, 0.5}, {c.k, c.k, -1.0}, {c.i, c.j, -0.5}});
  return SymCoeff::from(
      {{c.i, c.i, 1.0}, {c.j, c.j, 1.0}, {c.k, c.k, 1.0}, {c.i, c.j, -0.5}, {c.i, c.k, -0.5}, {c.j, c.k, -0.5}});
}

double cut_rhs(const Cut& c) { return c.kind == CutKind::TriA ? 0.0 : 1.0; }

double cut_violation(const Cut& c, const Matrix& x) {
  if (c.kind == CutKind::TriA) return x(c.i, c.k) + x(c.j, c.k) - x(c.k, c.k) - x(c.i, c.j);
  return x(c.i, c.i) + x(c.j, c.j) + x(c.k, c.k) - x(c.i, c.j) - x(c.i, c.k) - x(c.j, c.k) - 1.0;
}

void validate_cut(const Cut& c, int n) {
  auto in = [n](int v) { return v >= 0 && v < n; };
  if (!in(c.i) || !in(c.j) || !in(c.k)) throw std::invalid_argument("cut index out of range: " + cut_label(c));
  const bool ok = c.kind == CutKind::TriA ? (c.i < c.j && c.k != c.i && c.k != c.j) : (c.i < c.j && c.j < c.k);
  if (!ok) throw std::invalid_argument("cut indices not normalized: " + cut_label(c));
}

std::vector<Cut> separate(const Matrix& x, std::size_t limit, double eps) {
  if (x.rows() != x.cols()) throw std::invalid_argument("separate: matrix must be square");
  const auto found = kernels::omp::triangle_scan(x, eps);
  std::vector<Cut> cuts;
  cuts.reserve(found.size());
  for (const auto& t : found) cuts.push_back({t.kind, t.i, t.j, t.k, t.violation});
  auto better = [](const Cut& a, const Cut& b) {
    if (a.violation != b.violation) return a.violation > b.violation;
    return a.key() < b.key();
  };
  if (cuts.size() > limit) {
    std::partial_sort(cuts.begin(), cuts.begin() + static_cast<std::ptrdiff_t>(limit), cuts.end(), better);
    cuts.resize(limit);
  } else {
    std::sort(cuts.begin(), cuts.end(), better);
  }
  return cuts;
}

CutPool::CutPool(int n, std::size_t cap) : n_(n), cap_(cap == 0 ? 40 * static_cast<std::size_t>(n) : cap) {
  if (n < 3) throw std::invalid_argument("CutPool needs n >= 3");
}

bool CutPool::add(const Cut& c, int round) {
  validate_cut(c, n_);
  if (full() || contains(c)) return false;
  keys_.insert(c.key());
  entries_.push_back({c, round});
  return true;
}

std::size_t append_cuts(ConicProblem& p, const std::vector<Cut>& cuts) {
  std::size_t added = 0;
  for (const auto& c : cuts) {
    validate_cut(c, p.order());
    if (p.try_add_inequality(cut_label(c), cut_coeff(c), cut_rhs(c))) ++added;
  }
  return added;
}

void LoopConfig::validate() const {
  if (max_rounds < 0) throw std::invalid_argument("max_rounds must be nonnegative");
  if (cuts_per_round < 0) throw std::invalid_argument("cuts_per_round must be nonnegative");
  if (!(eps >= 0.0)) throw std::invalid_argument("eps must be nonnegative");
  if (!(stall_rel >= 0.0) || stall_rounds < 1) throw std::invalid_argument("bad stall rule");
  solver.validate();
}

std::optional<double> ceil_bound(double value, bool integral_weights) {
  if (!integral_weights || !std::isfinite(value)) return std::nullopt;
  return std::ceil(value - 1e-6);
}

LoopResult cutting_plane_loop(const BisectionInstance& inst, const LoopConfig& cfg) {
  cfg.validate();
  using clock = std::chrono::steady_clock;
  const int n = inst.n();
  const std::size_t per_round = cfg.cuts_per_round > 0 ? static_cast<std::size_t>(cfg.cuts_per_round) : 2u * n;

  ConicProblem p = build_new(inst, true);
  CutPool pool(std::max(n, 3), cfg.pool_cap);
  LoopResult res;
  res.certified = -std::numeric_limits<double>::infinity();
  int stalled = 0;

  for (int round = 0;; ++round) {
    std::size_t added = 0;
    if (round > 0) {
      std::vector<Cut> batch;
      for (const auto& c : separate(res.last_x, per_round, cfg.eps)) {
        if (pool.full()) break;
        if (pool.add(c, round)) batch.push_back(c);
      }
      if (batch.empty()) {
        res.stop_reason = pool.full() ? "cut pool full" : "no violated cuts";
        break;
      }
      added = append_cuts(p, batch);
    }

    const auto t0 = clock::now();
    const ConicSolution sol = solve(p, cfg.solver);
    RoundRecord rec;
    rec.round = round;
    rec.cuts_added = added;
    rec.cuts_total = pool.size();
    rec.objective_primal = sol.objective_primal;
    rec.objective_dual = sol.objective_dual;
    rec.status = sol.status;
    rec.message = sol.message;
    rec.iterations = sol.iterations;
    rec.safe_bound = -std::numeric_limits<double>::infinity();
    if (sol.dual_eq.allFinite() && sol.dual_ineq.allFinite()) {
      const double v = safe_lower_bound(p, sol).value;
      if (std::isfinite(v)) rec.safe_bound = v;
    }
    rec.seconds = std::chrono::duration<double>(clock::now() - t0).count();
    res.rounds.push_back(rec);

    const double before = res.certified;
    res.certified = std::max(res.certified, rec.safe_bound);
    res.last_x = sol.primal;

    if (sol.status != SolveStatus::Optimal) {
      res.stop_reason = "solver: " + to_string(sol.status) + " (" + sol.message + ")";
      break;
    }
    if (round > 0) {
      const double gain = res.certified - before;
      stalled = gain < cfg.stall_rel * (1.0 + std::abs(res.certified)) ? stalled + 1 : 0;
      if (stalled >= cfg.stall_rounds) {
        res.stop_reason = "bound stalled";
        break;
      }
    }
    if (round >= cfg.max_rounds) {
      res.stop_reason = "round limit";
      break;
    }
  }
  res.ceiled = ceil_bound(res.certified, inst.graph.integral_weights());
  return res;
}

}  // namespace gbis
