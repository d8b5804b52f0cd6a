// gbis: lower and upper bounds for minimum graph bisection.
//
//   gbis solve   --generate pappus --m 10,8 --relaxation new --cuts
//   gbis compare --generate gnp:8,0.5,1 --m 5,3
//   gbis export  --generate johnson:7,2 --m 11,10 --relaxation wz

#include "gbis/cuts.hpp"
#include "gbis/generators.hpp"
#include "gbis/heuristic.hpp"
#include "gbis/report.hpp"
#include "gbis/sdp_model.hpp"
#include "gbis/sdp_solver.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

using namespace gbis;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Exit codes.
constexpr int kOk = 0;
constexpr int kSolverFailure = 1;
constexpr int kUsage = 2;
constexpr int kCheckFailed = 3;

struct InstanceArgs {
  std::string path;
  std::string generate;
  std::vector<int> m;

  void attach(CLI::App* app) {
    auto* inst = app->add_option("--instance", path, "Instance file (n |E| m1 m2 header, 1-based edge list)");
    auto* gen = app->add_option("--generate", generate,
                                "Generated graph: pappus, desargues, biggs-smith, johnson:v,k, gnp:n,p,seed, "
                                "lcf:repeats:j1,j2,...");
    inst->excludes(gen);
    gen->excludes(inst);
    app->add_option("--m", m, "Part sizes m1,m2 (required with --generate)")->delimiter(',')->expected(2);
  }

  BisectionInstance load() const {
    if (path.empty() && generate.empty()) throw CLI::ValidationError("one of --instance or --generate is required");
    if (!path.empty()) {
      BisectionInstance inst = load_instance(path);
      if (m.empty()) return inst;
      return BisectionInstance(inst.graph, m[0], m[1], inst.name);
    }
    if (m.size() != 2) throw CLI::ValidationError("--generate needs --m m1,m2");
    return BisectionInstance(GraphRegistry::builtin().generate(generate), m[0], m[1], generate);
  }
};

std::vector<RelaxationKind> parse_list(const std::vector<std::string>& names) {
  std::vector<RelaxationKind> out;
  for (const auto& s : names) {
    const RelaxationKind k = parse_relaxation(s);
    if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
  }
  return out;
}

RelaxationResult run_relaxation(RelaxationKind kind, const BisectionInstance& inst, const SolverConfig& cfg) {
  const auto t0 = Clock::now();
  const ConicProblem p = build(kind, inst);
  const ConicSolution sol = solve(p, cfg);
  RelaxationResult r;
  r.relaxation = to_string(kind);
  r.status = sol.status;
  r.message = sol.message;
  r.objective_primal = sol.objective_primal;
  r.objective_dual = sol.objective_dual;
  r.safe_bound = -INFINITY;
  if (sol.dual_eq.allFinite() && sol.dual_ineq.allFinite()) r.safe_bound = safe_lower_bound(p, sol).value;
  r.ceiled = ceil_bound(r.safe_bound, inst.graph.integral_weights());
  r.iterations = sol.iterations;
  r.regularization = sol.regularization;
  r.seconds = since(t0);
  return r;
}

void echo(BoundReport& rep, const CLI::App& app) {
  for (const CLI::Option* o : app.get_options()) {
    if (o->get_name() == "--help" || o->count() == 0) continue;
    std::string v;
    for (const auto& s : o->results()) v += (v.empty() ? "" : ",") + s;
    rep.config.emplace_back(o->get_name(), v);
  }
}

void log_line(int verbosity, const std::string& s) {
  if (verbosity > 0) std::cerr << s << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounds for minimum graph bisection"};
  app.require_subcommand(1);
  int verbosity = 0;

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Lower bounds, optional cutting planes and an upper bound");
  InstanceArgs solve_in;
  solve_in.attach(solve_cmd);
  std::vector<std::string> relax_names{"new"};
  bool cuts = false;
  LoopConfig loop;
  double tol = 1e-7;
  std::string ub = "tabu";
  std::uint64_t seed = 1;
  std::string out = "json";
  solve_cmd->add_option("--relaxation", relax_names, "basic, new, new-bare, wz (comma separated)")
      ->delimiter(',')
      ->capture_default_str();
  solve_cmd->add_flag("--cuts", cuts, "Cutting planes on the new relaxation");
  solve_cmd->add_option("--max-rounds", loop.max_rounds, "Cut rounds after the first solve")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--cuts-per-round", loop.cuts_per_round, "Cuts added per round (0: 2n)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--eps", loop.eps, "Violation threshold for separation")->capture_default_str();
  solve_cmd->add_option("--tol", tol, "Relative solver tolerance (primal, dual, gap)")->capture_default_str();
  solve_cmd->add_option("--ub", ub, "Upper bound method")->check(CLI::IsMember({"tabu", "brute", "none"}));
  solve_cmd->add_option("--seed", seed, "Tabu search seed")->capture_default_str();
  solve_cmd->add_option("--out", out, "Report format")->check(CLI::IsMember({"json", "csv"}));

  // compare
  auto* cmp_cmd = app.add_subcommand("compare", "Solve several relaxations and check how they relate");
  InstanceArgs cmp_in;
  cmp_in.attach(cmp_cmd);
  std::vector<std::string> cmp_names{"basic", "new", "new-bare", "wz"};
  double cmp_tol = 1e-7;
  cmp_cmd->add_option("--relaxation", cmp_names, "Relaxations to solve")->delimiter(',')->capture_default_str();
  cmp_cmd->add_option("--tol", cmp_tol, "Relative solver tolerance")->capture_default_str();

  int solve_verbosity = 0, cmp_verbosity = 0;
  solve_cmd->add_flag_function(
      "-v,--verbose", [&](std::int64_t c) { solve_verbosity = static_cast<int>(c); },
      "Progress on stderr (repeat for solver iterations)");
  cmp_cmd->add_flag_function(
      "-v,--verbose", [&](std::int64_t c) { cmp_verbosity = static_cast<int>(c) + 1; }, "Solver iterations on stderr");

  // export
  auto* exp_cmd = app.add_subcommand("export", "Write the conic problem of one relaxation");
  InstanceArgs exp_in;
  exp_in.attach(exp_cmd);
  std::string exp_relax = "new";
  std::string exp_out;
  exp_cmd->add_option("--relaxation", exp_relax, "basic, new, new-bare or wz")->capture_default_str();
  exp_cmd->add_option("-o,--output", exp_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  verbosity = std::max(solve_verbosity, cmp_verbosity);
  try {
    if (*exp_cmd) {
      const BisectionInstance inst = exp_in.load();
      const ConicProblem p = build(parse_relaxation(exp_relax), inst);
      if (exp_out.empty()) {
        p.write(std::cout);
      } else {
        std::ofstream f(exp_out);
        if (!f) throw std::runtime_error("cannot write " + exp_out);
        p.write(f);
      }
      return kOk;
    }

    if (*cmp_cmd) {
      const BisectionInstance inst = cmp_in.load();
      SolverConfig cfg;
      cfg.tol_primal = cfg.tol_dual = cfg.tol_gap = cmp_tol;
      cfg.verbosity = std::max(0, verbosity - 1);
      std::map<std::string, RelaxationResult> res;
      bool solver_ok = true;
      for (RelaxationKind k : parse_list(cmp_names)) {
        RelaxationResult r = run_relaxation(k, inst, cfg);
        solver_ok = solver_ok && r.status == SolveStatus::Optimal;
        std::printf("%-9s %-18s primal %.9f  safe %.9f  %.3fs\n", r.relaxation.c_str(), to_string(r.status).c_str(),
                    r.objective_primal, r.safe_bound, r.seconds);
        res[r.relaxation] = r;
      }
      bool all = true;
      auto check = [&](const char* name, bool ok, double lhs, double rhs) {
        std::printf("%s %-28s %.9f vs %.9f\n", ok ? "PASS" : "FAIL", name, lhs, rhs);
        all = all && ok;
      };
      auto has = [&](const char* k) { return res.count(k) > 0; };
      if (has("new") && has("wz")) {
        const double a = res["new"].safe_bound, b = res["wz"].safe_bound;
        check("new == wz", std::abs(a - b) <= 1e-5 * (1.0 + std::abs(a)), a, b);
      }
      if (has("basic") && has("new")) {
        const double a = res["basic"].safe_bound, b = res["new"].safe_bound;
        check("basic <= new", a <= b + 1e-6 * (1.0 + std::abs(b)), a, b);
      }
      if (has("basic") && has("wz")) {
        const double a = res["basic"].safe_bound, b = res["wz"].safe_bound;
        check("basic <= wz", a <= b + 1e-6 * (1.0 + std::abs(b)), a, b);
      }
      if (has("new-bare") && has("new")) {
        const double a = res["new-bare"].safe_bound, b = res["new"].safe_bound;
        check("new-bare <= new", a <= b + 1e-6 * (1.0 + std::abs(b)), a, b);
      }
      if (!solver_ok) return kSolverFailure;
      return all ? kOk : kCheckFailed;
    }

    // solve
    const auto t_all = Clock::now();
    const BisectionInstance inst = solve_in.load();
    const auto kinds = parse_list(relax_names);
    const bool has_new = std::find(kinds.begin(), kinds.end(), RelaxationKind::New) != kinds.end();
    const bool has_wz = std::find(kinds.begin(), kinds.end(), RelaxationKind::WZ) != kinds.end();
    if (cuts && has_wz) throw CLI::ValidationError("--cuts applies to the new relaxation only; drop wz");
    if (cuts && !has_new) throw CLI::ValidationError("--cuts needs --relaxation new");
    if (ub == "brute" && inst.n() > 24) throw CLI::ValidationError("--ub brute supports n <= 24");

    SolverConfig cfg;
    cfg.tol_primal = cfg.tol_dual = cfg.tol_gap = tol;
    cfg.verbosity = std::max(0, verbosity - 1);
    cfg.validate();
    loop.solver = cfg;

    BoundReport rep;
    rep.instance = inst.name.empty() ? (solve_in.path.empty() ? solve_in.generate : solve_in.path) : inst.name;
    rep.n = inst.n();
    rep.m1 = inst.m1;
    rep.m2 = inst.m2;
    rep.integral_weights = inst.graph.integral_weights();
    echo(rep, *solve_cmd);

    bool failed = false;
    for (RelaxationKind k : kinds) {
      if (k == RelaxationKind::New && cuts) {
        const auto t0 = Clock::now();
        const LoopResult lr = cutting_plane_loop(inst, loop);
        const RoundRecord& r0 = lr.rounds.front();
        RelaxationResult r;
        r.relaxation = "new";
        r.status = r0.status;
        r.message = r0.message;
        r.objective_primal = r0.objective_primal;
        r.objective_dual = r0.objective_dual;
        r.safe_bound = r0.safe_bound;
        r.ceiled = ceil_bound(r0.safe_bound, rep.integral_weights);
        r.iterations = r0.iterations;
        r.seconds = r0.seconds;
        rep.relaxations.push_back(r);
        rep.cuts = CutTrace{lr.rounds, lr.certified, lr.ceiled, lr.stop_reason};
        failed = failed || r0.status != SolveStatus::Optimal;
        log_line(verbosity, "new + cuts: " + std::to_string(lr.rounds.size() - 1) + " rounds, certified " +
                                std::to_string(lr.certified) + " (" + lr.stop_reason + ") in " +
                                std::to_string(since(t0)) + " s");
        continue;
      }
      RelaxationResult r = run_relaxation(k, inst, cfg);
      failed = failed || r.status != SolveStatus::Optimal;
      log_line(verbosity, r.relaxation + ": " + to_string(r.status) + " safe " + std::to_string(r.safe_bound));
      rep.relaxations.push_back(r);
    }

    if (ub != "none") {
      const auto t0 = Clock::now();
      TabuConfig tc;
      tc.seed = seed;
      const HeuristicResult h = ub == "brute" ? brute_force(inst) : tabu_search(inst, tc);
      UpperBound u{ub, h.cut, {}, since(t0)};
      for (std::size_t v = 0; v < h.assignment.size(); ++v)
        if (h.assignment[v] == 1) u.part1.push_back(static_cast<int>(v) + 1);
      rep.upper = u;
    }
    rep.seconds = since(t_all);

    if (out == "csv")
      std::cout << csv_header() << '\n' << csv_row(rep) << '\n';
    else
      std::cout << to_json(rep) << '\n';

    if (failed) {
      std::cerr << "error: solver did not reach the requested accuracy\n";
      return kSolverFailure;
    }
    if (rep.upper) {
      double lower = -INFINITY;
      for (const auto& r : rep.relaxations) lower = std::max(lower, r.ceiled.value_or(r.safe_bound));
      if (rep.cuts) lower = std::max(lower, rep.cuts->ceiled.value_or(rep.cuts->certified));
      if (lower > rep.upper->value + 1e-6 * (1.0 + std::abs(lower))) {
        std::cerr << "error: lower bound " << lower << " exceeds upper bound " << rep.upper->value << '\n';
        return kCheckFailed;
      }
    }
    return kOk;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InstanceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnsupportedProblem& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolverFailure;
  }
}
