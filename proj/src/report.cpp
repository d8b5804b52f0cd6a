#include "gbis/report.hpp"

#include "json.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gbis {

using nlohmann::json;

namespace {

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double get_num(const json& j, const char* key) {
  const json& v = j.at(key);
  return v.is_null() ? -std::numeric_limits<double>::infinity() : v.get<double>();
}

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

SolveStatus parse_status(const std::string& s) {
  for (auto st : {SolveStatus::Optimal, SolveStatus::MaxIters, SolveStatus::NumericalTrouble})
    if (to_string(st) == s) return st;
  throw std::invalid_argument("unknown solver status: " + s);
}

json round_json(const RoundRecord& r) {
  return {{"round", r.round},
          {"cuts_added", r.cuts_added},
          {"cuts_total", r.cuts_total},
          {"objective_primal", num(r.objective_primal)},
          {"objective_dual", num(r.objective_dual)},
          {"safe_bound", num(r.safe_bound)},
          {"status", to_string(r.status)},
          {"message", r.message},
          {"iterations", r.iterations},
          {"seconds", r.seconds}};
}

RoundRecord round_from(const json& j) {
  RoundRecord r;
  r.round = j.at("round").get<int>();
  r.cuts_added = j.at("cuts_added").get<std::size_t>();
  r.cuts_total = j.at("cuts_total").get<std::size_t>();
  r.objective_primal = get_num(j, "objective_primal");
  r.objective_dual = get_num(j, "objective_dual");
  r.safe_bound = get_num(j, "safe_bound");
  r.status = parse_status(j.at("status").get<std::string>());
  r.message = j.at("message").get<std::string>();
  r.iterations = j.at("iterations").get<int>();
  r.seconds = j.at("seconds").get<double>();
  return r;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

const RelaxationResult* BoundReport::find(const std::string& relaxation) const {
  for (const auto& r : relaxations)
    if (r.relaxation == relaxation) return &r;
  return nullptr;
}

std::string to_json(const BoundReport& r, int indent) {
  json j;
  j["instance"] = r.instance;
  j["n"] = r.n;
  j["m"] = {r.m1, r.m2};
  j["integral_weights"] = r.integral_weights;
  j["relaxations"] = json::array();
  for (const auto& x : r.relaxations)
    j["relaxations"].push_back({{"relaxation", x.relaxation},
                                {"status", to_string(x.status)},
                                {"message", x.message},
                                {"objective_primal", num(x.objective_primal)},
                                {"objective_dual", num(x.objective_dual)},
                                {"safe_bound", num(x.safe_bound)},
                                {"ceiled", opt(x.ceiled)},
                                {"iterations", x.iterations},
                                {"regularization", x.regularization},
                                {"seconds", x.seconds}});
  if (r.cuts) {
    json c;
    c["rounds"] = json::array();
    for (const auto& rr : r.cuts->rounds) c["rounds"].push_back(round_json(rr));
    c["certified"] = num(r.cuts->certified);
    c["ceiled"] = opt(r.cuts->ceiled);
    c["stop_reason"] = r.cuts->stop_reason;
    j["cuts"] = c;
  } else {
    j["cuts"] = nullptr;
  }
  if (r.upper)
    j["upper_bound"] = {{"method", r.upper->method},
                        {"value", r.upper->value},
                        {"part1", r.upper->part1},
                        {"seconds", r.upper->seconds}};
  else
    j["upper_bound"] = nullptr;
  j["config"] = json::array();
  for (const auto& [k, v] : r.config) j["config"].push_back({k, v});
  j["seconds"] = r.seconds;
  return j.dump(indent);
}

BoundReport report_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    BoundReport r;
    r.instance = j.at("instance").get<std::string>();
    r.n = j.at("n").get<int>();
    r.m1 = j.at("m").at(0).get<int>();
    r.m2 = j.at("m").at(1).get<int>();
    r.integral_weights = j.at("integral_weights").get<bool>();
    for (const auto& x : j.at("relaxations")) {
      RelaxationResult rr;
      rr.relaxation = x.at("relaxation").get<std::string>();
      rr.status = parse_status(x.at("status").get<std::string>());
      rr.message = x.at("message").get<std::string>();
      rr.objective_primal = get_num(x, "objective_primal");
      rr.objective_dual = get_num(x, "objective_dual");
      rr.safe_bound = get_num(x, "safe_bound");
      rr.ceiled = get_opt(x, "ceiled");
      rr.iterations = x.at("iterations").get<int>();
      rr.regularization = x.at("regularization").get<double>();
      rr.seconds = x.at("seconds").get<double>();
      r.relaxations.push_back(std::move(rr));
    }
    if (!j.at("cuts").is_null()) {
      const json& c = j.at("cuts");
      CutTrace t;
      for (const auto& rr : c.at("rounds")) t.rounds.push_back(round_from(rr));
      t.certified = get_num(c, "certified");
      t.ceiled = get_opt(c, "ceiled");
      t.stop_reason = c.at("stop_reason").get<std::string>();
      r.cuts = std::move(t);
    }
    if (!j.at("upper_bound").is_null()) {
      const json& u = j.at("upper_bound");
      r.upper = UpperBound{u.at("method").get<std::string>(), u.at("value").get<double>(),
                           u.at("part1").get<std::vector<int>>(), u.at("seconds").get<double>()};
    }
    for (const auto& kv : j.at("config"))
      r.config.emplace_back(kv.at(0).get<std::string>(), kv.at(1).get<std::string>());
    r.seconds = j.at("seconds").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

std::string csv_header() { return "instance,n,m,basic,new,new+cuts,ub"; }

std::string csv_row(const BoundReport& r) {
  auto bound = [&](double safe, const std::optional<double>& ceiled) {
    if (ceiled) return fmt(*ceiled);
    return std::isfinite(safe) ? fmt(safe) : std::string();
  };
  auto relax = [&](const char* name) {
    const RelaxationResult* x = r.find(name);
    return x ? bound(x->safe_bound, x->ceiled) : std::string();
  };
  std::string row = csv_quote(r.instance) + "," + std::to_string(r.n) + ",\"(" + std::to_string(r.m1) + "," +
                    std::to_string(r.m2) + ")\"," + relax("basic") + "," + relax("new") + ",";
  if (r.cuts) row += bound(r.cuts->certified, r.cuts->ceiled);
  row += ",";
  if (r.upper) row += fmt(r.upper->value);
  return row;
}

}  // namespace gbis
