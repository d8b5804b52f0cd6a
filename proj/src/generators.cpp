#include "gbis/generators.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#ifndef GBIS_DEFAULT_DATA_DIR
#define GBIS_DEFAULT_DATA_DIR "data"
#endif

namespace gbis {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

long long to_int(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw InstanceError("bad integer for " + what + ": '" + s + "'");
  }
  if (pos != s.size()) throw InstanceError("bad integer for " + what + ": '" + s + "'");
  return v;
}

double to_double(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw InstanceError("bad number for " + what + ": '" + s + "'");
  }
  if (pos != s.size()) throw InstanceError("bad number for " + what + ": '" + s + "'");
  return v;
}

void advance_combination(std::vector<int>& c, int v) {
  int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[i] == v - k + i) --i;
  if (i < 0) {
    c.clear();
    return;
  }
  ++c[i];
  for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
}

}  // namespace

Graph gen_lcf(const std::vector<int>& jumps, int repeats) {
  if (jumps.empty() || repeats <= 0) throw InstanceError("LCF code needs jumps and repeats > 0");
  const int n = static_cast<int>(jumps.size()) * repeats;
  if (n < 4 || n % 2 != 0) throw InstanceError("LCF code must give an even order >= 4");

  std::vector<int> partner(n);
  for (int i = 0; i < n; ++i) {
    int j = jumps[i % jumps.size()];
    if (std::abs(j) < 2 || std::abs(j) > n - 2)
      throw InstanceError("LCF jump " + std::to_string(j) + " out of range for n = " + std::to_string(n));
    partner[i] = ((i + j) % n + n) % n;
  }

  std::set<std::pair<int, int>> seen;
  std::vector<Edge> edges;
  edges.reserve(3 * n / 2);
  auto add = [&](int a, int b) {
    auto key = std::minmax(a, b);
    if (a == b) throw InstanceError("LCF code produces a self-loop");
    if (!seen.insert(key).second)
      throw InstanceError("LCF code produces a parallel edge {" + std::to_string(key.first + 1) + ", " +
                          std::to_string(key.second + 1) + "}");
    edges.push_back({key.first, key.second, 1.0});
  };
  for (int i = 0; i < n; ++i) add(i, (i + 1) % n);
  for (int i = 0; i < n; ++i) {
    if (partner[partner[i]] != i)
      throw InstanceError("LCF chords are not paired at vertex " + std::to_string(i + 1));
    if (i < partner[i]) add(i, partner[i]);
  }

  Graph g(n, std::move(edges));
  auto deg = g.degrees();
  if (std::any_of(deg.begin(), deg.end(), [](int d) { return d != 3; }))
    throw InstanceError("LCF graph is not 3-regular");
  return g;
}

Graph gen_johnson(int v, int k) {
  if (k < 1 || k >= v) throw InstanceError("Johnson graph needs 1 <= k < v");
  std::vector<std::vector<int>> subsets;
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  while (!c.empty()) {
    subsets.push_back(c);
    advance_combination(c, v);
  }
  const int n = static_cast<int>(subsets.size());
  std::vector<Edge> edges;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      std::vector<int> common;
      std::set_intersection(subsets[a].begin(), subsets[a].end(), subsets[b].begin(), subsets[b].end(),
                            std::back_inserter(common));
      if (static_cast<int>(common.size()) == k - 1) edges.push_back({a, b, 1.0});
    }
  }
  return Graph(n, std::move(edges));
}

Graph gen_gnp(int n, double p, std::uint64_t seed) {
  if (n < 2) throw InstanceError("G(n,p) needs n >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw InstanceError("G(n,p) needs 0 <= p <= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (unif(rng) < p) edges.push_back({i, j, 1.0});
  return Graph(n, std::move(edges));
}

GraphRegistry GraphRegistry::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot open graph registry: " + path);
  GraphRegistry reg;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    LcfEntry e;
    if (!(ls >> e.name)) continue;
    if (!(ls >> e.vertices >> e.repeats)) throw InstanceError("malformed registry entry: " + e.name);
    int j = 0;
    while (ls >> j) e.jumps.push_back(j);
    if (!ls.eof()) throw InstanceError("malformed jump list for " + e.name);
    reg.entries_[e.name] = std::move(e);
  }
  return reg;
}

const GraphRegistry& GraphRegistry::builtin() {
  static const GraphRegistry reg = [] {
    if (const char* dir = std::getenv("GBIS_DATA_DIR"))
      return load(std::string(dir) + "/named_graphs.txt");
    return load(std::string(GBIS_DEFAULT_DATA_DIR) + "/named_graphs.txt");
  }();
  return reg;
}

Graph GraphRegistry::generate(const std::string& spec) const {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::string args = colon == std::string::npos ? std::string{} : spec.substr(colon + 1);

  if (kind == "johnson") {
    auto parts = split(args, ',');
    if (parts.size() != 2) throw InstanceError("expected johnson:v,k");
    return gen_johnson(static_cast<int>(to_int(parts[0], "v")), static_cast<int>(to_int(parts[1], "k")));
  }
  if (kind == "gnp") {
    auto parts = split(args, ',');
    if (parts.size() != 3) throw InstanceError("expected gnp:n,p,seed");
    return gen_gnp(static_cast<int>(to_int(parts[0], "n")), to_double(parts[1], "p"),
                   static_cast<std::uint64_t>(to_int(parts[2], "seed")));
  }
  if (kind == "lcf") {
    auto colon2 = args.find(':');
    if (colon2 == std::string::npos) throw InstanceError("expected lcf:repeats:j1,j2,...");
    int repeats = static_cast<int>(to_int(args.substr(0, colon2), "repeats"));
    std::vector<int> jumps;
    for (const auto& s : split(args.substr(colon2 + 1), ','))
      jumps.push_back(static_cast<int>(to_int(s, "jump")));
    return gen_lcf(jumps, repeats);
  }

  auto it = entries_.find(spec);
  if (it == entries_.end()) throw InstanceError("unknown graph: " + spec);
  const auto& e = it->second;
  Graph g = gen_lcf(e.jumps, e.repeats);
  if (g.order() != e.vertices)
    throw InstanceError("registry entry " + e.name + " yields " + std::to_string(g.order()) +
                        " vertices, expected " + std::to_string(e.vertices));
  return g;
}

}  // namespace gbis
