#include "gbis/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

namespace gbis {

namespace {

bool is_integer(double w) { return std::isfinite(w) && std::floor(w) == w; }

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

Graph::Graph(int n, std::vector<Edge> edges) : n_(n) {
  if (n < 2) throw InstanceError("graph needs at least 2 vertices, got " + std::to_string(n));

  std::map<std::pair<int, int>, double> merged;
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw InstanceError("edge endpoint out of range: (" + std::to_string(e.u + 1) + ", " +
                          std::to_string(e.v + 1) + ")");
    if (e.u == e.v) throw InstanceError("self-loop at vertex " + std::to_string(e.u + 1));
    if (!std::isfinite(e.w)) throw InstanceError("non-finite edge weight");
    merged[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.w;
  }
  edges_.reserve(merged.size());
  for (const auto& [key, w] : merged) {
    edges_.push_back({key.first, key.second, w});
    integral_ = integral_ && is_integer(w);
  }
}

double Graph::total_weight() const {
  double s = 0.0;
  for (const auto& e : edges_) s += e.w;
  return s;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> d(n_, 0);
  for (const auto& e : edges_) {
    ++d[e.u];
    ++d[e.v];
  }
  return d;
}

Matrix Graph::adjacency() const {
  Matrix a = Matrix::Zero(n_, n_);
  for (const auto& e : edges_) {
    a(e.u, e.v) += e.w;
    a(e.v, e.u) += e.w;
  }
  return a;
}

BisectionInstance::BisectionInstance(Graph g, int m1_, int m2_, std::string name_)
    : graph(std::move(g)), m1(m1_), m2(m2_), name(std::move(name_)) {
  if (m1 <= 0 || m2 <= 0)
    throw InstanceError("part sizes must be positive, got (" + std::to_string(m1) + ", " +
                        std::to_string(m2) + ")");
  if (m1 + m2 != graph.order())
    throw InstanceError("part sizes (" + std::to_string(m1) + ", " + std::to_string(m2) +
                        ") do not sum to n = " + std::to_string(graph.order()));
  if (m1 < m2) throw InstanceError("expected m1 >= m2");
}

Assignment Assignment::from_part1(int n, const std::vector<int>& part1) {
  std::vector<int> p(n, 2);
  for (int v : part1) {
    if (v < 0 || v >= n) throw InstanceError("vertex out of range in part 1");
    p[v] = 1;
  }
  return Assignment(std::move(p));
}

Vector Assignment::indicator() const {
  Vector z(static_cast<Eigen::Index>(part_.size()));
  for (std::size_t i = 0; i < part_.size(); ++i) z[i] = part_[i] == 1 ? 1.0 : 0.0;
  return z;
}

void Assignment::validate(const BisectionInstance& inst) const {
  if (static_cast<int>(part_.size()) != inst.n())
    throw InstanceError("assignment has " + std::to_string(part_.size()) + " entries, graph has " +
                        std::to_string(inst.n()) + " vertices");
  int c1 = 0;
  for (int p : part_) {
    if (p != 1 && p != 2) throw InstanceError("part labels must be 1 or 2");
    c1 += p == 1;
  }
  if (c1 != inst.m1 || inst.n() - c1 != inst.m2)
    throw InstanceError("assignment sizes (" + std::to_string(c1) + ", " +
                        std::to_string(inst.n() - c1) + ") differ from m");
}

Matrix laplacian(const Graph& g) {
  Matrix l = Matrix::Zero(g.order(), g.order());
  for (const auto& e : g.edges()) {
    l(e.u, e.v) -= e.w;
    l(e.v, e.u) -= e.w;
    l(e.u, e.u) += e.w;
    l(e.v, e.v) += e.w;
  }
  return l;
}

double cut_value(const Graph& g, const Assignment& a) {
  if (static_cast<int>(a.size()) != g.order())
    throw InstanceError("assignment size does not match graph order");
  double cut = 0.0;
  for (const auto& e : g.edges())
    if (a[e.u] != a[e.v]) cut += e.w;
  return cut;
}

double cut_value(const BisectionInstance& inst, const Assignment& a) {
  a.validate(inst);
  return cut_value(inst.graph, a);
}

BisectionInstance parse_instance(std::istream& in, std::string name) {
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(in, line)) {
    auto body = strip_comment(line);
    if (!blank(body)) rows.push_back(body);
  }
  if (rows.empty()) throw InstanceError("empty instance");

  std::istringstream header(rows.front());
  long long n = 0, m = 0, m1 = 0, m2 = 0;
  if (!(header >> n >> m >> m1 >> m2))
    throw InstanceError("malformed header, expected \"n |E| m1 m2\"");
  std::string extra;
  if (header >> extra) throw InstanceError("trailing tokens in header");
  if (n < 2 || n > std::numeric_limits<int>::max()) throw InstanceError("invalid vertex count");
  if (m < 0) throw InstanceError("negative edge count");
  if (static_cast<long long>(rows.size()) - 1 != m)
    throw InstanceError("header announces " + std::to_string(m) + " edges, found " +
                        std::to_string(rows.size() - 1));

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (std::size_t r = 1; r < rows.size(); ++r) {
    std::istringstream ls(rows[r]);
    long long i = 0, j = 0;
    if (!(ls >> i >> j)) throw InstanceError("malformed edge line: " + rows[r]);
    double w = 1.0;
    if (!(ls >> w)) {
      if (!ls.eof()) throw InstanceError("malformed edge weight: " + rows[r]);
      w = 1.0;
    }
    if (ls >> extra) throw InstanceError("trailing tokens on edge line: " + rows[r]);
    if (i < 1 || i > n || j < 1 || j > n)
      throw InstanceError("vertex index out of range on line: " + rows[r]);
    edges.push_back({static_cast<int>(i - 1), static_cast<int>(j - 1), w});
  }
  if (m1 <= 0 || m2 <= 0) throw InstanceError("part sizes must be positive");
  if (m1 + m2 != n) throw InstanceError("m1 + m2 != n");
  return BisectionInstance(Graph(static_cast<int>(n), std::move(edges)), static_cast<int>(m1),
                           static_cast<int>(m2), std::move(name));
}

BisectionInstance parse_instance_string(const std::string& text, std::string name) {
  std::istringstream in(text);
  return parse_instance(in, std::move(name));
}

BisectionInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot open instance file: " + path);
  auto stem = path.substr(path.find_last_of('/') == std::string::npos ? 0 : path.find_last_of('/') + 1);
  return parse_instance(in, stem);
}

void write_instance(std::ostream& out, const BisectionInstance& inst) {
  const auto& g = inst.graph;
  out << g.order() << ' ' << g.size() << ' ' << inst.m1 << ' ' << inst.m2 << '\n';
  out << std::setprecision(17);
  for (const auto& e : g.edges()) {
    out << e.u + 1 << ' ' << e.v + 1;
    if (e.w != 1.0) out << ' ' << e.w;
    out << '\n';
  }
}

}  // namespace gbis
