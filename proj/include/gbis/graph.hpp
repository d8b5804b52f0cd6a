#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace gbis {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Raised for malformed instance files, bad generator arguments and
/// assignments that do not match their instance.
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  int u;  // 0-based, u < v
  int v;
  double w;
};

/// Undirected simple graph with positive real edge weights.
///
/// Vertices are 0-based in memory; the instance file format and every
/// user-facing printout are 1-based.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list. Endpoints are normalized to u < v and
  /// parallel edges are merged by summing their weights. Throws
  /// InstanceError on self-loops, out-of-range endpoints or n < 2.
  Graph(int n, std::vector<Edge> edges);

  int order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  /// True iff every weight is an integer. Rounded-up bounds are only
  /// meaningful for integral graphs.
  bool integral_weights() const { return integral_; }

  double total_weight() const;
  std::vector<int> degrees() const;
  Matrix adjacency() const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  bool integral_ = true;
};

/// A graph together with the two part sizes, m1 >= m2 >= 1, m1 + m2 = n.
struct BisectionInstance {
  BisectionInstance(Graph g, int m1, int m2, std::string name = {});

  Graph graph;
  int m1;
  int m2;
  std::string name;

  int n() const { return graph.order(); }
};

/// Part membership per vertex, 1 or 2.
class Assignment {
 public:
  explicit Assignment(std::vector<int> part) : part_(std::move(part)) {}

  /// Builds the assignment whose first part is exactly `part1` (0-based).
  static Assignment from_part1(int n, const std::vector<int>& part1);

  const std::vector<int>& parts() const { return part_; }
  int operator[](std::size_t v) const { return part_[v]; }
  std::size_t size() const { return part_.size(); }

  /// 0/1 indicator of part 1.
  Vector indicator() const;

  /// Throws InstanceError unless sizes match (n, m1, m2).
  void validate(const BisectionInstance& inst) const;

 private:
  std::vector<int> part_;
};

Matrix laplacian(const Graph& g);

/// Total weight of edges with endpoints in different parts.
double cut_value(const Graph& g, const Assignment& a);

/// Validates `a` against the instance first.
double cut_value(const BisectionInstance& inst, const Assignment& a);

/// Reads the "n |E| m1 m2" + edge-list format. '#' starts a comment.
BisectionInstance parse_instance(std::istream& in, std::string name = {});
BisectionInstance parse_instance_string(const std::string& text, std::string name = {});
BisectionInstance load_instance(const std::string& path);

void write_instance(std::ostream& out, const BisectionInstance& inst);

}  // namespace gbis
