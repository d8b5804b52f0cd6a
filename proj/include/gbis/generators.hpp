#pragma once

#include "gbis/graph.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gbis {

/// Cubic Hamiltonian graph from an LCF code: the cycle 0..n-1 plus a chord
/// from i to i + jumps[i mod |jumps|] (mod n), n = repeats * |jumps|.
/// Throws InstanceError when the code does not describe a simple 3-regular
/// graph (odd n, inconsistent chord pairing, self-loops, parallel edges).
Graph gen_lcf(const std::vector<int>& jumps, int repeats);

/// Johnson graph J(v, k): k-subsets of {1..v}, adjacent when they share
/// k - 1 elements. Vertices are ordered lexicographically.
Graph gen_johnson(int v, int k);

/// Erdos-Renyi G(n, p); identical output for identical (n, p, seed).
Graph gen_gnp(int n, double p, std::uint64_t seed);

struct LcfEntry {
  std::string name;
  int vertices = 0;
  int repeats = 0;
  std::vector<int> jumps;
};

/// Named LCF codes loaded from a data file (see data/named_graphs.txt).
class GraphRegistry {
 public:
  static GraphRegistry load(const std::string& path);

  /// Looks in $GBIS_DATA_DIR, then in the source tree's data directory.
  static const GraphRegistry& builtin();

  const std::map<std::string, LcfEntry>& entries() const { return entries_; }

  /// Accepts a registered LCF name ("pappus"), "johnson:v,k",
  /// "gnp:n,p,seed" or "lcf:repeats:j1,j2,...".
  Graph generate(const std::string& spec) const;

 private:
  std::map<std::string, LcfEntry> entries_;
};

}  // namespace gbis
