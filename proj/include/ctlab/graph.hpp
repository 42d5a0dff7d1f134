// Simple undirected graphs with dense ids, immutable after construction.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ctlab/rat.hpp"

namespace ctlab {

class Graph {
 public:
  Graph() = default;

  // Edge list may contain duplicates (set semantics); self-loops are an error.
  Graph(int n, std::vector<std::pair<int, int>> edge_list);

  int vertex_count() const { return n_; }
  long long edge_count() const { return (long long)edges_.size(); }

  const std::vector<int>& neighbors(int v) const { return adj_[size_t(v)]; }
  int degree(int v) const { return int(adj_[size_t(v)].size()); }
  bool has_edge(int u, int v) const;

  // Canonical list: u < v, lexicographically sorted.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
};

// Blow-up instance: a graph plus a labeling of [0,n) into parts V_1..V_t
// (stored 0-indexed) and an optional exceptional set V_0.
struct PartitionedGraph {
  Graph graph;
  int t = 0;
  std::vector<std::vector<int>> parts;
  std::vector<int> exceptional;

  PartitionedGraph() = default;
  PartitionedGraph(Graph g, std::vector<std::vector<int>> parts_in,
                   std::vector<int> v0 = {});

  // Cyclic part index: any integer -> [0, t).
  int cyc(long long i) const {
    long long m = i % t;
    return int(m < 0 ? m + t : m);
  }
  int part_of(int v) const { return part_of_[size_t(v)]; }  // -1 = exceptional
  int part_size() const { return parts.empty() ? 0 : int(parts[0].size()); }

 private:
  std::vector<int> part_of_;
};

struct RemovedGraph {
  Graph graph;
  std::vector<int> old_of_new;  // new id -> old id
  std::vector<int> new_of_old;  // old id -> new id, -1 if removed
};

// Layered i-th neighborhood: start at {v}, expand one step into each set of
// the sequence in turn; returns the final layer, sorted.
std::vector<int> iterated_neighborhood(const Graph& g, int v,
                                       const std::vector<std::vector<int>>& part_sequence);

// Induced subgraph on V(g) \ X, with id maps.
RemovedGraph remove_vertices(const Graph& g, const std::vector<int>& X);

// G - nabla(X): same vertex set, all edges touching X removed.
Graph remove_closed_edge_set(const Graph& g, const std::vector<int>& X);

// e(X,Y) for disjoint X, Y (each edge with one endpoint in X, other in Y).
long long count_cross_edges(const Graph& g, const std::vector<int>& X,
                            const std::vector<int>& Y);

// e(X,Y) / (|X||Y|); X, Y nonempty and disjoint.
Rat bipartite_density(const Graph& g, const std::vector<int>& X,
                      const std::vector<int>& Y);

// Helpers shared across modules.
std::vector<int> sorted_unique(std::vector<int> v);
bool is_sorted_subset(const std::vector<int>& sub, const std::vector<int>& super);

}  // namespace ctlab
