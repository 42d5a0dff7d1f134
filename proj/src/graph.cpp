#include "ctlab/graph.hpp"

#include <algorithm>

namespace ctlab {

Graph::Graph(int n, std::vector<std::pair<int, int>> edge_list) : n_(n) {
  if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
  for (auto& [u, v] : edge_list) {
    if (u == v) throw std::invalid_argument("Graph: self-loop");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("Graph: vertex id out of range");
    if (u > v) std::swap(u, v);
  }
  std::sort(edge_list.begin(), edge_list.end());
  edge_list.erase(std::unique(edge_list.begin(), edge_list.end()), edge_list.end());
  edges_ = std::move(edge_list);
  adj_.assign(size_t(n), {});
  std::vector<int> deg(size_t(n), 0);
  for (auto [u, v] : edges_) {
    deg[size_t(u)]++;
    deg[size_t(v)]++;
  }
  for (int v = 0; v < n; ++v) adj_[size_t(v)].reserve(size_t(deg[size_t(v)]));
  for (auto [u, v] : edges_) {
    adj_[size_t(u)].push_back(v);
    adj_[size_t(v)].push_back(u);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
  const auto& nb = adj_[size_t(u)];
  return std::binary_search(nb.begin(), nb.end(), v);
}

PartitionedGraph::PartitionedGraph(Graph g, std::vector<std::vector<int>> parts_in,
                                   std::vector<int> v0)
    : graph(std::move(g)), t(int(parts_in.size())), parts(std::move(parts_in)),
      exceptional(std::move(v0)) {
  if (t < 3) throw std::invalid_argument("PartitionedGraph: need t >= 3");
  part_of_.assign(size_t(graph.vertex_count()), -2);
  for (int i = 0; i < t; ++i) {
    std::sort(parts[size_t(i)].begin(), parts[size_t(i)].end());
    for (int v : parts[size_t(i)]) {
      if (v < 0 || v >= graph.vertex_count())
        throw std::invalid_argument("PartitionedGraph: part id out of range");
      if (part_of_[size_t(v)] != -2)
        throw std::invalid_argument("PartitionedGraph: parts not disjoint");
      part_of_[size_t(v)] = i;
    }
  }
  std::sort(exceptional.begin(), exceptional.end());
  for (int v : exceptional) {
    if (v < 0 || v >= graph.vertex_count())
      throw std::invalid_argument("PartitionedGraph: exceptional id out of range");
    if (part_of_[size_t(v)] != -2)
      throw std::invalid_argument("PartitionedGraph: exceptional overlaps a part");
    part_of_[size_t(v)] = -1;
  }
  for (int v = 0; v < graph.vertex_count(); ++v)
    if (part_of_[size_t(v)] == -2)
      throw std::invalid_argument("PartitionedGraph: vertex not covered by parts");
}

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool is_sorted_subset(const std::vector<int>& sub, const std::vector<int>& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

std::vector<int> iterated_neighborhood(const Graph& g, int v,
                                       const std::vector<std::vector<int>>& part_sequence) {
  if (part_sequence.empty())
    throw std::invalid_argument("iterated_neighborhood: empty part sequence");
  std::vector<char> allowed(size_t(g.vertex_count()), 0);
  std::vector<char> in_layer(size_t(g.vertex_count()), 0);
  std::vector<int> layer = {v};
  for (const auto& S : part_sequence) {
    for (int x : S) {
      if (x == v)
        throw std::invalid_argument("iterated_neighborhood: v inside a layer set");
      allowed[size_t(x)] = 1;
    }
    std::vector<int> next;
    for (int x : layer)
      for (int y : g.neighbors(x))
        if (allowed[size_t(y)] && !in_layer[size_t(y)]) {
          in_layer[size_t(y)] = 1;
          next.push_back(y);
        }
    for (int x : S) allowed[size_t(x)] = 0;
    for (int x : next) in_layer[size_t(x)] = 0;
    std::sort(next.begin(), next.end());
    layer = std::move(next);
    if (layer.empty()) break;
  }
  return layer;
}

RemovedGraph remove_vertices(const Graph& g, const std::vector<int>& X) {
  std::vector<char> gone(size_t(g.vertex_count()), 0);
  for (int v : X) {
    if (v < 0 || v >= g.vertex_count())
      throw std::invalid_argument("remove_vertices: id out of range");
    gone[size_t(v)] = 1;
  }
  RemovedGraph out;
  out.new_of_old.assign(size_t(g.vertex_count()), -1);
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!gone[size_t(v)]) {
      out.new_of_old[size_t(v)] = int(out.old_of_new.size());
      out.old_of_new.push_back(v);
    }
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges())
    if (!gone[size_t(u)] && !gone[size_t(v)])
      edges.emplace_back(out.new_of_old[size_t(u)], out.new_of_old[size_t(v)]);
  out.graph = Graph(int(out.old_of_new.size()), std::move(edges));
  return out;
}

Graph remove_closed_edge_set(const Graph& g, const std::vector<int>& X) {
  std::vector<char> inX(size_t(g.vertex_count()), 0);
  for (int v : X) {
    if (v < 0 || v >= g.vertex_count())
      throw std::invalid_argument("remove_closed_edge_set: id out of range");
    inX[size_t(v)] = 1;
  }
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges())
    if (!inX[size_t(u)] && !inX[size_t(v)]) edges.emplace_back(u, v);
  return Graph(g.vertex_count(), std::move(edges));
}

long long count_cross_edges(const Graph& g, const std::vector<int>& X,
                            const std::vector<int>& Y) {
  std::vector<char> inY(size_t(g.vertex_count()), 0);
  for (int y : Y) inY[size_t(y)] = 1;
  long long e = 0;
  for (int x : X)
    for (int u : g.neighbors(x))
      if (inY[size_t(u)]) ++e;
  return e;
}

Rat bipartite_density(const Graph& g, const std::vector<int>& X,
                      const std::vector<int>& Y) {
  if (X.empty() || Y.empty())
    throw std::invalid_argument("bipartite_density: empty side");
  std::vector<char> inX(size_t(g.vertex_count()), 0);
  for (int x : X) inX[size_t(x)] = 1;
  for (int y : Y)
    if (inX[size_t(y)])
      throw std::invalid_argument("bipartite_density: sides not disjoint");
  long long e = count_cross_edges(g, X, Y);
  return Rat(e, (long long)X.size() * (long long)Y.size());
}

}  // namespace ctlab
