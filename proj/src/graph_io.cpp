#include "ctlab/graph_io.hpp"

#include <fstream>
#include <sstream>

#include "ctlab/rng.hpp"

namespace ctlab {

Json graph_to_json(const Graph& g) {
  Json j;
  j["n"] = g.vertex_count();
  Json es = Json::array();
  for (auto [u, v] : g.edges()) es.push_back({u, v});
  j["edges"] = std::move(es);
  return j;
}

Graph graph_from_json(const Json& j) {
  int n = j.at("n").get<int>();
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges"))
    edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  return Graph(n, std::move(edges));
}

Json partitioned_to_json(const PartitionedGraph& pg) {
  Json j = graph_to_json(pg.graph);
  Json ps = Json::array();
  for (const auto& p : pg.parts) ps.push_back(p);
  j["parts"] = std::move(ps);
  j["v0"] = pg.exceptional;
  return j;
}

PartitionedGraph partitioned_from_json(const Json& j) {
  Graph g = graph_from_json(j);
  std::vector<std::vector<int>> parts;
  for (const auto& p : j.at("parts")) parts.push_back(p.get<std::vector<int>>());
  std::vector<int> v0;
  if (j.contains("v0")) v0 = j.at("v0").get<std::vector<int>>();
  return PartitionedGraph(std::move(g), std::move(parts), std::move(v0));
}

std::string graph_to_dot(const Graph& g, const std::map<int, std::string>& roles) {
  static const char* palette[] = {"lightblue",  "lightsalmon", "palegreen",
                                  "gold",       "plum",        "khaki",
                                  "lightcyan",  "mistyrose"};
  std::ostringstream os;
  os << "graph G {\n  node [shape=circle, fontsize=10];\n";
  for (int v = 0; v < g.vertex_count(); ++v) {
    auto it = roles.find(v);
    if (it != roles.end() && !it->second.empty()) {
      size_t color = fnv64(it->second.substr(0, 1)) % 8;
      os << "  " << v << " [label=\"" << it->second << "\", style=filled, fillcolor="
         << palette[color] << "];\n";
    } else {
      os << "  " << v << ";\n";
    }
  }
  for (auto [u, v] : g.edges()) os << "  " << u << " -- " << v << ";\n";
  os << "}\n";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace ctlab
