// JSON schemas: Graph {"n":..,"edges":[[u,v],..]}, PartitionedGraph adds
// {"parts":[[..],..],"v0":[..]}. DOT export for rendering.
#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "ctlab/graph.hpp"

namespace ctlab {

using Json = nlohmann::ordered_json;

Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

Json partitioned_to_json(const PartitionedGraph& pg);
PartitionedGraph partitioned_from_json(const Json& j);

// Optional role labels color/annotate nodes.
std::string graph_to_dot(const Graph& g,
                         const std::map<int, std::string>& roles = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace ctlab
