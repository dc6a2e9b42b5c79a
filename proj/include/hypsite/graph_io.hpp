#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hypsite/graph.hpp"

namespace hypsite {

inline constexpr const char* kGraphFormat = "hypsite-graph/1";

// Graph file: {"meta":{...},"boundary":[ids],"rotation":[[cyclic nbrs],...]}
// optionally followed by "added_edges":[[u,v],...] for matching graphs.
// Writing is canonical, so load followed by save reproduces the input bytes.
struct GraphDocument {
  RotationGraph graph;
  std::vector<std::pair<VertexId, VertexId>> added_edges;
  bool has_added_edges = false;
};

void write_graph(std::ostream& out, const RotationGraph& g,
                 const std::vector<std::pair<VertexId, VertexId>>* added_edges = nullptr);
void save_graph(const std::string& path, const RotationGraph& g,
                const std::vector<std::pair<VertexId, VertexId>>* added_edges = nullptr);

// Throws FormatError on malformed input or a meta.format other than kGraphFormat.
GraphDocument read_graph(std::istream& in);
GraphDocument load_graph(const std::string& path);

std::string graph_to_string(const RotationGraph& g);

}  // namespace hypsite
