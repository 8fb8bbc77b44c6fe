#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "perclab/graph.hpp"

namespace perclab {

/// Edge-list text format, bit-exact:
///   line 1: "n m"
///   then m lines "u v" with u < v, ascending lexicographic order,
///   0-indexed, newline-terminated.

inline void write_edge_list(const Graph& g, std::ostream& os) {
  os << g.vertex_count() << ' ' << g.edge_count() << '\n';
  g.for_each_edge([&](VertexId u, VertexId v) { os << u << ' ' << v << '\n'; });
}

inline void write_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_edge_list(g, os);
  if (!os) throw std::runtime_error("write failed: " + path);
}

inline Graph read_edge_list(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("edge list: missing header line");
  std::istringstream header(line);
  size_t n = 0, m = 0;
  if (!(header >> n >> m)) throw std::runtime_error("edge list: malformed header: " + line);
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(m);
  std::pair<VertexId, VertexId> prev{0, 0};
  for (size_t i = 0; i < m; ++i) {
    if (!std::getline(is, line))
      throw std::runtime_error("edge list: expected " + std::to_string(m) + " edges, got " +
                               std::to_string(i));
    std::istringstream ls(line);
    uint64_t u = 0, v = 0;
    if (!(ls >> u >> v))
      throw std::runtime_error("edge list: malformed edge line " + std::to_string(i + 2) + ": " + line);
    if (u >= v)
      throw std::runtime_error("edge list: edge must satisfy u < v on line " + std::to_string(i + 2));
    std::pair<VertexId, VertexId> cur{static_cast<VertexId>(u), static_cast<VertexId>(v)};
    if (i > 0 && !(prev < cur))
      throw std::runtime_error("edge list: edges not in ascending order on line " + std::to_string(i + 2));
    prev = cur;
    edges.push_back(cur);
  }
  return build_graph(n, edges);
}

inline Graph read_edge_list_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return read_edge_list(is);
}

}  // namespace perclab
