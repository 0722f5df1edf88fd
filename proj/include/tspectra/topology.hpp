#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tspectra {

/// Raised for invalid inputs and tripped numeric guards. The CLI maps it to
/// exit code 1.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using NodeId = std::int64_t;

/// A d-dimensional torus (or grid) of side length `len`, described without
/// materializing the graph. Node count is len^dim.
struct TorusSpec {
  int dim = 2;
  int len = 3;

  NodeId node_count() const;
};

void validate_torus_spec(const TorusSpec& spec);  // dim >= 1, len >= 3
void validate_grid_spec(const TorusSpec& spec);   // dim >= 1, len >= 2 (no wrap edges)

/// Per-axis coordinates of a node, each in [0, len). Row-major: axis 0 varies
/// fastest.
struct NodeCoord {
  std::vector<int> coords;
};

NodeCoord coord_of(const TorusSpec& spec, NodeId u);
NodeId index_of(const TorusSpec& spec, const NodeCoord& c);

/// Torus adjacency from coordinates alone, without building the graph:
/// neighbors differ by +-1 (mod len) in exactly one axis.
bool torus_adjacent(const TorusSpec& spec, NodeId u, NodeId v);

/// Simple undirected graph with sorted adjacency lists. Immutable after
/// construction; deletion operations return new graphs.
class Graph {
 public:
  Graph() = default;

  /// Validates range, self-loops and duplicates; both orientations are stored.
  static Graph from_edges(NodeId n, std::span<const std::pair<NodeId, NodeId>> edges);

  NodeId node_count() const { return static_cast<NodeId>(adj_.size()); }
  std::int64_t edge_count() const;
  std::span<const NodeId> neighbors(NodeId u) const;
  NodeId degree(NodeId u) const { return static_cast<NodeId>(neighbors(u).size()); }
  bool has_edge(NodeId i, NodeId j) const;

  double average_degree() const;
  NodeId max_degree() const;

  /// All edges as (i, j) with i < j, lexicographically sorted.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

 private:
  std::vector<std::vector<NodeId>> adj_;
};

/// 2d-regular torus: node u is adjacent to u +- e_k (mod len) in every axis.
Graph build_torus(const TorusSpec& spec);

/// Same without wrap edges; corner nodes have degree dim.
Graph build_grid(const TorusSpec& spec);

/// Induced subgraph after node removal. Remaining nodes are reindexed
/// compactly; the maps record the correspondence (old_to_new[u] == -1 for
/// removed u).
struct NodeDeletion {
  Graph graph;
  std::vector<NodeId> old_to_new;
  std::vector<NodeId> new_to_old;
};

NodeDeletion delete_nodes(const Graph& g, std::span<const NodeId> nodes);
Graph delete_edge(const Graph& g, NodeId i, NodeId j);

/// Edge-list text format: header "n <count>", then "i j" lines with i < j,
/// sorted.
std::string to_edge_list(const Graph& g);
Graph from_edge_list(std::istream& in);
Graph from_edge_list_text(const std::string& text);

}  // namespace tspectra
