#include "tspectra/topology.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <unordered_set>

namespace tspectra {

NodeId TorusSpec::node_count() const {
  NodeId n = 1;
  for (int k = 0; k < dim; ++k) {
    if (n > (std::int64_t{1} << 62) / len) {
      throw DomainError("torus spec too large: len^dim overflows");
    }
    n *= len;
  }
  return n;
}

void validate_torus_spec(const TorusSpec& spec) {
  if (spec.dim < 1) throw DomainError("degenerate topology: dim must be >= 1");
  if (spec.len < 3) {
    throw DomainError("degenerate topology: torus len must be >= 3 (len 2 creates parallel edges)");
  }
  spec.node_count();
}

void validate_grid_spec(const TorusSpec& spec) {
  if (spec.dim < 1) throw DomainError("degenerate topology: dim must be >= 1");
  if (spec.len < 2) throw DomainError("degenerate topology: grid len must be >= 2");
  spec.node_count();
}

NodeCoord coord_of(const TorusSpec& spec, NodeId u) {
  if (u < 0 || u >= spec.node_count()) throw DomainError("node index out of range");
  NodeCoord c;
  c.coords.resize(static_cast<std::size_t>(spec.dim));
  for (int k = 0; k < spec.dim; ++k) {
    c.coords[static_cast<std::size_t>(k)] = static_cast<int>(u % spec.len);
    u /= spec.len;
  }
  return c;
}

NodeId index_of(const TorusSpec& spec, const NodeCoord& c) {
  if (static_cast<int>(c.coords.size()) != spec.dim) {
    throw DomainError("coordinate dimension mismatch");
  }
  NodeId u = 0;
  for (int k = spec.dim - 1; k >= 0; --k) {
    const int x = c.coords[static_cast<std::size_t>(k)];
    if (x < 0 || x >= spec.len) throw DomainError("coordinate out of range");
    u = u * spec.len + x;
  }
  return u;
}

bool torus_adjacent(const TorusSpec& spec, NodeId u, NodeId v) {
  if (u == v) return false;
  const NodeCoord cu = coord_of(spec, u);
  const NodeCoord cv = coord_of(spec, v);
  int differing_axes = 0;
  bool step = false;
  for (int k = 0; k < spec.dim; ++k) {
    const int du = cu.coords[static_cast<std::size_t>(k)];
    const int dv = cv.coords[static_cast<std::size_t>(k)];
    if (du == dv) continue;
    ++differing_axes;
    const int gap = std::abs(du - dv);
    step = gap == 1 || gap == spec.len - 1;
  }
  return differing_axes == 1 && step;
}

Graph Graph::from_edges(NodeId n, std::span<const std::pair<NodeId, NodeId>> edges) {
  if (n < 0) throw DomainError("negative node count");
  Graph g;
  g.adj_.resize(static_cast<std::size_t>(n));
  for (const auto& [i, j] : edges) {
    if (i < 0 || i >= n || j < 0 || j >= n) throw DomainError("edge endpoint out of range");
    if (i == j) throw DomainError("self-loops are not allowed");
    g.adj_[static_cast<std::size_t>(i)].push_back(j);
    g.adj_[static_cast<std::size_t>(j)].push_back(i);
  }
  for (auto& nbrs : g.adj_) {
    std::sort(nbrs.begin(), nbrs.end());
    if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end()) {
      throw DomainError("duplicate edge");
    }
  }
  return g;
}

std::int64_t Graph::edge_count() const {
  std::int64_t twice = 0;
  for (const auto& nbrs : adj_) twice += static_cast<std::int64_t>(nbrs.size());
  return twice / 2;
}

std::span<const NodeId> Graph::neighbors(NodeId u) const {
  if (u < 0 || u >= node_count()) throw DomainError("node index out of range");
  return adj_[static_cast<std::size_t>(u)];
}

bool Graph::has_edge(NodeId i, NodeId j) const {
  const auto nbrs = neighbors(i);
  return std::binary_search(nbrs.begin(), nbrs.end(), j);
}

double Graph::average_degree() const {
  if (node_count() == 0) throw DomainError("empty graph");
  return 2.0 * static_cast<double>(edge_count()) / static_cast<double>(node_count());
}

NodeId Graph::max_degree() const {
  if (node_count() == 0) throw DomainError("empty graph");
  NodeId best = 0;
  for (const auto& nbrs : adj_) best = std::max(best, static_cast<NodeId>(nbrs.size()));
  return best;
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(static_cast<std::size_t>(edge_count()));
  for (NodeId i = 0; i < node_count(); ++i) {
    for (NodeId j : adj_[static_cast<std::size_t>(i)]) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

namespace {

Graph build_lattice_like(const TorusSpec& spec, bool wrap) {
  const NodeId n = spec.node_count();
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(spec.dim));
  NodeId stride = 1;
  for (int k = 0; k < spec.dim; ++k) {
    for (NodeId u = 0; u < n; ++u) {
      const int x = static_cast<int>((u / stride) % spec.len);
      if (x + 1 < spec.len) {
        edges.emplace_back(u, u + stride);
      } else if (wrap) {
        edges.emplace_back(u, u - stride * (spec.len - 1));
      }
    }
    stride *= spec.len;
  }
  return Graph::from_edges(n, edges);
}

}  // namespace

Graph build_torus(const TorusSpec& spec) {
  validate_torus_spec(spec);
  return build_lattice_like(spec, /*wrap=*/true);
}

Graph build_grid(const TorusSpec& spec) {
  validate_grid_spec(spec);
  return build_lattice_like(spec, /*wrap=*/false);
}

NodeDeletion delete_nodes(const Graph& g, std::span<const NodeId> nodes) {
  const NodeId n = g.node_count();
  std::unordered_set<NodeId> removed;
  for (NodeId u : nodes) {
    if (u < 0 || u >= n) throw DomainError("delete_nodes: node index out of range");
    removed.insert(u);
  }
  NodeDeletion result;
  result.old_to_new.assign(static_cast<std::size_t>(n), -1);
  for (NodeId u = 0; u < n; ++u) {
    if (!removed.contains(u)) {
      result.old_to_new[static_cast<std::size_t>(u)] = static_cast<NodeId>(result.new_to_old.size());
      result.new_to_old.push_back(u);
    }
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u < n; ++u) {
    const NodeId nu = result.old_to_new[static_cast<std::size_t>(u)];
    if (nu < 0) continue;
    for (NodeId v : g.neighbors(u)) {
      const NodeId nv = result.old_to_new[static_cast<std::size_t>(v)];
      if (nv > nu) edges.emplace_back(nu, nv);
    }
  }
  result.graph = Graph::from_edges(static_cast<NodeId>(result.new_to_old.size()), edges);
  return result;
}

Graph delete_edge(const Graph& g, NodeId i, NodeId j) {
  if (!g.has_edge(i, j)) throw DomainError("delete_edge: edge not present");
  std::vector<std::pair<NodeId, NodeId>> edges = g.edges();
  const std::pair<NodeId, NodeId> target{std::min(i, j), std::max(i, j)};
  std::erase(edges, target);
  return Graph::from_edges(g.node_count(), edges);
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "n " << g.node_count() << "\n";
  for (const auto& [i, j] : g.edges()) out << i << " " << j << "\n";
  return out.str();
}

Graph from_edge_list(std::istream& in) {
  std::string tag;
  NodeId n = -1;
  if (!(in >> tag >> n) || tag != "n" || n < 0) {
    throw DomainError("edge list: expected header 'n <count>'");
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  NodeId i = 0;
  NodeId j = 0;
  while (in >> i >> j) {
    if (i >= j) throw DomainError("edge list: expected i < j");
    edges.emplace_back(i, j);
  }
  return Graph::from_edges(n, edges);
}

Graph from_edge_list_text(const std::string& text) {
  std::istringstream in(text);
  return from_edge_list(in);
}

}  // namespace tspectra
