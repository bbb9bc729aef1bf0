#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rainbow/errors.hpp"

namespace rainbow {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

/// Unordered edge stored as (min, max).
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex a, Vertex b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

/// Orientation-independent key for colour lookups.
inline std::uint64_t edge_key(Vertex a, Vertex b) {
  const Edge e = make_edge(a, b);
  return (std::uint64_t{e.u} << 32) | e.v;
}

/// Undirected simple graph on vertices 0..n-1, stored in compressed
/// adjacency form. Neighbour lists are sorted, and every edge carries a dense
/// id equal to its rank in the sorted (min, max) edge list. Immutable once
/// built.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}
  explicit Graph(std::size_t n) : n_(n), offsets_(n + 1, 0) {}

  /// Throws PreconditionError on self-loops, duplicate edges or endpoints
  /// outside [0, n).
  static Graph from_edges(std::size_t n, std::vector<Edge> edges) {
    for (auto& e : edges) {
      if (e.u >= n || e.v >= n) {
        throw PreconditionError("edge endpoint out of range");
      }
      if (e.u == e.v) throw PreconditionError("self-loop");
      e = make_edge(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
      throw PreconditionError("duplicate edge");
    }
    Graph g(n);
    g.edges_ = std::move(edges);
    for (const Edge& e : g.edges_) {
      ++g.offsets_[e.u + 1];
      ++g.offsets_[e.v + 1];
    }
    for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
    g.targets_.resize(2 * g.edges_.size());
    g.ids_.resize(2 * g.edges_.size());
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    // Sorted edge order makes every neighbour list come out sorted.
    for (EdgeId id = 0; id < g.edges_.size(); ++id) {
      const Edge& e = g.edges_[id];
      g.targets_[fill[e.u]] = e.v;
      g.ids_[fill[e.u]++] = id;
      g.targets_[fill[e.v]] = e.u;
      g.ids_[fill[e.v]++] = id;
    }
    return g;
  }

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  std::span<const Vertex> neighbours(Vertex v) const {
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  /// Edge ids parallel to neighbours(v).
  std::span<const EdgeId> incident_edges(Vertex v) const {
    return {ids_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::optional<EdgeId> edge_id(Vertex a, Vertex b) const {
    if (a >= n_ || b >= n_) return std::nullopt;
    const auto nb = neighbours(a);
    const auto it = std::lower_bound(nb.begin(), nb.end(), b);
    if (it == nb.end() || *it != b) return std::nullopt;
    return ids_[offsets_[a] + static_cast<std::size_t>(it - nb.begin())];
  }

  bool has_edge(Vertex a, Vertex b) const { return edge_id(a, b).has_value(); }

  std::size_t max_degree() const {
    std::size_t best = 0;
    for (Vertex v = 0; v < n_; ++v) best = std::max(best, degree(v));
    return best;
  }

  std::size_t min_degree() const {
    if (n_ == 0) return 0;
    std::size_t best = degree(0);
    for (Vertex v = 1; v < n_; ++v) best = std::min(best, degree(v));
    return best;
  }

  double average_degree() const {
    return n_ == 0 ? 0.0
                   : 2.0 * static_cast<double>(edges_.size()) /
                         static_cast<double>(n_);
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
  std::vector<EdgeId> ids_;
  std::vector<Edge> edges_;
};

/// A graph together with the parent vertex of each of its vertices.
struct Subgraph {
  Graph graph;
  std::vector<Vertex> to_parent;

  /// Parent-indexed lookup; kNoVertex marks vertices not in the subgraph.
  std::vector<Vertex> from_parent(std::size_t parent_n) const {
    std::vector<Vertex> local(parent_n, kNoVertex);
    for (Vertex v = 0; v < to_parent.size(); ++v) local[to_parent[v]] = v;
    return local;
  }

  std::vector<Vertex> to_parent_ids(std::span<const Vertex> local) const {
    std::vector<Vertex> out;
    out.reserve(local.size());
    for (Vertex v : local) out.push_back(to_parent[v]);
    return out;
  }
};

inline Subgraph identity_subgraph(const Graph& g) {
  Subgraph s{g, std::vector<Vertex>(g.num_vertices())};
  for (Vertex v = 0; v < g.num_vertices(); ++v) s.to_parent[v] = v;
  return s;
}

/// Subgraph induced by `keep` (any order; duplicates ignored). Local ids follow
/// increasing parent id.
inline Subgraph induced_subgraph(const Graph& g, std::vector<Vertex> keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<Vertex> local(g.num_vertices(), kNoVertex);
  for (Vertex i = 0; i < keep.size(); ++i) {
    if (keep[i] >= g.num_vertices()) {
      throw PreconditionError("induced_subgraph: vertex out of range");
    }
    local[keep[i]] = i;
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (local[e.u] != kNoVertex && local[e.v] != kNoVertex) {
      edges.push_back({local[e.u], local[e.v]});
    }
  }
  return {Graph::from_edges(keep.size(), std::move(edges)), std::move(keep)};
}

/// Two disjoint vertex sets X1 (left) and X2 (right).
struct BipartitePartition {
  std::vector<Vertex> left;
  std::vector<Vertex> right;

  /// Throws PreconditionError when the sides overlap or leave [0, n).
  void validate(std::size_t n) const {
    std::vector<std::uint8_t> seen(n, 0);
    for (Vertex v : left) {
      if (v >= n) throw PreconditionError("partition vertex out of range");
      if (seen[v]) throw PreconditionError("partition vertex repeated");
      seen[v] = 1;
    }
    for (Vertex v : right) {
      if (v >= n) throw PreconditionError("partition vertex out of range");
      if (seen[v]) throw PreconditionError("partition sides overlap");
      seen[v] = 2;
    }
  }
};

/// Keeps exactly the edges with one endpoint on each side. Vertex set is
/// left ∪ right in increasing parent order.
inline Subgraph bipartite_subgraph(const Graph& g,
                                   const BipartitePartition& part) {
  part.validate(g.num_vertices());
  std::vector<std::uint8_t> side(g.num_vertices(), 0);
  for (Vertex v : part.left) side[v] = 1;
  for (Vertex v : part.right) side[v] = 2;
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (side[v] != 0) keep.push_back(v);
  }
  std::vector<Vertex> local(g.num_vertices(), kNoVertex);
  for (Vertex i = 0; i < keep.size(); ++i) local[keep[i]] = i;
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (side[e.u] != 0 && side[e.v] != 0 && side[e.u] != side[e.v]) {
      edges.push_back({local[e.u], local[e.v]});
    }
  }
  return {Graph::from_edges(keep.size(), std::move(edges)), std::move(keep)};
}

/// Relabels vertex v as perm[v].
inline Graph relabel(const Graph& g, std::span<const Vertex> perm) {
  if (perm.size() != g.num_vertices()) {
    throw PreconditionError("relabel: permutation size mismatch");
  }
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (const Edge& e : g.edges()) edges.push_back(make_edge(perm[e.u], perm[e.v]));
  return Graph::from_edges(g.num_vertices(), std::move(edges));
}

}  // namespace rainbow
