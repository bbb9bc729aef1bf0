#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rainbow/graph.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

using Colour = std::uint32_t;

/// Assignment of a colour to each unordered edge {u, v}.
class EdgeColouring {
 public:
  void set(Vertex a, Vertex b, Colour c) { colours_[edge_key(a, b)] = c; }

  std::optional<Colour> find(Vertex a, Vertex b) const {
    const auto it = colours_.find(edge_key(a, b));
    if (it == colours_.end()) return std::nullopt;
    return it->second;
  }

  Colour at(Vertex a, Vertex b) const {
    const auto c = find(a, b);
    if (!c) throw PreconditionError("edge has no colour");
    return *c;
  }

  std::size_t size() const noexcept { return colours_.size(); }

  std::size_t palette_size() const {
    std::unordered_set<Colour> seen;
    for (const auto& [key, c] : colours_) seen.insert(c);
    return seen.size();
  }

  /// (edge, colour) pairs in increasing edge order.
  std::vector<std::pair<Edge, Colour>> sorted_entries() const {
    std::vector<std::pair<Edge, Colour>> out;
    out.reserve(colours_.size());
    for (const auto& [key, c] : colours_) {
      out.push_back({Edge{static_cast<Vertex>(key >> 32),
                          static_cast<Vertex>(key & 0xffffffffu)},
                     c});
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::unordered_map<std::uint64_t, Colour> colours_;
};

struct ColouredGraph {
  Graph graph;
  EdgeColouring colouring;
};

/// Dense colour array indexed by edge id. Throws PreconditionError unless the
/// colouring is defined on exactly E(g).
inline std::vector<Colour> colours_by_edge_id(const Graph& g,
                                              const EdgeColouring& c) {
  if (c.size() != g.num_edges()) {
    throw PreconditionError("colouring does not match the edge set");
  }
  std::vector<Colour> out(g.num_edges());
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edges()[id];
    const auto col = c.find(e.u, e.v);
    if (!col) throw PreconditionError("colouring does not cover every edge");
    out[id] = *col;
  }
  return out;
}

struct ProperViolation {
  Vertex vertex = 0;
  Colour colour = 0;
  Edge first;
  Edge second;

  friend bool operator==(const ProperViolation&,
                         const ProperViolation&) = default;
};

/// Empty iff the colouring is proper. A vertex carrying m edges of one colour
/// contributes m-1 violations, each pairing the first such edge with another.
inline std::vector<ProperViolation> validate_proper(const Graph& g,
                                                    const EdgeColouring& c) {
  const auto colours = colours_by_edge_id(g, c);
  std::vector<ProperViolation> out;
  std::vector<std::pair<Colour, Vertex>> around;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    around.clear();
    const auto nb = g.neighbours(v);
    const auto ids = g.incident_edges(v);
    for (std::size_t i = 0; i < nb.size(); ++i) around.push_back({colours[ids[i]], nb[i]});
    std::sort(around.begin(), around.end());
    for (std::size_t i = 0; i < around.size();) {
      std::size_t j = i + 1;
      while (j < around.size() && around[j].first == around[i].first) {
        out.push_back({v, around[i].first, make_edge(v, around[i].second),
                       make_edge(v, around[j].second)});
        ++j;
      }
      i = j;
    }
  }
  return out;
}

inline bool is_proper(const Graph& g, const EdgeColouring& c) {
  return validate_proper(g, c).empty();
}

/// Edges in seeded random order, each given the least colour free at both
/// endpoints; uses at most 2Δ-1 colours.
inline EdgeColouring greedy_proper_colouring(const Graph& g,
                                             std::uint64_t seed) {
  std::vector<EdgeId> order(g.num_edges());
  for (EdgeId i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order.begin(), order.end());
  std::vector<std::vector<bool>> used(g.num_vertices());
  EdgeColouring c;
  for (EdgeId id : order) {
    const Edge& e = g.edges()[id];
    auto& a = used[e.u];
    auto& b = used[e.v];
    Colour col = 0;
    while ((col < a.size() && a[col]) || (col < b.size() && b[col])) ++col;
    if (a.size() <= col) a.resize(col + 1, false);
    if (b.size() <= col) b.resize(col + 1, false);
    a[col] = b[col] = true;
    c.set(e.u, e.v, col);
  }
  return c;
}

/// Circle-method colouring of K_n: n-1 perfect matchings for even n, n
/// near-perfect matchings for odd n. Throws unless g is complete.
inline EdgeColouring round_robin_colouring(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (g.num_edges() != n * (n - (n > 0 ? 1 : 0)) / 2) {
    throw PreconditionError("round_robin_colouring: graph is not complete");
  }
  EdgeColouring c;
  if (n < 2) return c;
  const std::size_t m = n % 2 == 0 ? n - 1 : n;  // vertices on the circle
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      Colour col;
      if (v == m) {
        col = static_cast<Colour>((2 * u) % m);  // spoke to the centre
      } else {
        col = static_cast<Colour>((u + v) % m);
      }
      c.set(static_cast<Vertex>(u), static_cast<Vertex>(v), col);
    }
  }
  return c;
}

/// Colouring of a subgraph, read through its parent map.
inline EdgeColouring restrict_colouring(const Subgraph& sub,
                                        const EdgeColouring& parent) {
  EdgeColouring c;
  for (const Edge& e : sub.graph.edges()) {
    c.set(e.u, e.v, parent.at(sub.to_parent[e.u], sub.to_parent[e.v]));
  }
  return c;
}

}  // namespace rainbow
