#pragma once

#include <cstdint>
#include <vector>

#include "rainbow/graph.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

inline Graph empty_graph(std::size_t n) { return Graph(n); }

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Graph::from_edges(n, std::move(edges));
}

/// C_n for n >= 3; n = 2 gives a single edge.
inline Graph cycle_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  if (n >= 3) edges.push_back({0, static_cast<Vertex>(n - 1)});
  return Graph::from_edges(n, std::move(edges));
}

/// Path on n vertices.
inline Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  return Graph::from_edges(n, std::move(edges));
}

/// K_{1,leaves} with centre 0.
inline Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.push_back({0, v});
  return Graph::from_edges(leaves + 1, std::move(edges));
}

/// K_{a,b} with sides {0..a-1} and {a..a+b-1}.
inline Graph complete_bipartite_graph(std::size_t a, std::size_t b) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = 0; v < b; ++v) edges.push_back({u, static_cast<Vertex>(a + v)});
  return Graph::from_edges(a + b, std::move(edges));
}

inline Graph petersen_graph() {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.push_back({i, static_cast<Vertex>((i + 1) % 5)});
    edges.push_back({i, i + 5});
    edges.push_back({i + 5, static_cast<Vertex>((i + 2) % 5 + 5)});
  }
  return Graph::from_edges(10, std::move(edges));
}

/// Vertices of b are shifted by a.num_vertices().
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  const auto shift = static_cast<Vertex>(a.num_vertices());
  std::vector<Edge> edges = a.edges();
  for (const Edge& e : b.edges()) edges.push_back({e.u + shift, e.v + shift});
  return Graph::from_edges(a.num_vertices() + b.num_vertices(), std::move(edges));
}

/// F[r]: vertex v becomes the independent set {v*r, ..., v*r + r-1}; edges
/// become complete bipartite graphs.
inline Graph blowup_graph(const Graph& f, std::size_t r) {
  std::vector<Edge> edges;
  for (const Edge& e : f.edges())
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        edges.push_back({static_cast<Vertex>(e.u * r + i),
                         static_cast<Vertex>(e.v * r + j)});
  return Graph::from_edges(f.num_vertices() * r, std::move(edges));
}

/// G(n, p): each pair {u < v}, visited in lexicographic order, is an edge
/// independently with probability p.
inline Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw PreconditionError("random_graph: p must lie in [0, 1]");
  }
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) edges.push_back({u, v});
  return Graph::from_edges(n, std::move(edges));
}

/// Random bipartite graph on sides {0..a-1}, {a..a+b-1}.
inline Graph random_bipartite_graph(std::size_t a, std::size_t b, double p,
                                    std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw PreconditionError("random_bipartite_graph: p must lie in [0, 1]");
  }
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = 0; v < b; ++v)
      if (rng.bernoulli(p)) edges.push_back({u, static_cast<Vertex>(a + v)});
  return Graph::from_edges(a + b, std::move(edges));
}

/// Seeded uniformly random permutation of 0..n-1.
inline std::vector<Vertex> random_permutation(std::size_t n,
                                              std::uint64_t seed) {
  std::vector<Vertex> perm(n);
  for (Vertex v = 0; v < n; ++v) perm[v] = v;
  Rng rng(seed);
  rng.shuffle(perm.begin(), perm.end());
  return perm;
}

}  // namespace rainbow
