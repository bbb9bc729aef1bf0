#pragma once

// Small-graph catalogue: canonical codes, generation of all isomorphism
// classes by vertex extension, and graph6 text encoding.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "rainbow/graph.hpp"

namespace rainbow::catalogue {

inline constexpr std::size_t kMaxN = 11;  // 55 code bits

/// Bits of the upper triangle in column order: (0,1), (0,2), (1,2), (0,3) ...
/// read most significant first. This is also the graph6 bit order.
inline std::uint64_t code_under(const std::vector<std::uint32_t>& adj, const std::vector<Vertex>& order) {
  std::uint64_t code = 0;
  for (std::size_t j = 1; j < order.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) code = code << 1 | ((adj[order[i]] >> order[j]) & 1u);
  return code;
}

/// Largest code over relabellings that respect the colour-refinement cells.
inline std::uint64_t canonical_code(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n > kMaxN) throw std::invalid_argument("canonical_code: n too large");
  std::vector<std::uint32_t> adj(n, 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  // Colour refinement, colours named by rank of their signature.
  std::vector<std::size_t> colour(n);
  for (Vertex v = 0; v < n; ++v) colour[v] = g.degree(v);
  std::size_t classes = 0;
  for (;;) {
    std::vector<std::vector<std::size_t>> sig(n);
    for (Vertex v = 0; v < n; ++v) {
      sig[v].push_back(colour[v]);
      std::vector<std::size_t> nb;
      for (Vertex w : g.neighbours(v)) nb.push_back(colour[w]);
      std::sort(nb.begin(), nb.end());
      sig[v].insert(sig[v].end(), nb.begin(), nb.end());
    }
    std::vector<std::vector<std::size_t>> keys(sig);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (Vertex v = 0; v < n; ++v)
      colour[v] = static_cast<std::size_t>(std::lower_bound(keys.begin(), keys.end(), sig[v]) - keys.begin());
    if (keys.size() == classes) break;
    classes = keys.size();
  }
  // Positions are filled cell by cell; a prefix of positions fixes a prefix
  // of the code, which prunes against the best code so far.
  std::vector<std::size_t> cell_of_pos;
  std::vector<std::size_t> order_v(n);
  for (Vertex v = 0; v < n; ++v) order_v[v] = v;
  std::sort(order_v.begin(), order_v.end(), [&](Vertex a, Vertex b) { return colour[a] < colour[b]; });
  for (Vertex v : order_v) cell_of_pos.push_back(colour[v]);

  const std::size_t total_bits = n * (n - 1) / 2;
  std::uint64_t best = 0;
  bool have = false;
  std::vector<Vertex> order;
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, std::uint64_t prefix) -> void {
    const std::size_t p = order.size();
    if (p == n) {
      if (!have || prefix > best) best = prefix, have = true;
      return;
    }
    for (Vertex v = 0; v < n; ++v) {
      if (used[v] || colour[v] != cell_of_pos[p]) continue;
      std::uint64_t next = prefix;
      for (std::size_t i = 0; i < p; ++i) next = next << 1 | ((adj[order[i]] >> v) & 1u);
      if (have) {
        const std::size_t len = (p + 1) * p / 2;
        if (next < (best >> (total_bits - len))) continue;
      }
      used[v] = 1;
      order.push_back(v);
      self(self, next);
      order.pop_back();
      used[v] = 0;
    }
  };
  rec(rec, 0);
  return best;
}

inline Graph from_code(std::size_t n, std::uint64_t code) {
  std::vector<Edge> edges;
  std::size_t bit = n * (n - 1) / 2;
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i)
      if ((code >> --bit) & 1u) edges.push_back({i, j});
  return Graph::from_edges(n, std::move(edges));
}

inline bool is_connected(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbours(v))
      if (!seen[w]) seen[w] = 1, ++count, stack.push_back(w);
  }
  return count == n;
}

/// All graphs on 1..nmax vertices up to isomorphism, as canonical codes
/// sorted within each order. Every graph on n vertices extends one on n-1.
inline std::vector<std::vector<std::uint64_t>> all_graph_codes(std::size_t nmax) {
  std::vector<std::vector<std::uint64_t>> out(nmax + 1);
  if (nmax == 0) return out;
  out[1] = {0};
  for (std::size_t n = 2; n <= nmax; ++n) {
    std::unordered_set<std::uint64_t> seen;
    for (std::uint64_t base : out[n - 1]) {
      const Graph h = from_code(n - 1, base);
      for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
        std::vector<Edge> edges = h.edges();
        for (Vertex v = 0; v + 1 < n; ++v)
          if (mask >> v & 1u) edges.push_back({v, static_cast<Vertex>(n - 1)});
        seen.insert(canonical_code(Graph::from_edges(n, std::move(edges))));
      }
    }
    out[n].assign(seen.begin(), seen.end());
    std::sort(out[n].begin(), out[n].end());
  }
  return out;
}

inline std::string to_graph6(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n > 62) throw std::invalid_argument("to_graph6: n > 62");
  std::string s(1, static_cast<char>(63 + n));
  int acc = 0, filled = 0;
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i) {
      acc = acc << 1 | (g.has_edge(i, j) ? 1 : 0);
      if (++filled == 6) s.push_back(static_cast<char>(63 + acc)), acc = 0, filled = 0;
    }
  if (filled > 0) s.push_back(static_cast<char>(63 + (acc << (6 - filled))));
  return s;
}

inline Graph from_graph6(const std::string& s) {
  if (s.empty() || s[0] < 63 || s[0] > 63 + 62) throw std::invalid_argument("from_graph6: bad header");
  const std::size_t n = static_cast<std::size_t>(s[0] - 63);
  const std::size_t bits = n * (n - 1) / 2;
  if (s.size() != 1 + (bits + 5) / 6) throw std::invalid_argument("from_graph6: bad length");
  std::vector<Edge> edges;
  std::size_t k = 0;
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i, ++k) {
      const int chunk = s[1 + k / 6] - 63;
      if (chunk < 0 || chunk > 63) throw std::invalid_argument("from_graph6: bad byte");
      if ((chunk >> (5 - k % 6)) & 1) edges.push_back({i, j});
    }
  return Graph::from_edges(n, std::move(edges));
}

inline std::vector<Graph> read_graph6_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<Graph> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(from_graph6(line));
  }
  return out;
}

}  // namespace rainbow::catalogue
