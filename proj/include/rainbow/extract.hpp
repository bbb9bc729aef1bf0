#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "rainbow/errors.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

/// Vertices of g kept by greedy min-degree peeling at the point where the
/// remaining graph had the largest average degree (ties keep more vertices).
inline std::vector<Vertex> densest_subgraph_peeling(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n == 0) return {};
  std::vector<std::size_t> deg(n);
  std::size_t maxd = 0;
  for (Vertex v = 0; v < n; ++v) maxd = std::max(maxd, deg[v] = g.degree(v));
  std::vector<std::vector<Vertex>> bucket(maxd + 1);
  for (Vertex v = 0; v < n; ++v) bucket[deg[v]].push_back(v);
  std::vector<std::uint8_t> removed(n, 0);
  std::vector<Vertex> order;
  order.reserve(n);
  std::size_t edges = g.num_edges(), alive = n, cur = 0;
  // density compared as edges/alive by cross-multiplication
  std::size_t best_e = edges, best_n = n, best_removed = 0;
  while (alive > 0) {
    Vertex v = kNoVertex;
    while (v == kNoVertex) {
      while (bucket[cur].empty()) ++cur;
      const Vertex cand = bucket[cur].back();
      bucket[cur].pop_back();
      if (!removed[cand] && deg[cand] == cur) v = cand;
    }
    removed[v] = 1;
    order.push_back(v);
    edges -= deg[v];
    --alive;
    for (Vertex w : g.neighbours(v)) {
      if (removed[w]) continue;
      --deg[w];
      bucket[deg[w]].push_back(w);
      cur = std::min(cur, deg[w]);
    }
    if (alive > 0 && edges * best_n > best_e * alive) {
      best_e = edges;
      best_n = alive;
      best_removed = order.size();
    }
  }
  std::vector<Vertex> keep(order.begin() + static_cast<std::ptrdiff_t>(best_removed), order.end());
  std::sort(keep.begin(), keep.end());
  return keep;
}

namespace detail {

/// Dinic max-flow on a small network.
class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t n) : adj_(n), level_(n), it_(n) {}

  void add_arc(std::size_t a, std::size_t b, std::int64_t cap) {
    adj_[a].push_back(arcs_.size());
    arcs_.push_back({b, cap});
    adj_[b].push_back(arcs_.size());
    arcs_.push_back({a, 0});
  }

  std::int64_t max_flow(std::size_t s, std::size_t t) {
    std::int64_t flow = 0;
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (std::int64_t f = dfs(s, t, std::numeric_limits<std::int64_t>::max())) flow += f;
    }
    return flow;
  }

  /// Vertices reachable from s in the residual network after max_flow.
  std::vector<std::uint8_t> source_side(std::size_t s) {
    bfs(s, s);
    std::vector<std::uint8_t> out(adj_.size());
    for (std::size_t v = 0; v < adj_.size(); ++v) out[v] = level_[v] >= 0;
    return out;
  }

 private:
  struct Arc {
    std::size_t to;
    std::int64_t cap;
  };

  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::deque<std::size_t> q{s};
    level_[s] = 0;
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop_front();
      for (std::size_t id : adj_[v]) {
        if (arcs_[id].cap > 0 && level_[arcs_[id].to] < 0) {
          level_[arcs_[id].to] = level_[v] + 1;
          q.push_back(arcs_[id].to);
        }
      }
    }
    return level_[t] >= 0 && s != t;
  }

  std::int64_t dfs(std::size_t v, std::size_t t, std::int64_t pushed) {
    if (v == t) return pushed;
    for (std::size_t& i = it_[v]; i < adj_[v].size(); ++i) {
      Arc& a = arcs_[adj_[v][i]];
      if (a.cap <= 0 || level_[a.to] != level_[v] + 1) continue;
      if (std::int64_t f = dfs(a.to, t, std::min(pushed, a.cap))) {
        a.cap -= f;
        arcs_[adj_[v][i] ^ 1].cap += f;
        return f;
      }
    }
    return 0;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

}  // namespace detail

inline constexpr std::size_t kExactDensestMaxEdges = 20000;

/// Exact maximum-average-degree vertex set by Dinkelbach iteration over
/// max-weight closures. Gated by kExactDensestMaxEdges.
inline std::vector<Vertex> densest_subgraph_exact(const Graph& g) {
  const std::size_t n = g.num_vertices(), m = g.num_edges();
  if (m > kExactDensestMaxEdges) {
    throw GuardExceeded("densest_subgraph_exact: too many edges");
  }
  std::vector<Vertex> best(n);
  std::iota(best.begin(), best.end(), Vertex{0});
  if (m == 0) return best;
  std::int64_t num = static_cast<std::int64_t>(m), den = static_cast<std::int64_t>(n);
  while (true) {
    // maximise den * e(S) - num * |S|; edge nodes 0..m-1, vertex nodes m..m+n-1
    const std::size_t s = m + n, t = s + 1;
    detail::FlowNetwork net(t + 1);
    const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
    for (std::size_t id = 0; id < m; ++id) {
      net.add_arc(s, id, den);
      net.add_arc(id, m + g.edges()[id].u, inf);
      net.add_arc(id, m + g.edges()[id].v, inf);
    }
    for (Vertex v = 0; v < n; ++v) net.add_arc(m + v, t, num);
    const std::int64_t cut = net.max_flow(s, t);
    if (den * static_cast<std::int64_t>(m) - cut <= 0) return best;
    const auto side = net.source_side(s);
    std::vector<Vertex> chosen;
    for (Vertex v = 0; v < n; ++v) {
      if (side[m + v]) chosen.push_back(v);
    }
    std::int64_t e = 0;
    for (std::size_t id = 0; id < m; ++id) e += side[id] ? 1 : 0;
    if (chosen.empty() || e * den <= num * static_cast<std::int64_t>(chosen.size())) return best;
    best = std::move(chosen);
    num = e;
    den = static_cast<std::int64_t>(best.size());
  }
}

/// One inequality lhs >= rhs, evaluated on measured numbers.
struct ExtractionCheck {
  std::string name;
  long double lhs = 0;
  long double rhs = 0;
  bool ok = false;

  friend bool operator==(const ExtractionCheck&, const ExtractionCheck&) = default;
};

struct ExtractionReport {
  enum class Kind { kAlmostRegular, kBipartiteStep1, kBipartiteStep2, kBlowup };

  Kind kind = Kind::kAlmostRegular;
  Subgraph result;
  /// Sides in local ids of result.graph; empty for non-bipartite extractions.
  std::vector<Vertex> left;
  std::vector<Vertex> right;
  std::string branch;
  /// Inputs and algorithm-side numbers the checks refer to.
  std::map<std::string, long double> params;
  std::vector<ExtractionCheck> checks;
  /// Every check holds.
  bool passed = false;
};

namespace detail {

inline ExtractionCheck at_least(std::string name, long double lhs, long double rhs) {
  return {std::move(name), lhs, rhs, lhs >= rhs};
}

inline std::size_t min_degree_of(const Graph& g, const std::vector<Vertex>& side) {
  std::size_t m = std::numeric_limits<std::size_t>::max();
  for (Vertex v : side) m = std::min(m, g.degree(v));
  return side.empty() ? 0 : m;
}

inline std::size_t max_degree_of(const Graph& g, const std::vector<Vertex>& side) {
  std::size_t m = 0;
  for (Vertex v : side) m = std::max(m, g.degree(v));
  return m;
}

inline long double param(const ExtractionReport& r, const char* key) {
  const auto it = r.params.find(key);
  if (it == r.params.end()) throw std::logic_error(std::string("missing report parameter ") + key);
  return it->second;
}

inline long double log2l_of(long double x) { return std::log2(x); }

/// Checks computed purely from the returned subgraph, the parent graph and
/// the recorded parameters.
inline std::vector<ExtractionCheck> measure_checks(const Graph& parent, const ExtractionReport& r) {
  const Graph& h = r.result.graph;
  const long double e = static_cast<long double>(h.num_edges());
  std::vector<ExtractionCheck> out;
  out.push_back(at_least("non-empty", e, 1));
  switch (r.kind) {
    case ExtractionReport::Kind::kAlmostRegular: {
      const long double eps = param(r, "eps"), c = param(r, "c"), n = param(r, "n");
      const long double m = static_cast<long double>(h.num_vertices());
      out.push_back(at_least("edges", e, (2 * c / 5) * std::pow(m, 1 + eps)));
      out.push_back(at_least("order", m, std::pow(n, (eps - eps * eps) / (2 + 2 * eps))));
      const long double ratio = h.num_vertices() == 0 || h.min_degree() == 0
                                    ? std::numeric_limits<long double>::infinity()
                                    : static_cast<long double>(h.max_degree()) /
                                          static_cast<long double>(h.min_degree());
      out.push_back(at_least("almost-regular", param(r, "K_target"), ratio));
      break;
    }
    case ExtractionReport::Kind::kBipartiteStep1: {
      const long double n = param(r, "n"), d = param(r, "d");
      out.push_back(at_least("left-edges", e,
                             static_cast<long double>(r.left.size()) *
                                 static_cast<long double>(h.max_degree()) / 80));
      out.push_back(at_least("right-edges", e,
                             static_cast<long double>(r.right.size()) * d / (10 * log2l_of(n))));
      break;
    }
    case ExtractionReport::Kind::kBipartiteStep2: {
      const long double n = param(r, "n"), d = param(r, "d");
      const long double lmin = static_cast<long double>(min_degree_of(h, r.left));
      const long double rmin = static_cast<long double>(min_degree_of(h, r.right));
      out.push_back(at_least("left-floor", lmin, static_cast<long double>(h.max_degree()) / 160));
      out.push_back(at_least("left-floor-step1", lmin, param(r, "step1_max_degree") / 160));
      out.push_back(at_least("right-floor", rmin, d / (20 * log2l_of(n))));
      out.push_back(at_least("discarded", param(r, "step1_edges") - 1, param(r, "discarded_edges")));
      break;
    }
    case ExtractionReport::Kind::kBlowup: {
      const long double n = param(r, "n"), rr = param(r, "r"), d = param(r, "d");
      const long double D1 = param(r, "D1"), D2 = param(r, "D2");
      const long double lg = log2l_of(n);
      const long double scale = 256 * rr * rr * lg * lg;
      out.push_back(at_least("left-floor", static_cast<long double>(min_degree_of(h, r.left)), D1 / scale));
      out.push_back(at_least("right-floor", static_cast<long double>(min_degree_of(h, r.right)), D2 / scale));
      std::vector<Vertex> lp = r.result.to_parent_ids(r.left), rp = r.result.to_parent_ids(r.right);
      out.push_back(at_least("left-cap", D1, static_cast<long double>(max_degree_of(parent, lp))));
      out.push_back(at_least("right-cap", D2, static_cast<long double>(max_degree_of(parent, rp))));
      out.push_back(at_least("left-cap-size", D1, d / 4));
      out.push_back(at_least("right-cap-size", D2, d / 4));
      break;
    }
  }
  return out;
}

inline void finish(const Graph& parent, ExtractionReport& r) {
  r.checks = measure_checks(parent, r);
  r.passed = std::all_of(r.checks.begin(), r.checks.end(), [](const auto& c) { return c.ok; });
}

/// Sides given as parent ids, turned into local ids of `sub`.
inline void set_sides(ExtractionReport& r, const std::vector<Vertex>& left_parent,
                      const std::vector<Vertex>& right_parent, std::size_t parent_n) {
  const auto local = r.result.from_parent(parent_n);
  r.left.clear();
  r.right.clear();
  for (Vertex v : left_parent) r.left.push_back(local[v]);
  for (Vertex v : right_parent) r.right.push_back(local[v]);
  std::sort(r.left.begin(), r.left.end());
  std::sort(r.right.begin(), r.right.end());
}

}  // namespace detail

/// Recomputes every check of `r` from its subgraph and confirms the subgraph
/// really sits inside `parent` (and is bipartite between the recorded sides
/// when sides are present). True iff everything matches the stored verdict.
inline bool remeasure(const Graph& parent, const ExtractionReport& r) {
  const Graph& h = r.result.graph;
  if (r.result.to_parent.size() != h.num_vertices()) return false;
  for (Vertex v : r.result.to_parent) {
    if (v >= parent.num_vertices()) return false;
  }
  for (const Edge& e : h.edges()) {
    if (!parent.has_edge(r.result.to_parent[e.u], r.result.to_parent[e.v])) return false;
  }
  if (!r.left.empty() || !r.right.empty()) {
    std::vector<int> side(h.num_vertices(), 0);
    for (Vertex v : r.left) side[v] = 1;
    for (Vertex v : r.right) {
      if (side[v] != 0) return false;
      side[v] = 2;
    }
    for (int s : side) {
      if (s == 0) return false;
    }
    for (const Edge& e : h.edges()) {
      if (side[e.u] == side[e.v]) return false;
    }
  }
  const auto fresh = detail::measure_checks(parent, r);
  const bool ok = std::all_of(fresh.begin(), fresh.end(), [](const auto& c) { return c.ok; });
  return fresh == r.checks && ok == r.passed;
}

/// Almost-regular subgraph search. The guaranteed constant
/// K = 20 * 2^{1/eps^2 + 1} is the target; the search itself is a heuristic
/// over dense cores and degree classes, and the returned subgraph is the best
/// candidate found even when the lemma-level checks fail.
inline ExtractionReport almost_regular_subgraph(const Graph& g, double eps, double c) {
  if (!(eps > 0 && eps < 1)) throw PreconditionError("almost_regular_subgraph: need 0 < eps < 1");
  if (!(c >= 1)) throw PreconditionError("almost_regular_subgraph: need c >= 1");
  const long double n = static_cast<long double>(g.num_vertices());
  if (static_cast<long double>(g.num_edges()) < c * std::pow(n, 1.0L + eps) || g.num_edges() == 0) {
    throw PreconditionError("almost_regular_subgraph: need e(g) >= c n^{1+eps}");
  }

  ExtractionReport base;
  base.kind = ExtractionReport::Kind::kAlmostRegular;
  base.params = {{"eps", eps}, {"c", c}, {"n", n},
                 {"K_target", 20.0L * std::exp2(1.0L / (static_cast<long double>(eps) * eps) + 1)}};

  // Candidate vertex sets: the whole graph, the peeled core, the cores of the
  // peeled graph at fractions of its average degree, and dyadic degree
  // classes of the peeled graph.
  std::vector<std::vector<Vertex>> candidates;
  std::vector<Vertex> all(g.num_vertices());
  std::iota(all.begin(), all.end(), Vertex{0});
  candidates.push_back(all);
  const auto core = densest_subgraph_peeling(g);
  candidates.push_back(core);
  const Subgraph dense = induced_subgraph(g, core);
  auto min_degree_core = [&](const Graph& h, std::size_t floor) {
    std::vector<std::size_t> deg(h.num_vertices());
    std::vector<std::uint8_t> gone(h.num_vertices(), 0);
    std::vector<Vertex> stack;
    for (Vertex v = 0; v < h.num_vertices(); ++v) {
      deg[v] = h.degree(v);
      if (deg[v] < floor) {
        gone[v] = 1;
        stack.push_back(v);
      }
    }
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : h.neighbours(v)) {
        if (!gone[w] && --deg[w] < floor) {
          gone[w] = 1;
          stack.push_back(w);
        }
      }
    }
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < h.num_vertices(); ++v) {
      if (!gone[v]) keep.push_back(v);
    }
    return keep;
  };
  const long double avg = dense.graph.num_vertices() == 0
                              ? 0
                              : 2.0L * dense.graph.num_edges() / dense.graph.num_vertices();
  for (int j = 1; j <= 8; ++j) {
    const auto floor = static_cast<std::size_t>(std::ceil(avg / std::exp2(static_cast<long double>(j))));
    candidates.push_back(dense.to_parent_ids(min_degree_core(dense.graph, floor)));
  }
  for (std::size_t i = 0; (std::size_t{1} << i) <= dense.graph.max_degree(); ++i) {
    std::vector<Vertex> cls;
    for (Vertex v = 0; v < dense.graph.num_vertices(); ++v) {
      const std::size_t d = dense.graph.degree(v);
      if (d >= (std::size_t{1} << i) && d < (std::size_t{2} << i)) cls.push_back(v);
    }
    const Subgraph part = induced_subgraph(dense.graph, cls);
    if (part.graph.num_edges() == 0) continue;
    const auto inner = densest_subgraph_peeling(part.graph);
    const Subgraph inner_sub = induced_subgraph(part.graph, inner);
    const long double a = 2.0L * inner_sub.graph.num_edges() / inner_sub.graph.num_vertices();
    const auto kept = min_degree_core(inner_sub.graph, static_cast<std::size_t>(std::ceil(a / 2)));
    candidates.push_back(dense.to_parent_ids(part.to_parent_ids(inner_sub.to_parent_ids(kept))));
  }

  // Prefer lemma-level passes, then smaller K', then more edges.
  std::optional<ExtractionReport> best;
  long double best_ratio = 0;
  for (auto& cand : candidates) {
    ExtractionReport r = base;
    r.result = induced_subgraph(g, cand);
    // isolated vertices only hurt the ratio
    std::vector<Vertex> nonisolated;
    for (Vertex v = 0; v < r.result.graph.num_vertices(); ++v) {
      if (r.result.graph.degree(v) > 0) nonisolated.push_back(r.result.to_parent[v]);
    }
    if (nonisolated.empty()) continue;
    r.result = induced_subgraph(g, nonisolated);
    detail::finish(g, r);
    const long double ratio = static_cast<long double>(r.result.graph.max_degree()) /
                              static_cast<long double>(r.result.graph.min_degree());
    auto key = [](const ExtractionReport& x, long double rt) {
      return std::make_tuple(!x.passed, rt, -static_cast<long double>(x.result.graph.num_edges()));
    };
    if (!best || key(r, ratio) < key(*best, best_ratio)) {
      best = std::move(r);
      best_ratio = ratio;
    }
  }
  best->params["K_measured"] = best_ratio;
  best->branch = best->passed ? "lemma-level" : "best-found";
  return *best;
}

struct BipartiteStepOptions {
  /// Minimum average degree of the input graph.
  double min_average_degree = 64;
  /// When set, vertices are discarded in a seeded random order instead of
  /// increasing id.
  std::optional<std::uint64_t> deletion_seed;
};

namespace detail {

inline long double average_degree_of(const Graph& h) {
  return h.num_vertices() == 0 ? 0 : 2.0L * h.num_edges() / h.num_vertices();
}

/// Local-search cut of `vertices`: every vertex has at least half of its
/// neighbours inside the set on the other side.
inline std::vector<std::uint8_t> local_max_cut(const Graph& h, const std::vector<Vertex>& vertices,
                                               const std::vector<std::uint8_t>& member,
                                               std::vector<std::uint8_t> side) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex v : vertices) {
      std::size_t same = 0, other = 0;
      for (Vertex w : h.neighbours(v)) {
        if (!member[w]) continue;
        (side[w] == side[v] ? same : other) += 1;
      }
      if (same > other) {
        side[v] ^= 1;
        changed = true;
      }
    }
  }
  return side;
}

inline std::size_t cross_edges(const Graph& h, const std::vector<std::uint8_t>& member,
                               const std::vector<std::uint8_t>& side) {
  std::size_t c = 0;
  for (const Edge& e : h.edges()) {
    if (member[e.u] && member[e.v] && side[e.u] != side[e.v]) ++c;
  }
  return c;
}

}  // namespace detail

/// First biregularisation step. Returns a bipartite subgraph with
/// e >= |X| Delta / 80 and e >= |Y| d / (10 log n), where n and d belong to
/// the processed graph (after passing to a dense core); the original values
/// are recorded as n_input and d_input.
inline ExtractionReport bipartite_step1(const Graph& g, const BipartiteStepOptions& opts = {}) {
  const long double d_in = detail::average_degree_of(g);
  if (d_in < opts.min_average_degree) {
    throw PreconditionError("bipartite_step1: average degree below guard");
  }
  // Pass to a subgraph with no denser part found by peeling; recurse into the
  // top half whenever it carries at least 6/10 of the edges.
  Subgraph work = induced_subgraph(g, densest_subgraph_peeling(g));
  std::vector<Vertex> a_set, b_set;
  std::size_t e_a = 0, e_b = 0;
  while (true) {
    const Graph& h = work.graph;
    const std::size_t n = h.num_vertices();
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex x, Vertex y) { return h.degree(x) > h.degree(y); });
    const std::size_t top = (n + 1) / 2;
    a_set.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(top));
    b_set.assign(order.begin() + static_cast<std::ptrdiff_t>(top), order.end());
    std::vector<std::uint8_t> in_a(n, 0);
    for (Vertex v : a_set) in_a[v] = 1;
    e_a = e_b = 0;
    for (const Edge& e : h.edges()) {
      if (in_a[e.u] && in_a[e.v]) ++e_a;
      if (!in_a[e.u] && !in_a[e.v]) ++e_b;
    }
    if (10 * e_b >= h.num_edges() || 10 * e_a < 6 * h.num_edges()) break;
    const Subgraph top_part = induced_subgraph(h, a_set);
    if (detail::average_degree_of(top_part.graph) <= detail::average_degree_of(h)) break;
    const Subgraph inner = induced_subgraph(top_part.graph, densest_subgraph_peeling(top_part.graph));
    work = {inner.graph, work.to_parent_ids(top_part.to_parent_ids(inner.to_parent))};
  }

  const Graph& h = work.graph;
  const std::size_t n = h.num_vertices();
  const long double d = detail::average_degree_of(h);
  ExtractionReport r;
  r.kind = ExtractionReport::Kind::kBipartiteStep1;
  r.params = {{"n", static_cast<long double>(n)},
              {"d", d},
              {"n_input", static_cast<long double>(g.num_vertices())},
              {"d_input", d_in}};
  std::vector<Vertex> left, right;
  if (10 * e_b >= h.num_edges()) {
    r.branch = "low-half";
    std::vector<std::uint8_t> member(n, 0), side(n, 0);
    for (Vertex v : b_set) member[v] = 1;
    for (std::size_t i = 0; i < b_set.size(); ++i) side[b_set[i]] = i % 2;
    side = detail::local_max_cut(h, b_set, member, side);
    for (Vertex v : b_set) (side[v] == 0 ? left : right).push_back(v);
  } else {
    std::vector<std::uint8_t> in_b(n, 0);
    for (Vertex v : b_set) in_b[v] = 1;
    const long double low = d / 20;
    std::map<std::size_t, std::vector<Vertex>> classes;
    std::map<std::size_t, std::size_t> class_edges;
    for (Vertex v : a_set) {
      std::size_t cross = 0;
      for (Vertex w : h.neighbours(v)) cross += in_b[w];
      if (static_cast<long double>(cross) <= low) continue;
      std::size_t i = 0;
      while ((std::size_t{2} << i) <= cross) ++i;
      classes[i].push_back(v);
      class_edges[i] += cross;
    }
    std::size_t best_i = 0, best_e = 0;
    for (const auto& [i, e] : class_edges) {
      if (e > best_e) {
        best_e = e;
        best_i = i;
      }
    }
    r.branch = "degree-class";
    r.params["class"] = static_cast<long double>(best_i);
    left = classes[best_i];
    right = b_set;
  }
  Subgraph sub = bipartite_subgraph(h, {left, right});
  r.result = {sub.graph, work.to_parent_ids(sub.to_parent)};
  detail::set_sides(r, work.to_parent_ids(left), work.to_parent_ids(right), g.num_vertices());
  detail::finish(g, r);
  return r;
}

/// Second biregularisation step: step1 followed by discarding vertices below
/// Delta(G')/160 on the left or d/(20 log n) on the right.
inline ExtractionReport bipartite_step2(const Graph& g, const BipartiteStepOptions& opts = {}) {
  const ExtractionReport first = bipartite_step1(g, opts);
  const Graph& h = first.result.graph;
  const std::size_t hn = h.num_vertices();
  const long double n = first.params.at("n"), d = first.params.at("d");
  const long double left_floor = static_cast<long double>(h.max_degree()) / 160;
  const long double right_floor = d / (20 * std::log2(n));
  std::vector<std::uint8_t> is_left(hn, 0), gone(hn, 0);
  for (Vertex v : first.left) is_left[v] = 1;
  std::vector<std::size_t> deg(hn);
  for (Vertex v = 0; v < hn; ++v) deg[v] = h.degree(v);
  auto below = [&](Vertex v) {
    return static_cast<long double>(deg[v]) < (is_left[v] ? left_floor : right_floor);
  };
  std::vector<Vertex> order(hn);
  std::iota(order.begin(), order.end(), Vertex{0});
  if (opts.deletion_seed) {
    Rng rng(*opts.deletion_seed);
    rng.shuffle(order.begin(), order.end());
  }
  std::size_t discarded = 0;
  std::deque<Vertex> queue;
  for (Vertex v : order) {
    if (below(v)) {
      gone[v] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    discarded += deg[v];
    for (Vertex w : h.neighbours(v)) {
      if (gone[w]) continue;
      --deg[w];
      if (below(w)) {
        gone[w] = 1;
        queue.push_back(w);
      }
    }
  }
  std::vector<Vertex> left, right;
  for (Vertex v = 0; v < hn; ++v) {
    if (!gone[v]) (is_left[v] ? left : right).push_back(first.result.to_parent[v]);
  }
  if (left.empty() || right.empty()) {
    throw std::logic_error("bipartite_step2: deletion emptied the graph");
  }
  ExtractionReport r;
  r.kind = ExtractionReport::Kind::kBipartiteStep2;
  r.branch = first.branch;
  r.params = first.params;
  r.params["step1_max_degree"] = static_cast<long double>(h.max_degree());
  r.params["step1_edges"] = static_cast<long double>(h.num_edges());
  r.params["discarded_edges"] = static_cast<long double>(discarded);
  r.result = bipartite_subgraph(g, {left, right});
  detail::set_sides(r, left, right, g.num_vertices());
  detail::finish(g, r);
  return r;
}

struct BlowupOptions {
  std::uint64_t seed = 0;
  /// Random bipartitions tried before falling back to local search.
  std::size_t attempts = 100;
};

/// Bipartite subgraph of an auxiliary graph whose sides have bounded degree
/// in the auxiliary graph (D1 = 2^i, D2 = 2^j) and large degree inside the
/// subgraph (at least D/(256 r^2 log^2 n)). Deterministic given the seed.
inline ExtractionReport blowup_biregular(const Graph& aux, std::size_t base_n, std::size_t r,
                                         const BlowupOptions& opts = {}) {
  if (aux.num_edges() == 0) throw PreconditionError("blowup_biregular: average degree is zero");
  if (r == 0 || base_n < 2) throw PreconditionError("blowup_biregular: need r >= 1 and n >= 2");
  const std::size_t N = aux.num_vertices();
  const long double e = static_cast<long double>(aux.num_edges());
  const long double d = 2 * e / static_cast<long double>(N);
  const long double lg = std::log2(static_cast<long double>(base_n));

  std::vector<Vertex> heavy;
  std::vector<std::uint8_t> member(N, 0);
  for (Vertex v = 0; v < N; ++v) {
    if (4.0L * static_cast<long double>(aux.degree(v)) >= d) {
      heavy.push_back(v);
      member[v] = 1;
    }
  }
  std::vector<std::uint8_t> side(N, 0);
  bool split = false;
  std::size_t attempt = 0;
  for (; attempt < opts.attempts && !split; ++attempt) {
    Rng rng(derive_seed(opts.seed, attempt));
    for (Vertex v : heavy) side[v] = rng.bernoulli(0.5) ? 1 : 0;
    split = 4.0L * static_cast<long double>(detail::cross_edges(aux, member, side)) >= e;
  }
  if (!split) side = detail::local_max_cut(aux, heavy, member, side);

  auto bucket = [](std::size_t deg) {
    std::size_t i = 1;
    while ((std::size_t{1} << i) <= deg) ++i;
    return i;  // 2^{i-1} <= deg < 2^i
  };
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_edges;
  for (const Edge& ed : aux.edges()) {
    if (!member[ed.u] || !member[ed.v] || side[ed.u] == side[ed.v]) continue;
    const Vertex a = side[ed.u] == 0 ? ed.u : ed.v, b = side[ed.u] == 0 ? ed.v : ed.u;
    ++pair_edges[{bucket(aux.degree(a)), bucket(aux.degree(b))}];
  }
  std::pair<std::size_t, std::size_t> pick{0, 0};
  std::size_t pick_edges = 0;
  for (const auto& [ij, cnt] : pair_edges) {
    const bool better = cnt > pick_edges ||
                        (cnt == pick_edges && ij.first + ij.second < pick.first + pick.second);
    if (better) {
      pick = ij;
      pick_edges = cnt;
    }
  }
  const auto [bi, bj] = pick;
  const long double scale = 128.0L * static_cast<long double>(r * r) * lg * lg;
  const long double floor_a = std::ldexp(1.0L, static_cast<int>(bi) - 1) / scale;
  const long double floor_b = std::ldexp(1.0L, static_cast<int>(bj) - 1) / scale;

  std::vector<std::uint8_t> in_a(N, 0), in_b(N, 0);
  for (Vertex v : heavy) {
    if (side[v] == 0 && bucket(aux.degree(v)) == bi) in_a[v] = 1;
    if (side[v] == 1 && bucket(aux.degree(v)) == bj) in_b[v] = 1;
  }
  std::vector<std::size_t> deg(N, 0);
  for (const Edge& ed : aux.edges()) {
    if ((in_a[ed.u] && in_b[ed.v]) || (in_b[ed.u] && in_a[ed.v])) {
      ++deg[ed.u];
      ++deg[ed.v];
    }
  }
  std::vector<Vertex> stack;
  auto below = [&](Vertex v) {
    return static_cast<long double>(deg[v]) < (in_a[v] ? floor_a : floor_b);
  };
  for (Vertex v = 0; v < N; ++v) {
    if ((in_a[v] || in_b[v]) && below(v)) stack.push_back(v);
  }
  std::vector<std::uint8_t> gone(N, 0);
  for (Vertex v : stack) gone[v] = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    const bool a = in_a[v];
    for (Vertex w : aux.neighbours(v)) {
      if (gone[w] || !(a ? in_b[w] : in_a[w])) continue;
      --deg[w];
      if (below(w)) {
        gone[w] = 1;
        stack.push_back(w);
      }
    }
  }
  std::vector<Vertex> left, right;
  for (Vertex v = 0; v < N; ++v) {
    if (gone[v]) continue;
    if (in_a[v]) left.push_back(v);
    if (in_b[v]) right.push_back(v);
  }
  if (left.empty() || right.empty()) {
    throw std::logic_error("blowup_biregular: vertex removal emptied the graph");
  }
  ExtractionReport rep;
  rep.kind = ExtractionReport::Kind::kBlowup;
  rep.branch = split ? "random-split" : "local-search-split";
  rep.params = {{"n", static_cast<long double>(base_n)},
                {"r", static_cast<long double>(r)},
                {"d", d},
                {"D1", std::ldexp(1.0L, static_cast<int>(bi))},
                {"D2", std::ldexp(1.0L, static_cast<int>(bj))},
                {"split_attempts", static_cast<long double>(attempt)},
                {"class_pair_edges", static_cast<long double>(pick_edges)}};
  rep.result = bipartite_subgraph(aux, {left, right});
  detail::set_sides(rep, left, right, N);
  detail::finish(aux, rep);
  return rep;
}

}  // namespace rainbow
