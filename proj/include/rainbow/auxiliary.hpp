#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rainbow/bigcount.hpp"
#include "rainbow/colouring.hpp"
#include "rainbow/conflict.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/extract.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/rng.hpp"
#include "rainbow/search.hpp"

namespace rainbow {

/// Auxiliary graphs are built explicitly and refuse to grow past these.
inline constexpr std::uint64_t kAuxMaxVertices = 1'000'000;
inline constexpr std::uint64_t kAuxMaxEdges = 20'000'000;
inline constexpr std::size_t kHypercubeMaxDim = 20;

// ---------------------------------------------------------------- hypercube

/// Q_m on the subsets of {0..m-1} (bitmasks); the edge A -- A^{i} gets
/// colour i. Proper, and no cycle is rainbow.
inline ColouredGraph hypercube_coloured(std::size_t m) {
  if (m < 1) throw PreconditionError("hypercube_coloured: m >= 1 required");
  if (m > kHypercubeMaxDim) throw GuardExceeded("hypercube_coloured: m too large");
  const std::size_t n = std::size_t{1} << m;
  std::vector<Edge> edges;
  edges.reserve(m * n / 2);
  EdgeColouring c;
  for (Vertex v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < m; ++i) {
      const Vertex w = v ^ (Vertex{1} << i);
      if (v < w) {
        edges.push_back({v, w});
        c.set(v, w, static_cast<Colour>(i));
      }
    }
  }
  return {Graph::from_edges(n, std::move(edges)), std::move(c)};
}

// ----------------------------------------------------------- shared helpers

namespace detail {

inline BigCount binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  BigCount out = 1;
  for (std::uint64_t i = 0; i < r; ++i) out = out * (n - i) / (i + 1);
  return out;
}

inline std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t r) {
  const BigCount b = binomial(n, r);
  if (b > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(b);
}

/// All r-subsets of [0, n) in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t r, F&& f) {
  if (r > n) return;
  std::vector<Vertex> s(r);
  for (std::size_t i = 0; i < r; ++i) s[i] = static_cast<Vertex>(i);
  for (;;) {
    f(std::as_const(s));
    std::size_t i = r;
    while (i > 0 && s[i - 1] == n - r + i - 1) --i;
    if (i == 0) return;
    ++s[i - 1];
    for (std::size_t j = i; j < r; ++j) s[j] = s[j - 1] + 1;
  }
}

/// Rank of a sorted r-subset in lexicographic order.
inline std::uint64_t subset_rank(std::span<const Vertex> s, std::size_t n) {
  const std::size_t r = s.size();
  std::uint64_t rank = 0;
  Vertex prev = 0;
  for (std::size_t i = 0; i < r; ++i) {
    for (Vertex v = i == 0 ? 0 : prev + 1; v < s[i]; ++v) rank += binomial_u64(n - v - 1, r - i - 1);
    prev = s[i];
  }
  return rank;
}

inline std::vector<Vertex> common_neighbours(const Graph& g, std::span<const Vertex> s) {
  if (s.empty()) {
    std::vector<Vertex> all(g.num_vertices());
    for (Vertex v = 0; v < all.size(); ++v) all[v] = v;
    return all;
  }
  std::vector<Vertex> cur(g.neighbours(s[0]).begin(), g.neighbours(s[0]).end());
  std::vector<Vertex> next;
  for (std::size_t i = 1; i < s.size() && !cur.empty(); ++i) {
    const auto nb = g.neighbours(s[i]);
    next.clear();
    std::set_intersection(cur.begin(), cur.end(), nb.begin(), nb.end(), std::back_inserter(next));
    cur.swap(next);
  }
  return cur;
}

/// Base-vertex membership bitmasks for fast intersection tests.
class MemberMasks {
 public:
  MemberMasks(const std::vector<std::vector<Vertex>>& members, std::size_t base_n)
      : words_((base_n + 63) / 64), bits_(members.size() * words_, 0) {
    for (std::size_t v = 0; v < members.size(); ++v) {
      for (Vertex b : members[v]) bits_[v * words_ + b / 64] |= std::uint64_t{1} << (b % 64);
    }
  }
  bool meet(std::size_t a, std::size_t b) const {
    for (std::size_t w = 0; w < words_; ++w) {
      if (bits_[a * words_ + w] & bits_[b * words_ + w]) return true;
    }
    return false;
  }

 private:
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace detail

// -------------------------------------------------------------- tuple graph

struct TupleVertex {
  std::vector<Vertex> coords;  // pairwise distinct
  friend bool operator==(const TupleVertex&, const TupleVertex&) = default;
};

struct TupleGraph {
  Graph graph;
  std::vector<TupleVertex> vertices;
  std::size_t base_n = 0;
  std::size_t r = 0;

  std::vector<std::vector<Vertex>> members() const {
    std::vector<std::vector<Vertex>> out;
    out.reserve(vertices.size());
    for (const auto& t : vertices) out.push_back(t.coords);
    return out;
  }
};

namespace detail {

inline void require_complete_proper(const Graph& g, const EdgeColouring& c, const char* who) {
  const std::size_t n = g.num_vertices();
  if (g.num_edges() != n * (n - (n > 0 ? 1 : 0)) / 2) {
    throw PreconditionError(std::string(who) + ": host graph is not complete");
  }
  if (!validate_proper(g, c).empty()) throw PreconditionError(std::string(who) + ": colouring is not proper");
}

}  // namespace detail

/// Ordered r-tuples of distinct vertices of K_n; u ~ v iff their coordinate
/// sets are disjoint and all r edges u_i v_i carry one common colour.
inline TupleGraph build_tuple_graph(const Graph& g, const EdgeColouring& c, std::size_t r) {
  detail::require_complete_proper(g, c, "build_tuple_graph");
  const std::size_t n = g.num_vertices();
  if (r < 1 || r > n) throw PreconditionError("build_tuple_graph: need 1 <= r <= n");
  BigCount power = big_pow(BigCount(n), static_cast<unsigned>(r));
  if (power > kAuxMaxVertices) throw GuardExceeded("build_tuple_graph: n^r exceeds vertex guard");
  const std::size_t cells = static_cast<std::size_t>(power);

  // partner[v][colour] is the other end of v's edge of that colour.
  std::vector<Colour> palette;
  for (const auto& [e, col] : c.sorted_entries()) palette.push_back(col);
  std::sort(palette.begin(), palette.end());
  palette.erase(std::unique(palette.begin(), palette.end()), palette.end());
  const std::size_t P = palette.size();
  std::vector<Vertex> partner(n * P, kNoVertex);
  for (const Edge& e : g.edges()) {
    const std::size_t ci =
        static_cast<std::size_t>(std::lower_bound(palette.begin(), palette.end(), c.at(e.u, e.v)) - palette.begin());
    partner[e.u * P + ci] = e.v;
    partner[e.v * P + ci] = e.u;
  }

  TupleGraph tg;
  tg.base_n = n;
  tg.r = r;
  std::vector<std::uint32_t> index(cells, std::numeric_limits<std::uint32_t>::max());
  auto code = [&](const std::vector<Vertex>& t) {
    std::size_t x = 0;
    for (Vertex v : t) x = x * n + v;
    return x;
  };
  // Lexicographic enumeration of injective tuples.
  std::vector<Vertex> t(r, 0);
  std::vector<std::uint8_t> used(n, 0);
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == r) {
      index[code(t)] = static_cast<std::uint32_t>(tg.vertices.size());
      tg.vertices.push_back({t});
      return;
    }
    for (Vertex v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = 1;
      t[pos] = v;
      self(self, pos + 1);
      used[v] = 0;
    }
  };
  rec(rec, 0);

  std::vector<Edge> edges;
  std::vector<Vertex> img(r);
  for (Vertex u = 0; u < tg.vertices.size(); ++u) {
    const auto& coords = tg.vertices[u].coords;
    for (std::size_t ci = 0; ci < P; ++ci) {
      bool ok = true;
      for (std::size_t i = 0; i < r && ok; ++i) {
        img[i] = partner[coords[i] * P + ci];
        ok = img[i] != kNoVertex && std::find(coords.begin(), coords.end(), img[i]) == coords.end();
      }
      if (!ok) continue;
      const Vertex v = index[code(img)];
      if (u < v) edges.push_back({u, v});
    }
    if (edges.size() > kAuxMaxEdges) throw GuardExceeded("build_tuple_graph: edge guard exceeded");
  }
  tg.graph = Graph::from_edges(tg.vertices.size(), std::move(edges));
  return tg;
}

/// Number of r-edge matchings lying inside a single colour class.
inline BigCount count_mono_matchings(const EdgeColouring& c, std::size_t r) {
  std::map<Colour, std::vector<Edge>> classes;
  for (const auto& [e, col] : c.sorted_entries()) classes[col].push_back(e);
  BigCount total = 0;
  for (const auto& [col, es] : classes) {
    std::unordered_map<Vertex, std::size_t> load;
    bool matching = true;
    for (const Edge& e : es) {
      if (++load[e.u] > 1 || ++load[e.v] > 1) matching = false;
    }
    if (matching) {
      total += detail::binomial(es.size(), r);
      continue;
    }
    // Improper colour class: count matchings by backtracking.
    std::unordered_map<Vertex, std::uint8_t> busy;
    auto rec = [&](auto&& self, std::size_t from, std::size_t left) -> BigCount {
      if (left == 0) return 1;
      BigCount acc = 0;
      for (std::size_t i = from; i < es.size(); ++i) {
        if (busy[es[i].u] || busy[es[i].v]) continue;
        busy[es[i].u] = busy[es[i].v] = 1;
        acc += self(self, i + 1, left - 1);
        busy[es[i].u] = busy[es[i].v] = 0;
      }
      return acc;
    };
    total += rec(rec, 0, r);
  }
  return total;
}

// ------------------------------------------------------------- subset graph

struct SubsetVertex {
  std::vector<Vertex> members;  // sorted, exactly r
  friend bool operator==(const SubsetVertex&, const SubsetVertex&) = default;
};

struct SubsetGraph {
  Graph graph;
  std::vector<SubsetVertex> vertices;  // lexicographic order
  std::size_t base_n = 0;
  std::size_t r = 0;

  std::vector<std::vector<Vertex>> members() const {
    std::vector<std::vector<Vertex>> out;
    out.reserve(vertices.size());
    for (const auto& s : vertices) out.push_back(s.members);
    return out;
  }
};

/// r-subsets of V(g); U ~ V iff disjoint and every u in U is adjacent to
/// every v in V.
inline SubsetGraph build_subset_graph(const Graph& g, std::size_t r) {
  const std::size_t n = g.num_vertices();
  if (r < 1 || r > n) throw PreconditionError("build_subset_graph: need 1 <= r <= n");
  if (detail::binomial(n, r) > kAuxMaxVertices) {
    throw GuardExceeded("build_subset_graph: C(n, r) exceeds vertex guard");
  }
  SubsetGraph sg;
  sg.base_n = n;
  sg.r = r;
  std::vector<std::vector<Vertex>> common;
  BigCount degree_sum = 0;
  detail::for_each_subset(n, r, [&](const std::vector<Vertex>& s) {
    sg.vertices.push_back({s});
    common.push_back(detail::common_neighbours(g, s));
    degree_sum += detail::binomial(common.back().size(), r);
  });
  if (degree_sum / 2 > kAuxMaxEdges) throw GuardExceeded("build_subset_graph: edge guard exceeded");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(degree_sum / 2));
  for (Vertex u = 0; u < sg.vertices.size(); ++u) {
    const auto& cn = common[u];
    // Common neighbours never meet U, since nobody is its own neighbour.
    detail::for_each_subset(cn.size(), r, [&](const std::vector<Vertex>& pick) {
      std::vector<Vertex> s(r);
      for (std::size_t i = 0; i < r; ++i) s[i] = cn[pick[i]];
      const auto v = static_cast<Vertex>(detail::subset_rank(s, n));
      if (u < v) edges.push_back({u, v});
    });
  }
  sg.graph = Graph::from_edges(sg.vertices.size(), std::move(edges));
  return sg;
}

/// Unordered copies of K_{r,r} in g: pairs {A, B} of disjoint r-sets with
/// all r^2 cross edges.
inline BigCount count_Krr(const Graph& g, std::size_t r) {
  const std::size_t n = g.num_vertices();
  if (r < 1) throw PreconditionError("count_Krr: r >= 1 required");
  if (r > n) return 0;
  if (detail::binomial(n, r) > kAuxMaxVertices) throw GuardExceeded("count_Krr: C(n, r) exceeds guard");
  BigCount ordered = 0;
  detail::for_each_subset(n, r, [&](const std::vector<Vertex>& s) {
    ordered += detail::binomial(detail::common_neighbours(g, s).size(), r);
  });
  return ordered / 2;
}

// --------------------------------------------------- intersection certificates

struct IntersectionOptions {
  /// Exhaustive over all (x, y) when |V|^2 is at most this; sampled otherwise.
  std::uint64_t exhaustive_pairs = 4'000'000;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct IntersectionCertificate {
  std::string bound_form;  // "r^2" or "r^(r+1) d^(1-1/r)"
  bool exhaustive = false;
  std::uint64_t pairs_checked = 0;
  std::uint64_t violations = 0;
  // The pair with the largest count / bound ratio (first in scan order on ties).
  Vertex worst_x = kNoVertex;
  Vertex worst_y = kNoVertex;
  std::uint64_t worst_count = 0;
  long double worst_bound = 0;
  bool passed = true;
};

namespace detail {

/// For each y (or sampled (x, y)), counts z in N(y) meeting x and compares
/// against bound_at(count, deg y); aggregation is in y order.
template <class Within, class Bound>
IntersectionCertificate scan_intersections(const Graph& h, const std::vector<std::vector<Vertex>>& members,
                                           std::size_t base_n, const IntersectionOptions& opts,
                                           Within within, Bound bound_of) {
  IntersectionCertificate cert;
  const std::size_t N = h.num_vertices();
  if (N == 0) {
    cert.exhaustive = true;
    return cert;
  }
  const MemberMasks masks(members, base_n);
  struct Row {
    std::uint64_t pairs = 0, violations = 0, worst_count = 0;
    Vertex worst_x = kNoVertex;
    long double worst_bound = 0, worst_ratio = -1;
  };
  auto visit = [&](Vertex x, Vertex y, Row& row) {
    std::uint64_t cnt = 0;
    for (Vertex z : h.neighbours(y)) cnt += masks.meet(x, z);
    ++row.pairs;
    const std::size_t d = h.degree(y);
    if (!within(cnt, d)) ++row.violations;
    const long double b = bound_of(d);
    const long double ratio = b > 0 ? static_cast<long double>(cnt) / b : (cnt > 0 ? 1e30L : 0);
    if (ratio > row.worst_ratio) {
      row.worst_ratio = ratio;
      row.worst_count = cnt;
      row.worst_x = x;
      row.worst_bound = b;
    }
  };
  cert.exhaustive = static_cast<long double>(N) * N <= static_cast<long double>(opts.exhaustive_pairs);
  std::vector<Row> rows;
  std::vector<Vertex> ys;
  if (cert.exhaustive) {
    rows.resize(N);
    const unsigned threads = std::max(1u, opts.threads);
    auto work = [&](unsigned t) {
      for (Vertex y = t; y < N; y += threads) {
        for (Vertex x = 0; x < N; ++x) visit(x, y, rows[y]);
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    for (Vertex y = 0; y < N; ++y) ys.push_back(y);
  } else {
    Rng rng(opts.seed);
    rows.resize(opts.samples);
    for (std::uint64_t i = 0; i < opts.samples; ++i) {
      const auto x = static_cast<Vertex>(rng.below(N));
      const auto y = static_cast<Vertex>(rng.below(N));
      visit(x, y, rows[i]);
      ys.push_back(y);
    }
  }
  long double best = -1;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& row = rows[i];
    cert.pairs_checked += row.pairs;
    cert.violations += row.violations;
    if (row.pairs > 0 && row.worst_ratio > best) {
      best = row.worst_ratio;
      cert.worst_x = row.worst_x;
      cert.worst_y = ys[i];
      cert.worst_count = row.worst_count;
      cert.worst_bound = row.worst_bound;
    }
  }
  cert.passed = cert.violations == 0;
  return cert;
}

}  // namespace detail

/// For tuples x, y: at most r^2 neighbours z of y meet x.
inline IntersectionCertificate check_tuple_intersection_bound(const TupleGraph& tg,
                                                             const IntersectionOptions& opts = {}) {
  const std::uint64_t r2 = static_cast<std::uint64_t>(tg.r) * tg.r;
  auto cert = detail::scan_intersections(
      tg.graph, tg.members(), tg.base_n, opts, [&](std::uint64_t cnt, std::size_t) { return cnt <= r2; },
      [&](std::size_t) { return static_cast<long double>(r2); });
  cert.bound_form = "r^2";
  return cert;
}

/// For r-sets x, y: at most r^{r+1} d(y)^{1-1/r} neighbours z of y meet x.
/// Compared exactly as cnt^r <= r^{r(r+1)} d^{r-1}.
inline IntersectionCertificate check_subset_intersection_bound(const SubsetGraph& sg,
                                                              const IntersectionOptions& opts = {}) {
  const auto r = static_cast<unsigned>(sg.r);
  const BigCount coeff = big_pow(BigCount(r), r * (r + 1));
  auto cert = detail::scan_intersections(
      sg.graph, sg.members(), sg.base_n, opts,
      [&](std::uint64_t cnt, std::size_t d) {
        return big_pow(BigCount(cnt), r) <= coeff * big_pow(BigCount(d), r - 1);
      },
      [&](std::size_t d) {
        return std::pow(static_cast<long double>(r), r + 1.0L) *
               std::pow(static_cast<long double>(d), 1.0L - 1.0L / r);
      });
  cert.bound_form = "r^(r+1) d^(1-1/r)";
  return cert;
}

// ---------------------------------------------------------------- witnesses

/// C_{2k}[r]: 2k pairwise disjoint r-sets in cyclic order, consecutive sets
/// joined completely in the base graph.
struct BlowupWitness {
  std::vector<std::vector<Vertex>> classes;
};

/// Checks a blow-up witness against the base graph only.
inline bool is_blowup_cycle(const Graph& g, const BlowupWitness& w, std::size_t r) {
  const std::size_t L = w.classes.size();
  if (L < 4 || L % 2 != 0 || r < 1) return false;
  std::vector<std::uint8_t> seen(g.num_vertices(), 0);
  for (const auto& cls : w.classes) {
    if (cls.size() != r) return false;
    for (Vertex v : cls) {
      if (v >= g.num_vertices() || seen[v]) return false;
      seen[v] = 1;
    }
  }
  for (std::size_t i = 0; i < L; ++i) {
    for (Vertex a : w.classes[i]) {
      for (Vertex b : w.classes[(i + 1) % L]) {
        if (!g.has_edge(a, b)) return false;
      }
    }
  }
  return true;
}

/// r vertex-disjoint 2k-cycles of K_n; position j of every copy corresponds,
/// so edge (j, j+1) has one colour across all copies.
struct ColourIsoWitness {
  std::vector<std::vector<Vertex>> copies;
};

inline bool is_colour_isomorphic_family(const Graph& g, const EdgeColouring& c, const ColourIsoWitness& w,
                                        std::size_t r, std::size_t k) {
  if (w.copies.size() != r || r < 1 || k < 2) return false;
  std::vector<std::uint8_t> seen(g.num_vertices(), 0);
  for (const auto& cyc : w.copies) {
    if (cyc.size() != 2 * k) return false;
    for (Vertex v : cyc) {
      if (v >= g.num_vertices() || seen[v]) return false;
      seen[v] = 1;
    }
    for (std::size_t j = 0; j < 2 * k; ++j) {
      if (!g.has_edge(cyc[j], cyc[(j + 1) % (2 * k)])) return false;
    }
  }
  for (std::size_t j = 0; j < 2 * k; ++j) {
    const auto col = c.find(w.copies[0][j], w.copies[0][(j + 1) % (2 * k)]);
    if (!col) return false;
    for (const auto& cyc : w.copies) {
      if (c.find(cyc[j], cyc[(j + 1) % (2 * k)]) != col) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- pipelines

struct BlowupSearch {
  Outcome outcome = Outcome::kInconclusive;
  std::optional<BlowupWitness> witness;
  std::size_t k = 0;  // half-length of the witness cycle
  /// Per-k outcomes in schedule order.
  std::vector<std::pair<std::size_t, Outcome>> schedule;
  std::string phase;  // of the deciding search
  std::optional<ExtractionReport> extraction;
  std::size_t aux_vertices = 0;
  std::size_t aux_edges = 0;
  std::uint64_t draws = 0;
  std::uint64_t steps = 0;
  std::uint64_t exact_steps = 0;
};

/// Largest cycle half-length tried when k is not fixed.
inline constexpr std::size_t kBlowupMaxK = 8;

/// C_{2k}[r] in g, searched as a 2k-cycle of pairwise disjoint r-sets in the
/// subset graph: first on its bi-regular extraction, then on the whole
/// subset graph (exactly when it has at most exact_max_n vertices).
/// With k unset, tries k = 2, 3, ... while 2kr <= n.
inline BlowupSearch find_blowup_cycle(const Graph& g, std::size_t r, std::optional<std::size_t> k,
                                      const SearchOptions& opts = {}) {
  if (r < 1) throw PreconditionError("find_blowup_cycle: r >= 1 required");
  if (k && *k < 2) throw PreconditionError("find_blowup_cycle: k >= 2 required");
  const std::size_t n = g.num_vertices();
  BlowupSearch out;
  std::vector<std::size_t> ks;
  if (k) {
    ks.push_back(*k);
  } else {
    for (std::size_t j = 2; j <= kBlowupMaxK && 2 * j * r <= n; ++j) ks.push_back(j);
  }
  if (ks.empty() || 2 * ks.front() * r > n) {
    // Not enough vertices for any 2k disjoint r-sets.
    out.outcome = Outcome::kAbsent;
    out.phase = "trivial";
    for (std::size_t j : ks) out.schedule.push_back({j, Outcome::kAbsent});
    return out;
  }
  const SubsetGraph sg = build_subset_graph(g, r);
  out.aux_vertices = sg.graph.num_vertices();
  out.aux_edges = sg.graph.num_edges();
  const Conflicts full_conf{VertexRelation::set_intersection(sg.members(), n), std::nullopt};

  std::optional<Subgraph> ext;
  std::optional<Conflicts> ext_conf;
  if (sg.graph.num_edges() > 0) {
    out.extraction = blowup_biregular(sg.graph, n, r, {opts.seed, 100});
    ext = out.extraction->result;
    std::vector<std::vector<Vertex>> ext_members;
    for (Vertex v : ext->to_parent) ext_members.push_back(sg.vertices[v].members);
    ext_conf = Conflicts{VertexRelation::set_intersection(std::move(ext_members), n), std::nullopt};
  }

  bool inconclusive = false;
  for (std::size_t j : ks) {
    if (2 * j * r > n) {
      out.schedule.push_back({j, Outcome::kAbsent});
      continue;
    }
    std::optional<std::vector<Vertex>> cycle;  // subset-graph ids
    std::string phase;
    Outcome verdict = Outcome::kInconclusive;
    if (ext) {
      SearchOptions eo = opts;
      eo.exact_max_n = 0;
      const auto res = find_good_2k_cycle(ext->graph, j, *ext_conf, eo);
      out.draws += res.draws;
      out.steps += res.steps;
      if (res.outcome == Outcome::kFound) {
        cycle = ext->to_parent_ids(res.witness);
        phase = "extraction-" + res.phase;
        verdict = Outcome::kFound;
      }
    }
    if (!cycle) {
      SearchOptions fo = opts;
      fo.seed = derive_seed(opts.seed, 0x51ull + j);
      const auto res = find_good_2k_cycle(sg.graph, j, full_conf, fo);
      out.draws += res.draws;
      out.steps += res.steps;
      out.exact_steps += res.exact_steps;
      phase = res.phase;
      verdict = res.outcome;
      if (res.outcome == Outcome::kFound) cycle = res.witness;
    }
    out.schedule.push_back({j, verdict});
    if (cycle) {
      BlowupWitness w;
      for (Vertex u : *cycle) w.classes.push_back(sg.vertices[u].members);
      if (!is_blowup_cycle(g, w, r)) throw std::logic_error("find_blowup_cycle: witness failed validation");
      out.outcome = Outcome::kFound;
      out.witness = std::move(w);
      out.k = j;
      out.phase = phase;
      return out;
    }
    if (verdict == Outcome::kInconclusive) inconclusive = true;
    out.phase = phase;
  }
  out.outcome = inconclusive ? Outcome::kInconclusive : Outcome::kAbsent;
  return out;
}

struct ColourIsoSearch {
  Outcome outcome = Outcome::kInconclusive;
  std::optional<ColourIsoWitness> witness;
  std::string phase;
  std::size_t aux_vertices = 0;
  std::size_t aux_edges = 0;
  std::uint64_t draws = 0;
  std::uint64_t steps = 0;
  std::uint64_t exact_steps = 0;
};

/// r pairwise vertex-disjoint, colour-isomorphic 2k-cycles in a properly
/// coloured K_n, searched as a 2k-cycle of pairwise disjoint tuples in the
/// tuple graph.
inline ColourIsoSearch find_colour_isomorphic_cycles(const Graph& g, const EdgeColouring& c, std::size_t r,
                                                     std::size_t k, const SearchOptions& opts = {}) {
  if (k < 2) throw PreconditionError("find_colour_isomorphic_cycles: k >= 2 required");
  detail::require_complete_proper(g, c, "find_colour_isomorphic_cycles");
  ColourIsoSearch out;
  if (r < 1) throw PreconditionError("find_colour_isomorphic_cycles: r >= 1 required");
  if (2 * k * r > g.num_vertices()) {
    out.outcome = Outcome::kAbsent;
    out.phase = "trivial";
    return out;
  }
  const TupleGraph tg = build_tuple_graph(g, c, r);
  out.aux_vertices = tg.graph.num_vertices();
  out.aux_edges = tg.graph.num_edges();
  const auto res = find_good_2k_cycle(
      tg.graph, k, {VertexRelation::set_intersection(tg.members(), tg.base_n), std::nullopt}, opts);
  out.outcome = res.outcome;
  out.phase = res.phase;
  out.draws = res.draws;
  out.steps = res.steps;
  out.exact_steps = res.exact_steps;
  if (res.outcome == Outcome::kFound) {
    ColourIsoWitness w;
    w.copies.assign(r, {});
    for (Vertex t : res.witness) {
      for (std::size_t i = 0; i < r; ++i) w.copies[i].push_back(tg.vertices[t].coords[i]);
    }
    if (!is_colour_isomorphic_family(g, c, w, r, k)) {
      throw std::logic_error("find_colour_isomorphic_cycles: witness failed validation");
    }
    out.witness = std::move(w);
  }
  return out;
}

}  // namespace rainbow
