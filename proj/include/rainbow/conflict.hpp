#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rainbow/bigcount.hpp"
#include "rainbow/colouring.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/homcount.hpp"

namespace rainbow {

/// Symmetric relation ~ on vertices.
class VertexRelation {
 public:
  enum class Kind { kEquality, kEmpty, kSetIntersection, kCustom };
  using Predicate = std::function<bool(Vertex, Vertex)>;

  static VertexRelation equality() { return VertexRelation(Kind::kEquality, "equality"); }
  static VertexRelation empty() { return VertexRelation(Kind::kEmpty, "empty"); }

  /// u ~ w iff members[u] and members[w] share an element of [0, base_n).
  static VertexRelation set_intersection(std::vector<std::vector<Vertex>> members,
                                         std::size_t base_n) {
    VertexRelation r(Kind::kSetIntersection, "set-intersection");
    for (auto& m : members) {
      std::sort(m.begin(), m.end());
      for (Vertex b : m) {
        if (b >= base_n) throw PreconditionError("set_intersection: member out of range");
      }
    }
    r.members_ = std::make_shared<const std::vector<std::vector<Vertex>>>(std::move(members));
    r.base_n_ = base_n;
    return r;
  }

  static VertexRelation custom(Predicate pred, std::string name = "custom") {
    VertexRelation r(Kind::kCustom, std::move(name));
    r.pred_ = std::move(pred);
    return r;
  }

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

  bool related(Vertex a, Vertex b) const {
    switch (kind_) {
      case Kind::kEquality: return a == b;
      case Kind::kEmpty: return false;
      case Kind::kSetIntersection: {
        const auto& x = (*members_)[a];
        const auto& y = (*members_)[b];
        std::size_t i = 0, j = 0;
        while (i < x.size() && j < y.size()) {
          if (x[i] == y[j]) return true;
          if (x[i] < y[j]) ++i; else ++j;
        }
        return false;
      }
      case Kind::kCustom: return pred_(a, b);
    }
    return false;
  }

  const std::vector<std::vector<Vertex>>& members() const { return *members_; }
  std::size_t base_size() const noexcept { return base_n_; }

  /// Optional claimed sparsity, checked by verify_sparsity.
  std::optional<std::size_t> claimed_s;

 private:
  VertexRelation(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

  Kind kind_;
  std::string name_;
  Predicate pred_;
  std::shared_ptr<const std::vector<std::vector<Vertex>>> members_;
  std::size_t base_n_ = 0;
};

/// Symmetric relation ≈ on edges.
class EdgePairRelation {
 public:
  enum class Kind { kSameColour, kEmpty, kCustom };
  /// pred(a, b, c, d): is {a,b} related to {c,d}?
  using Predicate = std::function<bool(Vertex, Vertex, Vertex, Vertex)>;

  static EdgePairRelation same_colour(const EdgeColouring& c) {
    EdgePairRelation r(Kind::kSameColour, "same-colour");
    r.colouring_ = std::make_shared<const EdgeColouring>(c);
    return r;
  }

  static EdgePairRelation empty() { return EdgePairRelation(Kind::kEmpty, "empty"); }

  static EdgePairRelation custom(Predicate pred, std::string name = "custom") {
    EdgePairRelation r(Kind::kCustom, std::move(name));
    r.pred_ = std::move(pred);
    return r;
  }

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  const EdgeColouring& colouring() const { return *colouring_; }

  bool related(Vertex a, Vertex b, Vertex c, Vertex d) const {
    switch (kind_) {
      case Kind::kSameColour: return colouring_->at(a, b) == colouring_->at(c, d);
      case Kind::kEmpty: return false;
      case Kind::kCustom: return pred_(a, b, c, d);
    }
    return false;
  }

  std::optional<std::size_t> claimed_s;

 private:
  EdgePairRelation(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

  Kind kind_;
  std::string name_;
  Predicate pred_;
  std::shared_ptr<const EdgeColouring> colouring_;
};

struct Conflicts {
  std::optional<VertexRelation> vertex;
  std::optional<EdgePairRelation> edge;
};

struct SparsityReport {
  std::size_t measured = 0;
  std::optional<std::size_t> claimed;
  bool passed = true;  // claimed absent or measured <= claimed
};

/// max over u, v of #{w in N(v) : u ~ w}.
inline SparsityReport verify_sparsity(const Graph& g, const VertexRelation& rel) {
  SparsityReport rep;
  rep.claimed = rel.claimed_s;
  const std::size_t n = g.num_vertices();
  switch (rel.kind()) {
    case VertexRelation::Kind::kEquality:
      rep.measured = g.num_edges() > 0 ? 1 : 0;
      break;
    case VertexRelation::Kind::kEmpty:
      rep.measured = 0;
      break;
    case VertexRelation::Kind::kSetIntersection: {
      std::vector<std::uint8_t> mark(rel.base_size(), 0);
      for (Vertex u = 0; u < n; ++u) {
        for (Vertex b : rel.members()[u]) mark[b] = 1;
        for (Vertex v = 0; v < n; ++v) {
          std::size_t cnt = 0;
          for (Vertex w : g.neighbours(v)) {
            for (Vertex b : rel.members()[w]) {
              if (mark[b]) { ++cnt; break; }
            }
          }
          rep.measured = std::max(rep.measured, cnt);
        }
        for (Vertex b : rel.members()[u]) mark[b] = 0;
      }
      break;
    }
    case VertexRelation::Kind::kCustom:
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v) {
          std::size_t cnt = 0;
          for (Vertex w : g.neighbours(v)) cnt += rel.related(u, w) ? 1 : 0;
          rep.measured = std::max(rep.measured, cnt);
        }
      break;
  }
  if (rep.claimed) rep.passed = rep.measured <= *rep.claimed;
  return rep;
}

/// max over uv in E and w in V of #{z in N(w) : uv ≈ wz}.
inline SparsityReport verify_sparsity(const Graph& g, const EdgePairRelation& rel) {
  SparsityReport rep;
  rep.claimed = rel.claimed_s;
  switch (rel.kind()) {
    case EdgePairRelation::Kind::kEmpty:
      break;
    case EdgePairRelation::Kind::kSameColour: {
      // Every colour on E(g) is the colour of some uv, so the answer is the
      // largest colour multiplicity at a vertex.
      const auto colours = colours_by_edge_id(g, rel.colouring());
      std::vector<Colour> around;
      for (Vertex w = 0; w < g.num_vertices(); ++w) {
        around.clear();
        for (EdgeId id : g.incident_edges(w)) around.push_back(colours[id]);
        std::sort(around.begin(), around.end());
        for (std::size_t i = 0; i < around.size();) {
          std::size_t j = i;
          while (j < around.size() && around[j] == around[i]) ++j;
          rep.measured = std::max(rep.measured, j - i);
          i = j;
        }
      }
      break;
    }
    case EdgePairRelation::Kind::kCustom:
      for (const Edge& e : g.edges())
        for (Vertex w = 0; w < g.num_vertices(); ++w) {
          std::size_t cnt = 0;
          for (Vertex z : g.neighbours(w)) cnt += rel.related(e.u, e.v, w, z) ? 1 : 0;
          rep.measured = std::max(rep.measured, cnt);
        }
      break;
  }
  if (rep.claimed) rep.passed = rep.measured <= *rep.claimed;
  return rep;
}

/// Parameters of the two-sided lemma form.
struct BipartiteConflictParams {
  std::size_t delta1 = 0;  // max |N(w) ∩ X2| over w in X1
  std::size_t delta2 = 0;  // max |N(w) ∩ X1| over w in X2
  std::size_t s1 = 0;
  std::size_t s2 = 0;
  std::size_t ell = 0;

  std::size_t M() const { return std::max(delta1 * s2, delta2 * s1); }

  void validate(std::size_t k) const {
    if (s1 > delta1 || s2 > delta2) {
      throw PreconditionError("BipartiteConflictParams: s exceeds delta");
    }
    if (ell + 1 > k) throw PreconditionError("BipartiteConflictParams: ell > k-1");
  }
};

/// Measures delta1, delta2 and the relation caps s1, s2 of `rel` on g with
/// sides X1 = part.left, X2 = part.right. Exactly one of vrel / erel is used.
inline BipartiteConflictParams measure_bipartite_params(
    const Graph& g, const BipartitePartition& part, const VertexRelation* vrel,
    const EdgePairRelation* erel) {
  part.validate(g.num_vertices());
  std::vector<std::uint8_t> side(g.num_vertices(), 0);
  for (Vertex v : part.left) side[v] = 1;
  for (Vertex v : part.right) side[v] = 2;
  BipartiteConflictParams p;
  auto scan = [&](const std::vector<Vertex>& own, std::uint8_t other,
                  std::size_t& delta, std::size_t& s) {
    for (Vertex w : own) {
      std::vector<Vertex> cross;
      for (Vertex z : g.neighbours(w)) {
        if (side[z] == other) cross.push_back(z);
      }
      delta = std::max(delta, cross.size());
      if (vrel) {
        for (Vertex u = 0; u < g.num_vertices(); ++u) {
          std::size_t cnt = 0;
          for (Vertex z : cross) cnt += vrel->related(u, z) ? 1 : 0;
          s = std::max(s, cnt);
        }
      } else if (erel) {
        for (const Edge& e : g.edges()) {
          std::size_t cnt = 0;
          for (Vertex z : cross) cnt += erel->related(e.u, e.v, w, z) ? 1 : 0;
          s = std::max(s, cnt);
        }
      }
    }
  };
  scan(part.left, 2, p.delta1, p.s1);
  scan(part.right, 1, p.delta2, p.s2);
  return p;
}

struct EnumerationOptions {
  std::uint64_t budget = 1'000'000'000;  // extension steps
  std::size_t max_witnesses = 0;
  unsigned threads = 1;
};

struct BadCycleCount {
  BigCount count = 0;   // bad homomorphic 2k-cycles
  BigCount total = 0;   // all homomorphic 2k-cycles in the pattern
  std::uint64_t good = 0;
  std::uint64_t steps = 0;
  std::vector<std::vector<Vertex>> witnesses;  // bad cycles, parent ids
};

namespace detail {

// Vertex-side admission policies. admit() asks whether v may join the prefix
// without creating a related pair.

struct NoVertexCheck {
  void reset(std::size_t) {}
  bool admit(Vertex) const { return true; }
  void push(Vertex) {}
  void pop(Vertex) {}
};

struct DistinctVertices {
  std::vector<std::uint8_t> used;
  void reset(std::size_t n) { used.assign(n, 0); }
  bool admit(Vertex v) const { return !used[v]; }
  void push(Vertex v) { used[v] = 1; }
  void pop(Vertex v) { used[v] = 0; }
};

struct DisjointMembers {
  const std::vector<std::vector<Vertex>>* members = nullptr;  // local ids
  std::size_t base_n = 0;
  std::vector<std::uint32_t> load;
  void reset(std::size_t) { load.assign(base_n, 0); }
  bool admit(Vertex v) const {
    for (Vertex b : (*members)[v]) {
      if (load[b]) return false;
    }
    return true;
  }
  void push(Vertex v) { for (Vertex b : (*members)[v]) ++load[b]; }
  void pop(Vertex v) { for (Vertex b : (*members)[v]) --load[b]; }
};

struct VertexPredicateCheck {
  const VertexRelation* rel = nullptr;
  const std::vector<Vertex>* parent = nullptr;
  std::vector<Vertex> stack;
  void reset(std::size_t) { stack.clear(); }
  bool admit(Vertex v) const {
    const Vertex pv = (*parent)[v];
    for (Vertex s : stack) {
      if (rel->related(s, pv)) return false;
    }
    return true;
  }
  void push(Vertex v) { stack.push_back((*parent)[v]); }
  void pop(Vertex) { stack.pop_back(); }
};

struct NoEdgeCheck {
  void reset(std::size_t) {}
  bool admit(Vertex, Vertex, EdgeId) const { return true; }
  void push(Vertex, Vertex, EdgeId) {}
  void pop() {}
};

struct DistinctColours {
  const std::vector<std::uint32_t>* colour = nullptr;  // dense index per local edge
  std::size_t palette = 0;
  std::vector<std::uint8_t> used;
  std::vector<std::uint32_t> stack;
  void reset(std::size_t) { used.assign(palette, 0); stack.clear(); }
  bool admit(Vertex, Vertex, EdgeId id) const { return !used[(*colour)[id]]; }
  void push(Vertex, Vertex, EdgeId id) {
    const auto c = (*colour)[id];
    used[c] = 1;
    stack.push_back(c);
  }
  void pop() { used[stack.back()] = 0; stack.pop_back(); }
};

struct EdgePredicateCheck {
  const EdgePairRelation* rel = nullptr;
  const std::vector<Vertex>* parent = nullptr;
  std::vector<Edge> stack;
  void reset(std::size_t) { stack.clear(); }
  bool admit(Vertex a, Vertex b, EdgeId) const {
    const Vertex pa = (*parent)[a], pb = (*parent)[b];
    for (const Edge& e : stack) {
      if (rel->related(e.u, e.v, pa, pb)) return false;
    }
    return true;
  }
  void push(Vertex a, Vertex b, EdgeId) { stack.push_back({(*parent)[a], (*parent)[b]}); }
  void pop() { stack.pop_back(); }
};

/// Both checks must admit the vertex.
template <class A, class B>
struct BothVertexChecks {
  A first;
  B second;
  void reset(std::size_t n) { first.reset(n); second.reset(n); }
  bool admit(Vertex v) const { return first.admit(v) && second.admit(v); }
  void push(Vertex v) { first.push(v); second.push(v); }
  void pop(Vertex v) { first.pop(v); second.pop(v); }
};

struct SourceResult {
  std::uint64_t good = 0;
  std::uint64_t steps = 0;
  std::vector<std::vector<Vertex>> witnesses;
  std::vector<Vertex> first_good;  // parent ids; filled when stopping early
};

/// reach[L][v] != 0 iff some L-edge walk joins v and the source.
inline std::vector<std::vector<std::uint8_t>> reachability(const Graph& h, Vertex source,
                                                           std::size_t len) {
  std::vector<std::vector<std::uint8_t>> reach(len + 1,
                                               std::vector<std::uint8_t>(h.num_vertices(), 0));
  reach[0][source] = 1;
  for (std::size_t l = 1; l <= len; ++l) {
    for (Vertex v = 0; v < h.num_vertices(); ++v) {
      for (Vertex u : h.neighbours(v)) {
        if (reach[l - 1][u]) { reach[l][v] = 1; break; }
      }
    }
  }
  return reach;
}

/// Counts good closed 2k-walks starting at x1, by depth-first search over
/// good prefixes that can still close up.
template <class VP, class EP>
SourceResult good_from_source(const Graph& h, std::size_t k, Vertex x1, VP vp, EP ep,
                              std::atomic<std::uint64_t>& steps, std::uint64_t budget,
                              std::size_t max_witnesses, const std::vector<Vertex>& parent,
                              bool stop_at_good = false) {
  SourceResult res;
  const std::size_t len = 2 * k;
  const auto reach = reachability(h, x1, len);
  if (!reach[len][x1]) return res;
  vp.reset(h.num_vertices());
  ep.reset(h.num_vertices());
  std::vector<Vertex> walk(len);
  std::vector<std::size_t> cursor(len, 0);
  walk[0] = x1;
  vp.push(x1);
  std::uint64_t local_steps = 0;

  auto record_bad = [&](std::size_t depth, Vertex v) {
    if (res.witnesses.size() >= max_witnesses) return;
    std::vector<Vertex> w(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(depth));
    w.push_back(v);
    Vertex cur = v;
    for (std::size_t d = depth + 1; d < len; ++d) {
      for (Vertex u : h.neighbours(cur)) {
        if (reach[len - d][u]) { cur = u; break; }
      }
      w.push_back(cur);
    }
    for (auto& x : w) x = parent[x];
    res.witnesses.push_back(std::move(w));
  };

  std::size_t depth = 1;
  while (depth >= 1) {
    const Vertex prev = walk[depth - 1];
    const auto nb = h.neighbours(prev);
    const auto ids = h.incident_edges(prev);
    bool descended = false;
    while (cursor[depth] < nb.size()) {
      const std::size_t idx = cursor[depth]++;
      const Vertex v = nb[idx];
      if (!reach[len - depth][v]) continue;
      if (++local_steps == 4096) {
        if (steps.fetch_add(local_steps) + local_steps > budget) {
          throw BudgetExceeded("enumerate_bad_cycles: step budget exhausted");
        }
        local_steps = 0;
      }
      const EdgeId id = ids[idx];
      if (!vp.admit(v) || !ep.admit(prev, v, id)) {
        record_bad(depth, v);
        continue;
      }
      if (depth + 1 == len) {
        ep.push(prev, v, id);
        const EdgeId close = *h.edge_id(v, x1);
        if (ep.admit(v, x1, close)) {
          ++res.good;
          if (stop_at_good) {
            res.first_good.assign(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(depth));
            res.first_good.push_back(v);
            for (auto& x : res.first_good) x = parent[x];
            steps.fetch_add(local_steps);
            return res;
          }
        } else if (res.witnesses.size() < max_witnesses) {
          std::vector<Vertex> w(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(depth));
          w.push_back(v);
          for (auto& x : w) x = parent[x];
          res.witnesses.push_back(std::move(w));
        }
        ep.pop();
        continue;
      }
      vp.push(v);
      ep.push(prev, v, id);
      walk[depth] = v;
      cursor[depth + 1] = 0;
      ++depth;
      descended = true;
      break;
    }
    if (descended) continue;
    // Exhausted this level: retract.
    --depth;
    if (depth >= 1) {
      vp.pop(walk[depth]);
      ep.pop();
    }
  }
  if (steps.fetch_add(local_steps) + local_steps > budget) {
    throw BudgetExceeded("enumerate_bad_cycles: step budget exhausted");
  }
  return res;
}

/// The graph actually enumerated, with relations translated to local ids.
struct Instance {
  Graph h;
  std::vector<Vertex> parent;
  std::vector<std::vector<Vertex>> members;   // for set-intersection
  std::vector<std::uint32_t> colour_index;    // for same-colour
  std::size_t palette = 0;
};

inline Instance make_instance(const Graph& g, const Conflicts& conf,
                              const BipartitePartition* part) {
  Instance ins;
  if (part) {
    auto sub = bipartite_subgraph(g, *part);
    ins.h = std::move(sub.graph);
    ins.parent = std::move(sub.to_parent);
  } else {
    ins.h = g;
    ins.parent.resize(g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v) ins.parent[v] = v;
  }
  if (conf.vertex && conf.vertex->kind() == VertexRelation::Kind::kSetIntersection) {
    if (conf.vertex->members().size() != g.num_vertices()) {
      throw PreconditionError("set-intersection relation does not match the graph");
    }
    for (Vertex v : ins.parent) ins.members.push_back(conf.vertex->members()[v]);
  }
  if (conf.edge && conf.edge->kind() == EdgePairRelation::Kind::kSameColour) {
    std::unordered_map<Colour, std::uint32_t> dense;
    ins.colour_index.resize(ins.h.num_edges());
    for (EdgeId id = 0; id < ins.h.num_edges(); ++id) {
      const Edge& e = ins.h.edges()[id];
      const Colour c = conf.edge->colouring().at(ins.parent[e.u], ins.parent[e.v]);
      auto [it, fresh] = dense.try_emplace(c, static_cast<std::uint32_t>(dense.size()));
      ins.colour_index[id] = it->second;
    }
    ins.palette = dense.size();
  }
  return ins;
}

template <class VP, class EP>
void run_sources(const Instance& ins, std::size_t k, const VP& vp, const EP& ep,
                 const EnumerationOptions& opts, BadCycleCount& out) {
  const std::size_t n = ins.h.num_vertices();
  std::vector<SourceResult> per(n);
  std::atomic<std::uint64_t> steps{0};
  const unsigned threads = std::max(1u, opts.threads);
  if (threads == 1 || n < 2) {
    for (Vertex x = 0; x < n; ++x) {
      per[x] = good_from_source(ins.h, k, x, vp, ep, steps, opts.budget,
                                opts.max_witnesses, ins.parent);
    }
  } else {
    std::atomic<Vertex> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          const Vertex x = next.fetch_add(1);
          if (x >= n) return;
          try {
            per[x] = good_from_source(ins.h, k, x, vp, ep, steps, opts.budget,
                                      opts.max_witnesses, ins.parent);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(static_cast<Vertex>(n));
            return;
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }
  out.good = 0;
  for (auto& r : per) {
    out.good += r.good;
    for (auto& w : r.witnesses) {
      if (out.witnesses.size() >= opts.max_witnesses) break;
      out.witnesses.push_back(std::move(w));
    }
  }
  out.steps = steps.load();
}

/// Calls f(vertex_check, edge_check) with the policies matching `conf`.
/// With `distinct`, repeated vertices are rejected as well.
template <class F>
void with_policies(const Instance& ins, const Conflicts& conf, bool distinct, F&& f) {
  auto edge = [&](auto vp) {
    if (!conf.edge || conf.edge->kind() == EdgePairRelation::Kind::kEmpty) {
      f(vp, NoEdgeCheck{});
    } else if (conf.edge->kind() == EdgePairRelation::Kind::kSameColour) {
      DistinctColours ep;
      ep.colour = &ins.colour_index;
      ep.palette = ins.palette;
      f(vp, ep);
    } else {
      EdgePredicateCheck ep;
      ep.rel = &*conf.edge;
      ep.parent = &ins.parent;
      f(vp, ep);
    }
  };
  auto vertex = [&](auto vp) {
    if (distinct) {
      edge(BothVertexChecks<DistinctVertices, decltype(vp)>{{}, vp});
    } else {
      edge(vp);
    }
  };
  if (!conf.vertex || conf.vertex->kind() == VertexRelation::Kind::kEmpty) {
    if (distinct) {
      edge(DistinctVertices{});
    } else {
      edge(NoVertexCheck{});
    }
  } else if (conf.vertex->kind() == VertexRelation::Kind::kEquality) {
    edge(DistinctVertices{});
  } else if (conf.vertex->kind() == VertexRelation::Kind::kSetIntersection) {
    DisjointMembers vp;
    vp.members = &ins.members;
    vp.base_n = conf.vertex->base_size();
    vertex(vp);
  } else {
    VertexPredicateCheck vp;
    vp.rel = &*conf.vertex;
    vp.parent = &ins.parent;
    vertex(vp);
  }
}

}  // namespace detail

/// Exact number of homomorphic 2k-cycles containing a related vertex pair
/// or a related edge pair at two distinct positions. With `part`, only
/// cycles alternating between the two sides are considered. The count is
/// obtained as (all cycles) - (good cycles); good cycles are enumerated, so
/// the step budget bounds their number.
inline BadCycleCount enumerate_bad_cycles(const Graph& g, std::size_t k,
                                          const Conflicts& conf,
                                          const BipartitePartition* part = nullptr,
                                          const EnumerationOptions& opts = {}) {
  if (k < 2) throw PreconditionError("enumerate_bad_cycles: k < 2");
  const auto ins = detail::make_instance(g, conf, part);
  BadCycleCount out;
  out.total = hom_cycle(ins.h, 2 * k);
  detail::with_policies(ins, conf, false, [&](const auto& vp, const auto& ep) {
    detail::run_sources(ins, k, vp, ep, opts, out);
  });
  out.count = out.total - BigCount(out.good);
  return out;
}

namespace detail {

/// Rounds a positive long double up by a relative margin far above the
/// accumulated error of the log-space evaluation.
inline long double round_up(long double log2_value) {
  if (std::isinf(log2_value) && log2_value < 0) return 0.0L;
  const long double v = std::exp2(log2_value);
  return std::nextafter(v * (1.0L + 1e-15L), std::numeric_limits<long double>::infinity());
}

}  // namespace detail

/// 32 k^{3/2} s^{1/2} Δ^{1/2} n^{1/(2k)} hom^{1-1/(2k)}, from precomputed values.
inline long double bound_simple(std::size_t n, std::size_t delta, std::size_t k,
                                std::size_t s, const BigCount& hom) {
  if (k < 2) throw PreconditionError("bound_simple: k < 2");
  if (hom == 0 || s == 0 || delta == 0 || n == 0) return 0.0L;
  const long double kk = static_cast<long double>(k);
  const long double lg = 5.0L + 1.5L * std::log2(kk) +
                         0.5L * std::log2(static_cast<long double>(s)) +
                         0.5L * std::log2(static_cast<long double>(delta)) +
                         std::log2(static_cast<long double>(n)) / (2.0L * kk) +
                         (1.0L - 1.0L / (2.0L * kk)) * log2_of(hom);
  return detail::round_up(lg);
}

inline long double bound_simple(const Graph& g, std::size_t k, std::size_t s) {
  return bound_simple(g.num_vertices(), g.max_degree(), k, s, hom_cycle(g, 2 * k));
}

/// 32 k^{3/2} M^{1/2} hom(C_{2l})^{1/(2(k-l))} hom(C_{2k})^{1-1/(2(k-l))}.
inline long double bound_bipartite(const std::vector<BigCount>& homs, std::size_t k,
                                   const BipartiteConflictParams& p) {
  p.validate(k);
  if (homs.size() <= k) throw PreconditionError("bound_bipartite: missing hom counts");
  const std::size_t m = p.M();
  if (m == 0 || homs[k] == 0 || homs[p.ell] == 0) return 0.0L;
  const long double kk = static_cast<long double>(k);
  const long double span = 2.0L * static_cast<long double>(k - p.ell);
  const long double lg = 5.0L + 1.5L * std::log2(kk) +
                         0.5L * std::log2(static_cast<long double>(m)) +
                         log2_of(homs[p.ell]) / span +
                         (1.0L - 1.0L / span) * log2_of(homs[k]);
  return detail::round_up(lg);
}

inline long double bound_bipartite(const Graph& g, std::size_t k,
                                   const BipartiteConflictParams& p) {
  return bound_bipartite(hom_cycles(g, k), k, p);
}

/// 32k (k M hom(C_{2k-2}) hom(C_{2k}))^{1/2}.
inline long double bound_most_general(const std::vector<BigCount>& homs, std::size_t k,
                                      std::size_t M) {
  if (k < 2) throw PreconditionError("bound_most_general: k < 2");
  if (homs.size() <= k) throw PreconditionError("bound_most_general: missing hom counts");
  if (M == 0 || homs[k] == 0 || homs[k - 1] == 0) return 0.0L;
  const long double kk = static_cast<long double>(k);
  const long double lg = 5.0L + std::log2(kk) +
                         0.5L * (std::log2(kk) + std::log2(static_cast<long double>(M)) +
                                 log2_of(homs[k - 1]) + log2_of(homs[k]));
  return detail::round_up(lg);
}

inline long double bound_most_general(const Graph& g, std::size_t k, std::size_t M) {
  return bound_most_general(hom_cycles(g, k), k, M);
}

struct KeyLemmaCertificate {
  BigCount bad = 0;
  BigCount total = 0;
  long double bound = 0;
  std::size_t s_vertex = 0;
  std::size_t s_edge = 0;
  bool sparsity_ok = true;  // claimed sparsities (if any) were honoured
  bool passed = false;      // bad <= bound
  long double margin = 0;   // bound - bad
  std::uint64_t steps = 0;
  std::optional<BipartiteConflictParams> vertex_params;
  std::optional<BipartiteConflictParams> edge_params;
};

struct KeyLemmaOptions {
  EnumerationOptions enumeration;
  std::size_t ell = 0;  // interpolation index for the two-sided form
};

/// Counts bad cycles and compares with the lemma bound for each supplied
/// relation (summed when both are present). Sparsities are measured. With a
/// partition the lemma is applied to the crossing subgraph with measured
/// side degrees.
inline KeyLemmaCertificate check_key_lemma(const Graph& g, std::size_t k,
                                           const Conflicts& conf,
                                           const BipartitePartition* part = nullptr,
                                           const KeyLemmaOptions& opts = {}) {
  KeyLemmaCertificate cert;
  const auto counted = enumerate_bad_cycles(g, k, conf, part, opts.enumeration);
  cert.bad = counted.count;
  cert.total = counted.total;
  cert.steps = counted.steps;
  if (!part) {
    const auto homs = hom_cycles(g, k);
    const std::size_t n = g.num_vertices();
    const std::size_t delta = g.max_degree();
    if (conf.vertex) {
      const auto rep = verify_sparsity(g, *conf.vertex);
      cert.s_vertex = rep.measured;
      cert.sparsity_ok = cert.sparsity_ok && rep.passed;
      cert.bound += bound_simple(n, delta, k, rep.measured, homs[k]);
    }
    if (conf.edge) {
      const auto rep = verify_sparsity(g, *conf.edge);
      cert.s_edge = rep.measured;
      cert.sparsity_ok = cert.sparsity_ok && rep.passed;
      cert.bound += bound_simple(n, delta, k, rep.measured, homs[k]);
    }
  } else {
    auto sub = bipartite_subgraph(g, *part);
    const auto homs = hom_cycles(sub.graph, k);
    const auto local = sub.from_parent(g.num_vertices());
    BipartitePartition lp;
    for (Vertex v : part->left) lp.left.push_back(local[v]);
    for (Vertex v : part->right) lp.right.push_back(local[v]);
    if (conf.vertex) {
      const VertexRelation& rel = *conf.vertex;
      const auto& map = sub.to_parent;
      const auto lifted = VertexRelation::custom(
          [&rel, &map](Vertex a, Vertex b) { return rel.related(map[a], map[b]); });
      auto p = measure_bipartite_params(sub.graph, lp, &lifted, nullptr);
      p.ell = opts.ell;
      cert.s_vertex = std::max(p.s1, p.s2);
      cert.vertex_params = p;
      if (rel.claimed_s && cert.s_vertex > *rel.claimed_s) cert.sparsity_ok = false;
      cert.bound += bound_bipartite(homs, k, p);
    }
    if (conf.edge) {
      const EdgePairRelation& rel = *conf.edge;
      const auto& map = sub.to_parent;
      const auto lifted = EdgePairRelation::custom(
          [&rel, &map](Vertex a, Vertex b, Vertex c, Vertex d) {
            return rel.related(map[a], map[b], map[c], map[d]);
          });
      auto p = measure_bipartite_params(sub.graph, lp, nullptr, &lifted);
      p.ell = opts.ell;
      cert.s_edge = std::max(p.s1, p.s2);
      cert.edge_params = p;
      if (rel.claimed_s && cert.s_edge > *rel.claimed_s) cert.sparsity_ok = false;
      cert.bound += bound_bipartite(homs, k, p);
    }
  }
  cert.passed = count_le_bound(cert.bad, cert.bound);
  cert.margin = margin_of(cert.bound, cert.bad);
  return cert;
}

/// Dyadic bucketing of walk counts between endpoint pairs.
struct DyadicProfile {
  std::size_t k = 0;
  std::vector<BigCount> alpha;  // alpha[r], r >= 1: (k-1)-walks in bucket r
  std::vector<BigCount> beta;   // beta[r]: k-walks in bucket r
  BigCount hom_prev = 0;        // hom(C_{2k-2})
  BigCount hom_cur = 0;         // hom(C_{2k})
  bool alpha_ok = false;        // sum alpha_r 2^{r-1} <= hom(C_{2k-2})
  bool beta_ok = false;         // sum beta_r 2^{r-1} <= hom(C_{2k})
  std::size_t delta = 0;
  std::size_t s = 1;
  std::optional<long> q;        // least q with 4^q Δ hom(C_{2k-2}) >= k s hom(C_{2k})
};

namespace detail {

/// Bucket r >= 1 with 2^{r-1} <= w < 2^r; 0 for w = 0.
inline std::size_t bucket_of(const BigCount& w) {
  if (w == 0) return 0;
  return boost::multiprecision::msb(w) + 1;
}

inline void add_bucketed(std::vector<BigCount>& buckets, const BigCount& w) {
  const std::size_t r = bucket_of(w);
  if (r == 0) return;
  if (buckets.size() <= r) buckets.resize(r + 1, BigCount(0));
  buckets[r] += w;
}

inline BigCount weighted_sum(const std::vector<BigCount>& buckets) {
  BigCount total = 0;
  for (std::size_t r = 1; r < buckets.size(); ++r) total += buckets[r] << (r - 1);
  return total;
}

}  // namespace detail

inline DyadicProfile dyadic_profile(const Graph& g, std::size_t k, std::size_t s = 1) {
  if (k < 2) throw PreconditionError("dyadic_profile: k < 2");
  if (g.num_vertices() > kWalkTableMaxN) throw GuardExceeded("dyadic_profile: n too large");
  DyadicProfile p;
  p.k = k;
  p.s = s;
  p.delta = g.max_degree();
  p.alpha.assign(1, BigCount(0));
  p.beta.assign(1, BigCount(0));
  for (Vertex y = 0; y < g.num_vertices(); ++y) {
    const auto prev = walk_row(g, y, k - 1);
    const auto cur = walk_row(g, y, k);
    for (Vertex z = 0; z < g.num_vertices(); ++z) {
      detail::add_bucketed(p.alpha, prev[z]);
      detail::add_bucketed(p.beta, cur[z]);
    }
  }
  const auto homs = hom_cycles(g, k);
  p.hom_prev = homs[k - 1];
  p.hom_cur = homs[k];
  p.alpha_ok = detail::weighted_sum(p.alpha) <= p.hom_prev;
  p.beta_ok = detail::weighted_sum(p.beta) <= p.hom_cur;
  if (p.delta > 0 && p.hom_prev > 0 && p.hom_cur > 0 && s > 0) {
    const BigCount have = BigCount(p.delta) * p.hom_prev;
    const BigCount need = BigCount(k) * BigCount(s) * p.hom_cur;
    long q = 0;
    if (have >= need) {
      while (have >= (need << (2 * static_cast<unsigned>(1 - q)))) --q;
    } else {
      while ((have << (2 * static_cast<unsigned>(q))) < need) ++q;
    }
    p.q = q;
  }
  return p;
}

/// gamma[(r, t)]: closed 2k-walks (x_1..x_{2k}) with hom_{x_1,x_{k+2}}(P_{k-1})
/// in bucket r, hom_{x_2,x_{k+2}}(P_k) in bucket t, and (x_1,x_2) related to
/// (x_i,x_{i+1}) for some 2 <= i <= k+1. Brute force over all closed walks.
struct DyadicGamma {
  std::map<std::pair<std::size_t, std::size_t>, BigCount> gamma;
  std::uint64_t steps = 0;
};

inline DyadicGamma dyadic_gamma(const Graph& g, std::size_t k, const Conflicts& conf,
                                std::uint64_t budget = 1'000'000'000) {
  if (k < 2) throw PreconditionError("dyadic_gamma: k < 2");
  const std::size_t n = g.num_vertices();
  const auto prev_table = walk_table(g, k - 1);
  const auto cur_table = walk_table(g, k);
  const std::size_t len = 2 * k;
  DyadicGamma out;
  std::vector<Vertex> w(len);
  auto related_pair = [&](Vertex a, Vertex b, Vertex c, Vertex d) {
    if (conf.vertex && conf.vertex->related(a, c)) return true;
    if (conf.edge && conf.edge->related(a, b, c, d)) return true;
    return false;
  };
  // Iterative enumeration of all closed walks.
  std::vector<std::size_t> cursor(len + 1, 0);
  for (Vertex x1 = 0; x1 < n; ++x1) {
    w[0] = x1;
    std::size_t depth = 1;
    cursor[1] = 0;
    while (depth >= 1) {
      const auto nb = g.neighbours(w[depth - 1]);
      if (cursor[depth] >= nb.size()) { --depth; continue; }
      const Vertex v = nb[cursor[depth]++];
      if (++out.steps > budget) throw BudgetExceeded("dyadic_gamma: step budget exhausted");
      if (depth + 1 < len) {
        w[depth] = v;
        ++depth;
        cursor[depth] = 0;
        continue;
      }
      if (!g.has_edge(v, x1)) continue;
      w[depth] = v;
      bool bad = false;
      for (std::size_t i = 1; i <= k && !bad; ++i) {
        bad = related_pair(w[0], w[1], w[i], w[(i + 1) % len]);
      }
      if (!bad) continue;
      const std::size_t r = detail::bucket_of(prev_table.at(w[0], w[k + 1]));
      const std::size_t t = detail::bucket_of(cur_table.at(w[1], w[k + 1]));
      out.gamma[{r, t}] += 1;
    }
  }
  return out;
}

struct DyadicClaimsReport {
  bool claim1 = true;  // gamma_{r,t} <= alpha_r Δ 2^t
  bool claim2 = true;  // gamma_{r,t} <= beta_t k s 2^r
  bool total_ok = true;  // sum gamma <= 8 (k s Δ hom(C_{2k-2}) hom(C_{2k}))^{1/2}
  BigCount gamma_total = 0;
  std::size_t s = 0;
  DyadicProfile profile;
};

/// Measures the pair-relation sparsity s of `conf` (one relation) and checks
/// both per-bucket claims and the summed estimate.
inline DyadicClaimsReport check_dyadic_claims(const Graph& g, std::size_t k,
                                              const Conflicts& conf,
                                              std::uint64_t budget = 1'000'000'000) {
  DyadicClaimsReport rep;
  std::size_t s = 0;
  if (conf.vertex) s = std::max(s, verify_sparsity(g, *conf.vertex).measured);
  if (conf.edge) s = std::max(s, verify_sparsity(g, *conf.edge).measured);
  if (conf.vertex && conf.edge) {
    // Union of the two relations: caps add.
    s = verify_sparsity(g, *conf.vertex).measured + verify_sparsity(g, *conf.edge).measured;
  }
  rep.s = s;
  rep.profile = dyadic_profile(g, k, std::max<std::size_t>(s, 1));
  const auto gam = dyadic_gamma(g, k, conf, budget);
  const BigCount delta = rep.profile.delta;
  for (const auto& [rt, count] : gam.gamma) {
    const auto [r, t] = rt;
    rep.gamma_total += count;
    const BigCount a = r < rep.profile.alpha.size() ? rep.profile.alpha[r] : BigCount(0);
    const BigCount b = t < rep.profile.beta.size() ? rep.profile.beta[t] : BigCount(0);
    if (count > ((a * delta) << t)) rep.claim1 = false;
    if (count > ((b * BigCount(k) * BigCount(s)) << r)) rep.claim2 = false;
  }
  // (sum)^2 <= 64 k s Δ hom' hom, exact.
  const BigCount rhs = BigCount(64) * BigCount(k) * BigCount(s) * delta *
                       rep.profile.hom_prev * rep.profile.hom_cur;
  rep.total_ok = rep.gamma_total * rep.gamma_total <= rhs;
  return rep;
}

}  // namespace rainbow
