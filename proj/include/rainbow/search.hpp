#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <variant>
#include <vector>

#include "rainbow/bigcount.hpp"
#include "rainbow/colouring.hpp"
#include "rainbow/conflict.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/extract.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/homcount.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

namespace detail {

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) { return rng.below(bound); }

/// Uniform integer in [0, bound) by rejection over whole 64-bit limbs.
inline BigCount uniform_below(Rng& rng, const BigCount& bound) {
  if (bound <= 0) throw PreconditionError("uniform_below: empty range");
  const std::size_t bits = boost::multiprecision::msb(bound) + 1;
  const std::size_t limbs = (bits + 63) / 64;
  const std::size_t spare = limbs * 64 - bits;
  while (true) {
    BigCount x = 0;
    for (std::size_t i = 0; i < limbs; ++i) x = (x << 64) | BigCount(rng.next());
    x >>= spare;
    if (x < bound) return x;
  }
}

/// Closed-walk sampler over one weight type. Rows are W^L[source][.] for
/// L = 0..2k, computed on first use per source.
template <class T>
class BasicCycleSampler {
 public:
  BasicCycleSampler(const Graph& g, std::size_t k) : g_(g), k_(k), diag_(g.num_vertices(), 0) {
    for (Vertex x = 0; x < g.num_vertices(); ++x) {
      if (g.degree(x) == 0) continue;
      const auto& r = rows(x);
      T acc = 0;
      for (Vertex y = 0; y < g.num_vertices(); ++y) {
        if (r[k][y] != 0) acc = checked_add(acc, checked_mul(r[k][y], r[k][y]));
      }
      diag_[x] = acc;
      total_ = checked_add(total_, acc);
    }
  }

  BigCount total() const { return BigCount(total_); }

  std::vector<Vertex> sample(Rng& rng) {
    const std::size_t len = 2 * k_;
    std::vector<Vertex> w(len);
    w[0] = pick_vertex(rng, diag_, total_);
    const auto& back = rows(w[0]);
    for (std::size_t i = 1; i < len; ++i) w[i] = step(rng, w[i - 1], back[len - i]);
    return w;
  }

  T anchored_mass(Vertex a, Vertex b) {
    const T& p = rows(a)[k_][b];
    return checked_mul(p, p);
  }

  std::pair<Vertex, Vertex> sample_anchor(Rng& rng) {
    const Vertex a = pick_vertex(rng, diag_, total_);
    const auto& r = rows(a);
    std::vector<T> w(g_.num_vertices());
    for (Vertex b = 0; b < g_.num_vertices(); ++b) w[b] = checked_mul(r[k_][b], r[k_][b]);
    return {a, pick_vertex(rng, w, diag_[a])};
  }

  /// Uniform k-edge walk from a to b; k+1 vertices.
  std::vector<Vertex> sample_path(Vertex a, Vertex b, Rng& rng) {
    if (rows(a)[k_][b] == 0) throw PreconditionError("sample_path: no walk between anchors");
    std::vector<Vertex> p(k_ + 1);
    p[0] = a;
    const auto& to_b = rows(b);
    for (std::size_t i = 1; i < k_; ++i) p[i] = step(rng, p[i - 1], to_b[k_ - i]);
    p[k_] = b;
    return p;
  }

  std::vector<Vertex> sample_anchored(Vertex a, Vertex b, Rng& rng) {
    auto first = sample_path(a, b, rng);
    auto second = sample_path(b, a, rng);
    first.insert(first.end(), second.begin() + 1, second.end() - 1);
    return first;
  }

 private:
  const std::vector<std::vector<T>>& rows(Vertex x) {
    auto it = cache_.find(x);
    if (it == cache_.end()) it = cache_.emplace(x, walk_rows<T>(g_, x, 2 * k_)).first;
    return it->second;
  }

  Vertex pick_vertex(Rng& rng, const std::vector<T>& weight, const T& total) {
    T r = uniform_below(rng, total);
    for (Vertex v = 0; v < weight.size(); ++v) {
      if (r < weight[v]) return v;
      r -= weight[v];
    }
    throw std::logic_error("sampler weights inconsistent");
  }

  Vertex step(Rng& rng, Vertex cur, const std::vector<T>& weight) {
    T total = 0;
    for (Vertex v : g_.neighbours(cur)) total = checked_add(total, weight[v]);
    T r = uniform_below(rng, total);
    for (Vertex v : g_.neighbours(cur)) {
      if (r < weight[v]) return v;
      r -= weight[v];
    }
    throw std::logic_error("sampler weights inconsistent");
  }

  Graph g_;
  std::size_t k_;
  std::vector<T> diag_;
  T total_ = 0;
  std::unordered_map<Vertex, std::vector<std::vector<T>>> cache_;
};

}  // namespace detail

/// Exactly uniform homomorphic 2k-cycles, optionally with x1 and x_{k+1}
/// fixed. Uses 64-bit weights when hom(C_2k) fits, exact big integers
/// otherwise.
class CycleSampler {
 public:
  CycleSampler(const Graph& g, std::size_t k) : k_(k) {
    if (k < 1) throw PreconditionError("CycleSampler: k >= 1 required");
    try {
      impl_.emplace<detail::BasicCycleSampler<std::uint64_t>>(g, k);
    } catch (const Overflow&) {
      impl_.emplace<detail::BasicCycleSampler<BigCount>>(g, k);
    }
    if (total() == 0) throw PreconditionError("CycleSampler: graph has no homomorphic 2k-cycle");
  }

  std::size_t k() const noexcept { return k_; }
  BigCount total() const {
    return visit<BigCount>([](auto& s) { return s.total(); });
  }
  std::vector<Vertex> sample(Rng& rng) {
    return visit<std::vector<Vertex>>([&](auto& s) { return s.sample(rng); });
  }
  std::pair<Vertex, Vertex> sample_anchor(Rng& rng) {
    return visit<std::pair<Vertex, Vertex>>([&](auto& s) { return s.sample_anchor(rng); });
  }
  std::vector<Vertex> sample_path(Vertex a, Vertex b, Rng& rng) {
    return visit<std::vector<Vertex>>([&](auto& s) { return s.sample_path(a, b, rng); });
  }
  std::vector<Vertex> sample_anchored(Vertex a, Vertex b, Rng& rng) {
    return visit<std::vector<Vertex>>([&](auto& s) { return s.sample_anchored(a, b, rng); });
  }
  BigCount anchored_mass(Vertex a, Vertex b) {
    return visit<BigCount>([&](auto& s) { return BigCount(s.anchored_mass(a, b)); });
  }

 private:
  template <class R, class F>
  R visit(F&& f) const {
    if (auto* p = std::get_if<1>(&impl_)) return R(f(*p));
    return R(f(std::get<2>(impl_)));
  }
  template <class R, class F>
  R visit(F&& f) {
    if (auto* p = std::get_if<1>(&impl_)) return R(f(*p));
    return R(f(std::get<2>(impl_)));
  }

  std::size_t k_;
  std::variant<std::monostate, detail::BasicCycleSampler<std::uint64_t>,
               detail::BasicCycleSampler<BigCount>>
      impl_;
};

/// One uniformly random homomorphic 2k-cycle; with `anchor`, uniform among
/// those with x1 = anchor->first and x_{k+1} = anchor->second.
inline std::vector<Vertex> sample_homomorphic_cycle(
    const Graph& g, std::size_t k, std::uint64_t seed,
    std::optional<std::pair<Vertex, Vertex>> anchor = std::nullopt) {
  CycleSampler sampler(g, k);
  Rng rng(seed);
  if (anchor) {
    if (anchor->first >= g.num_vertices() || anchor->second >= g.num_vertices()) {
      throw PreconditionError("sample_homomorphic_cycle: anchor out of range");
    }
    return sampler.sample_anchored(anchor->first, anchor->second, rng);
  }
  return sampler.sample(rng);
}

/// Rotation starting at the least vertex, read in the direction whose
/// second vertex is smaller.
inline std::vector<Vertex> canonical_cycle(std::vector<Vertex> w) {
  if (w.size() < 3) return w;
  const auto it = std::min_element(w.begin(), w.end());
  std::rotate(w.begin(), it, w.end());
  if (w.back() < w[1]) std::reverse(w.begin() + 1, w.end());
  return w;
}

// Validators. They read only the graph, colouring and relations passed in.

/// Distinct vertices, consecutive (cyclically) pairs adjacent, length >= 3.
inline bool is_cycle(const Graph& g, const std::vector<Vertex>& w) {
  if (w.size() < 3) return false;
  std::set<Vertex> seen;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] >= g.num_vertices() || !seen.insert(w[i]).second) return false;
    if (!g.has_edge(w[i], w[(i + 1) % w.size()])) return false;
  }
  return true;
}

inline bool is_rainbow_cycle(const Graph& g, const EdgeColouring& c, const std::vector<Vertex>& w) {
  if (!is_cycle(g, w)) return false;
  std::set<Colour> colours;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto col = c.find(w[i], w[(i + 1) % w.size()]);
    if (!col || !colours.insert(*col).second) return false;
  }
  return true;
}

/// No related vertex pair and no related edge pair at distinct positions.
inline bool is_conflict_free(const std::vector<Vertex>& w, const Conflicts& conf) {
  const std::size_t len = w.size();
  for (std::size_t i = 0; i < len; ++i)
    for (std::size_t j = 0; j < len; ++j) {
      if (i == j) continue;
      if (conf.vertex && conf.vertex->related(w[i], w[j])) return false;
      if (conf.edge && conf.edge->related(w[i], w[(i + 1) % len], w[j], w[(j + 1) % len])) {
        return false;
      }
    }
  return true;
}

enum class Outcome { kFound, kAbsent, kInconclusive };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::kFound: return "found";
    case Outcome::kAbsent: return "absent";
    case Outcome::kInconclusive: return "inconclusive";
  }
  return "?";
}

struct SearchOptions {
  /// Randomized phase, in extension steps (one draw of a 2k-cycle costs 2k).
  std::uint64_t budget = 1'000'000;
  std::uint64_t seed = 0;
  /// Exact phase runs only when the searched graph has at most this many
  /// vertices.
  std::size_t exact_max_n = 64;
  std::uint64_t exact_budget = 1'000'000'000;
  /// Independent sampling chains; chain i uses derive_seed(seed, i) and
  /// budget / chains steps. The lowest-index success wins.
  std::size_t chains = 1;
  unsigned threads = 1;
  /// Average-degree guard for the extraction in find_rainbow_even_cycle.
  double min_average_degree = 64;
};

struct CycleSearch {
  Outcome outcome = Outcome::kInconclusive;
  std::vector<Vertex> witness;  // canonical form
  std::string phase;            // "random", "exact", "trivial" or "none"
  std::uint64_t draws = 0;
  std::uint64_t steps = 0;
  std::uint64_t exact_steps = 0;
};

namespace detail {

struct ChainResult {
  std::optional<std::vector<Vertex>> found;
  std::uint64_t draws = 0;
  std::uint64_t steps = 0;
  std::size_t chain = 0;
};

/// Runs chains 0..chains-1 and returns the lowest-index success together
/// with the statistics of chains up to it. Independent of `threads`.
inline ChainResult run_chains(std::size_t chains, unsigned threads,
                              const std::function<ChainResult(std::size_t, const std::atomic<std::size_t>&)>& run) {
  chains = std::max<std::size_t>(chains, 1);
  std::vector<ChainResult> per(chains);
  std::atomic<std::size_t> winner{chains};
  if (threads <= 1 || chains == 1) {
    for (std::size_t i = 0; i < chains; ++i) {
      per[i] = run(i, winner);
      if (per[i].found) {
        winner = i;
        break;
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= chains || i > winner.load()) return;
          per[i] = run(i, winner);
          if (per[i].found) {
            std::size_t cur = winner.load();
            while (i < cur && !winner.compare_exchange_weak(cur, i)) {
            }
          }
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  ChainResult out;
  const std::size_t last = std::min(winner.load(), chains - 1);
  for (std::size_t i = 0; i <= last; ++i) {
    out.draws += per[i].draws;
    out.steps += per[i].steps;
  }
  if (winner.load() < chains) {
    out.found = per[winner.load()].found;
    out.chain = winner.load();
  }
  return out;
}

inline bool walk_is_good(const std::vector<Vertex>& w, const Conflicts& conf) {
  std::vector<Vertex> sorted = w;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  return is_conflict_free(w, conf);
}

}  // namespace detail

/// Searches for a 2k-cycle with distinct vertices and no related vertex or
/// edge pair. Randomized sampling first; then, for graphs within
/// exact_max_n, depth-first enumeration whose failure certifies absence.
inline CycleSearch find_good_2k_cycle(const Graph& g, std::size_t k, const Conflicts& conf,
                                      const SearchOptions& opts = {}) {
  if (k < 2) throw PreconditionError("find_good_2k_cycle: k >= 2 required");
  CycleSearch out;
  if (hom_cycle(g, 2 * k) == 0) {
    out.outcome = Outcome::kAbsent;
    out.phase = "trivial";
    return out;
  }
  {
    CycleSampler proto(g, k);
    const std::size_t chains = std::max<std::size_t>(opts.chains, 1);
    const std::uint64_t per_chain = opts.budget / chains;
    auto res = detail::run_chains(chains, opts.threads,
                                  [&](std::size_t chain, const std::atomic<std::size_t>& winner) {
      detail::ChainResult r;
      CycleSampler sampler = proto;
      Rng rng(derive_seed(opts.seed, chain));
      while (r.steps + 2 * k <= per_chain && chain < winner.load()) {
        auto w = sampler.sample(rng);
        ++r.draws;
        r.steps += 2 * k;
        if (detail::walk_is_good(w, conf)) {
          r.found = std::move(w);
          break;
        }
      }
      return r;
    });
    out.draws = res.draws;
    out.steps = res.steps;
    if (res.found) {
      out.outcome = Outcome::kFound;
      out.phase = "random";
      out.witness = canonical_cycle(std::move(*res.found));
      return out;
    }
  }
  if (g.num_vertices() > opts.exact_max_n) {
    out.phase = "none";
    return out;
  }
  const auto ins = detail::make_instance(g, conf, nullptr);
  std::atomic<std::uint64_t> steps{0};
  try {
    detail::with_policies(ins, conf, true, [&](const auto& vp, const auto& ep) {
      for (Vertex x = 0; x < ins.h.num_vertices() && out.witness.empty(); ++x) {
        auto r = detail::good_from_source(ins.h, k, x, vp, ep, steps, opts.exact_budget, 0,
                                          ins.parent, true);
        if (!r.first_good.empty()) out.witness = std::move(r.first_good);
      }
    });
  } catch (const BudgetExceeded&) {
    out.exact_steps = steps.load();
    out.phase = "exact";
    return out;
  }
  out.exact_steps = steps.load();
  out.phase = "exact";
  if (out.witness.empty()) {
    out.outcome = Outcome::kAbsent;
  } else {
    out.outcome = Outcome::kFound;
    out.witness = canonical_cycle(std::move(out.witness));
  }
  return out;
}

/// Rainbow C_{2k}: good cycle for vertex equality and same-colour edges.
inline CycleSearch find_rainbow_2k_cycle(const Graph& g, const EdgeColouring& c, std::size_t k,
                                         const SearchOptions& opts = {}) {
  if (!validate_proper(g, c).empty()) {
    throw PreconditionError("find_rainbow_2k_cycle: colouring is not proper");
  }
  return find_good_2k_cycle(g, k, {VertexRelation::equality(), EdgePairRelation::same_colour(c)},
                            opts);
}

struct ThetaWitness {
  Vertex a = 0;
  Vertex b = 0;
  std::vector<std::vector<Vertex>> paths;  // each a .. b, k+1 vertices
};

struct ThetaSearch {
  Outcome outcome = Outcome::kInconclusive;
  std::optional<ThetaWitness> witness;
  std::string phase;
  std::uint64_t draws = 0;
  std::uint64_t steps = 0;
  std::uint64_t exact_steps = 0;
};

/// t paths of length k from a to b, internally disjoint, avoiding {a, b}
/// inside, every edge coloured and all colours distinct.
inline bool is_rainbow_theta(const Graph& g, const EdgeColouring& c, const ThetaWitness& th,
                             std::size_t k, std::size_t t) {
  if (th.paths.size() != t || th.a == th.b) return false;
  if (th.a >= g.num_vertices() || th.b >= g.num_vertices()) return false;
  std::set<Vertex> inner;
  std::set<Colour> colours;
  for (const auto& p : th.paths) {
    if (p.size() != k + 1 || p.front() != th.a || p.back() != th.b) return false;
    for (std::size_t i = 1; i < k; ++i) {
      if (p[i] >= g.num_vertices() || p[i] == th.a || p[i] == th.b) return false;
      if (!inner.insert(p[i]).second) return false;
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (!g.has_edge(p[i], p[i + 1])) return false;
      const auto col = c.find(p[i], p[i + 1]);
      if (!col || !colours.insert(*col).second) return false;
    }
  }
  return true;
}

namespace detail {

struct RainbowPath {
  std::vector<Vertex> vertices;
  std::vector<Vertex> inner;   // sorted
  std::vector<Colour> colours; // sorted
};

inline bool sorted_disjoint(const std::vector<Vertex>& x, const std::vector<Vertex>& y) {
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i] == y[j]) return false;
    x[i] < y[j] ? ++i : ++j;
  }
  return true;
}

inline bool compatible(const RainbowPath& p, const RainbowPath& q) {
  return sorted_disjoint(p.inner, q.inner) && sorted_disjoint(p.colours, q.colours);
}

}  // namespace detail

/// Rainbow theta graph: t internally disjoint paths of length k between two
/// anchors. The randomized phase picks anchors in proportion to their
/// anchored cycle mass and draws t anchored walks with replacement; the exact
/// phase (small graphs) searches anchor pairs exhaustively.
inline ThetaSearch find_rainbow_theta(const Graph& g, const EdgeColouring& c, std::size_t k,
                                      std::size_t t, const SearchOptions& opts = {}) {
  if (k < 2 || t < 2) throw PreconditionError("find_rainbow_theta: k, t >= 2 required");
  if (!validate_proper(g, c).empty()) {
    throw PreconditionError("find_rainbow_theta: colouring is not proper");
  }
  ThetaSearch out;
  if (hom_cycle(g, 2 * k) == 0) {
    out.outcome = Outcome::kAbsent;
    out.phase = "trivial";
    return out;
  }
  const Conflicts rainbow{VertexRelation::equality(), EdgePairRelation::same_colour(c)};
  {
    CycleSampler proto(g, k);
    const std::size_t chains = std::max<std::size_t>(opts.chains, 1);
    const std::uint64_t per_chain = opts.budget / chains;
    std::vector<std::optional<ThetaWitness>> found(chains);
    auto res = detail::run_chains(chains, opts.threads,
                                  [&](std::size_t chain, const std::atomic<std::size_t>& winner) {
      detail::ChainResult r;
      CycleSampler sampler = proto;
      Rng rng(derive_seed(opts.seed, chain));
      while (r.steps + t * k <= per_chain && chain < winner.load()) {
        const auto [a, b] = sampler.sample_anchor(rng);
        std::vector<std::vector<Vertex>> paths;
        for (std::size_t i = 0; i < t; ++i) paths.push_back(sampler.sample_path(a, b, rng));
        ++r.draws;
        r.steps += t * k;
        bool good = true;
        for (std::size_t i = 0; i < t && good; ++i)
          for (std::size_t j = i + 1; j < t && good; ++j) {
            std::vector<Vertex> w = paths[i];
            w.insert(w.end(), paths[j].rbegin() + 1, paths[j].rend() - 1);
            good = detail::walk_is_good(w, rainbow);
          }
        if (good) {
          found[chain] = ThetaWitness{a, b, std::move(paths)};
          r.found = std::vector<Vertex>{a, b};
          break;
        }
      }
      return r;
    });
    out.draws = res.draws;
    out.steps = res.steps;
    if (res.found) {
      out.witness = std::move(found[res.chain]);
      out.outcome = Outcome::kFound;
      out.phase = "random";
      return out;
    }
  }
  if (g.num_vertices() > opts.exact_max_n) {
    out.phase = "none";
    return out;
  }
  out.phase = "exact";
  std::uint64_t steps = 0;
  auto spend = [&] {
    if (++steps > opts.exact_budget) throw BudgetExceeded("find_rainbow_theta: exact budget");
  };
  try {
    for (Vertex a = 0; a < g.num_vertices(); ++a)
      for (Vertex b = a + 1; b < g.num_vertices(); ++b) {
        // rainbow simple paths a -> b of length k
        std::vector<detail::RainbowPath> paths;
        std::vector<Vertex> cur{a};
        std::vector<Colour> cols;
        std::function<void()> extend = [&] {
          const Vertex last = cur.back();
          for (Vertex v : g.neighbours(last)) {
            spend();
            const Colour col = c.at(last, v);
            if (std::find(cols.begin(), cols.end(), col) != cols.end()) continue;
            if (cur.size() == k) {
              if (v != b) continue;
              detail::RainbowPath p;
              p.vertices = cur;
              p.vertices.push_back(b);
              p.inner.assign(cur.begin() + 1, cur.end());
              std::sort(p.inner.begin(), p.inner.end());
              p.colours = cols;
              p.colours.push_back(col);
              std::sort(p.colours.begin(), p.colours.end());
              paths.push_back(std::move(p));
              continue;
            }
            if (v == b || std::find(cur.begin(), cur.end(), v) != cur.end()) continue;
            cur.push_back(v);
            cols.push_back(col);
            extend();
            cur.pop_back();
            cols.pop_back();
          }
        };
        extend();
        if (paths.size() < t) continue;
        std::vector<std::size_t> chosen;
        std::function<bool(std::size_t)> pick = [&](std::size_t from) {
          if (chosen.size() == t) return true;
          for (std::size_t i = from; i < paths.size(); ++i) {
            spend();
            bool ok = true;
            for (std::size_t j : chosen) ok = ok && detail::compatible(paths[i], paths[j]);
            if (!ok) continue;
            chosen.push_back(i);
            if (pick(i + 1)) return true;
            chosen.pop_back();
          }
          return false;
        };
        if (pick(0)) {
          ThetaWitness w{a, b, {}};
          for (std::size_t i : chosen) w.paths.push_back(paths[i].vertices);
          out.witness = std::move(w);
          out.outcome = Outcome::kFound;
          out.exact_steps = steps;
          return out;
        }
      }
  } catch (const BudgetExceeded&) {
    out.exact_steps = steps;
    return out;
  }
  out.exact_steps = steps;
  out.outcome = Outcome::kAbsent;
  return out;
}

/// hom(C_2k, G) against 64^{2k} k^{3k} n Delta^k, compared exactly.
struct RainbowThreshold {
  BigCount hom = 0;
  BigCount threshold = 0;
  bool holds = false;
};

inline RainbowThreshold rainbow_cycle_threshold(const BigCount& hom, std::size_t n, std::size_t delta,
                                                std::size_t k) {
  RainbowThreshold t;
  t.hom = hom;
  t.threshold = big_pow(BigCount(64), static_cast<unsigned>(2 * k)) *
                big_pow(BigCount(k), static_cast<unsigned>(3 * k)) * BigCount(n) *
                big_pow(BigCount(delta), static_cast<unsigned>(k));
  t.holds = hom > t.threshold;
  return t;
}

inline RainbowThreshold rainbow_cycle_threshold(const Graph& g, std::size_t k) {
  return rainbow_cycle_threshold(hom_cycle(g, 2 * k), g.num_vertices(), g.max_degree(), k);
}

struct EvenCycleSearch {
  CycleSearch search;
  bool extracted = false;
  std::size_t k = 0;
  std::optional<RainbowThreshold> threshold;
  std::size_t extracted_vertices = 0;
  std::size_t extracted_edges = 0;
};

namespace detail {

/// Depth-first search for a rainbow cycle of even length >= 4; the cycle's
/// least vertex is the start, so each cycle is met from one root only.
inline std::optional<std::vector<Vertex>> rainbow_even_cycle_dfs(const Graph& g, const EdgeColouring& c,
                                                                 std::uint64_t budget,
                                                                 std::uint64_t& steps) {
  const std::size_t n = g.num_vertices();
  std::vector<std::uint8_t> used(n, 0);
  std::set<Colour> colours;
  std::vector<Vertex> path;
  std::optional<std::vector<Vertex>> found;
  std::function<bool()> extend = [&]() -> bool {
    const Vertex last = path.back();
    for (Vertex v : g.neighbours(last)) {
      if (++steps > budget) throw BudgetExceeded("rainbow cycle search: budget exhausted");
      if (v < path[0]) continue;
      const Colour col = c.at(last, v);
      if (colours.count(col)) continue;
      if (v == path[0]) {
        if (path.size() >= 4 && path.size() % 2 == 0) {
          found = path;
          return true;
        }
        continue;
      }
      if (used[v]) continue;
      used[v] = 1;
      colours.insert(col);
      path.push_back(v);
      if (extend()) return true;
      path.pop_back();
      colours.erase(col);
      used[v] = 0;
    }
    return false;
  };
  for (Vertex s = 0; s < n; ++s) {
    path = {s};
    used[s] = 1;
    if (extend()) return found;
    used[s] = 0;
  }
  return std::nullopt;
}

}  // namespace detail

/// Rainbow cycle of some even length. Runs the biregular extraction, takes
/// k = floor(log2 n), and samples for a rainbow C_2k in the extracted graph
/// when hom(C_2k) there exceeds 64^{2k} k^{3k} n'' Delta''^k. Otherwise, or if
/// that fails, g is searched depth-first for any even rainbow cycle, with the
/// exact budget for graphs within exact_max_n and the randomized budget
/// above it.
inline EvenCycleSearch find_rainbow_even_cycle(const Graph& g, const EdgeColouring& c,
                                               const SearchOptions& opts = {}) {
  if (!validate_proper(g, c).empty()) {
    throw PreconditionError("find_rainbow_even_cycle: colouring is not proper");
  }
  EvenCycleSearch out;
  const std::size_t n = g.num_vertices();
  out.k = n >= 2 ? static_cast<std::size_t>(std::bit_width(n) - 1) : 0;
  if (g.num_edges() > 0 && g.average_degree() >= opts.min_average_degree && out.k >= 2) {
    BipartiteStepOptions so;
    so.min_average_degree = opts.min_average_degree;
    const auto ext = bipartite_step2(g, so);
    out.extracted = true;
    out.extracted_vertices = ext.result.graph.num_vertices();
    out.extracted_edges = ext.result.graph.num_edges();
    const Graph& h = ext.result.graph;
    out.threshold = rainbow_cycle_threshold(h, out.k);
    if (out.threshold->holds) {
      const auto sub_colouring = restrict_colouring(ext.result, c);
      SearchOptions inner = opts;
      inner.exact_max_n = 0;
      auto res = find_rainbow_2k_cycle(h, sub_colouring, out.k, inner);
      if (res.outcome == Outcome::kFound) {
        res.witness = canonical_cycle(ext.result.to_parent_ids(res.witness));
        if (res.witness.size() % 2 != 0) throw std::logic_error("odd cycle in bipartite graph");
        out.search = std::move(res);
        return out;
      }
      out.search.draws = res.draws;
      out.search.steps = res.steps;
    }
  }
  // Above the exact guard the search runs on the randomized budget; it
  // still certifies absence if it completes.
  const std::uint64_t budget = n <= opts.exact_max_n ? opts.exact_budget : opts.budget;
  std::uint64_t steps = 0;
  out.search.phase = "exact";
  try {
    auto w = detail::rainbow_even_cycle_dfs(g, c, budget, steps);
    out.search.exact_steps = steps;
    if (w) {
      out.search.outcome = Outcome::kFound;
      out.search.witness = canonical_cycle(std::move(*w));
    } else {
      out.search.outcome = Outcome::kAbsent;
    }
  } catch (const BudgetExceeded&) {
    out.search.exact_steps = steps;
    out.search.outcome = Outcome::kInconclusive;
  }
  return out;
}

}  // namespace rainbow
