#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rainbow/bigcount.hpp"
#include "rainbow/graph.hpp"

namespace rainbow {

inline constexpr std::size_t kWalkTableMaxN = 5000;
inline constexpr std::size_t kSpectralMaxN = 2000;

namespace detail {

/// One DP step: next[v] = sum of cur over N(v).
template <typename T>
void walk_step(const Graph& g, const std::vector<T>& cur, std::vector<T>& next) {
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    T acc = 0;
    for (Vertex u : g.neighbours(v)) acc = checked_add(acc, cur[u]);
    next[v] = std::move(acc);
  }
}

/// rows[L][y] = number of L-edge walks from source to y, L = 0..len.
template <typename T>
std::vector<std::vector<T>> walk_rows(const Graph& g, Vertex source,
                                      std::size_t len) {
  std::vector<std::vector<T>> rows(len + 1, std::vector<T>(g.num_vertices(), 0));
  rows[0][source] = 1;
  for (std::size_t l = 1; l <= len; ++l) walk_step(g, rows[l - 1], rows[l]);
  return rows;
}

/// homs[j] = hom(C_{2j}) for j = 1..kmax via per-source rows and
/// sum_{x,y} W^j[x][y]^2.
template <typename T>
std::vector<T> cycle_homs(const Graph& g, std::size_t kmax) {
  std::vector<T> homs(kmax + 1, 0);
  std::vector<T> cur(g.num_vertices()), next(g.num_vertices());
  for (Vertex x = 0; x < g.num_vertices(); ++x) {
    if (g.degree(x) == 0) continue;
    std::fill(cur.begin(), cur.end(), T(0));
    cur[x] = 1;
    for (std::size_t j = 1; j <= kmax; ++j) {
      walk_step(g, cur, next);
      T acc = 0;
      for (Vertex y = 0; y < g.num_vertices(); ++y) {
        if (next[y] != 0) acc = checked_add(acc, checked_mul(next[y], next[y]));
      }
      homs[j] = checked_add(homs[j], acc);
      std::swap(cur, next);
    }
  }
  return homs;
}

}  // namespace detail

/// Row W^len[source][*] as exact counts.
inline std::vector<BigCount> walk_row(const Graph& g, Vertex source,
                                      std::size_t len) {
  if (source >= g.num_vertices()) throw PreconditionError("walk_row: bad source");
  try {
    auto rows = detail::walk_rows<std::uint64_t>(g, source, len);
    return {rows[len].begin(), rows[len].end()};
  } catch (const Overflow&) {
    return detail::walk_rows<BigCount>(g, source, len)[len];
  }
}

/// Exact n x n table of k-edge walk counts.
class WalkTable {
 public:
  WalkTable() = default;
  WalkTable(std::size_t n, std::size_t k)
      : n_(n), k_(k), counts_(n * n, BigCount(0)) {}

  std::size_t size() const noexcept { return n_; }
  std::size_t length() const noexcept { return k_; }
  const BigCount& at(Vertex x, Vertex y) const { return counts_[x * n_ + y]; }
  BigCount& at(Vertex x, Vertex y) { return counts_[x * n_ + y]; }

  friend bool operator==(const WalkTable&, const WalkTable&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<BigCount> counts_;
};

/// Throws GuardExceeded above kWalkTableMaxN vertices; use walk_row instead.
inline WalkTable walk_table(const Graph& g, std::size_t k) {
  const std::size_t n = g.num_vertices();
  if (n > kWalkTableMaxN) {
    throw GuardExceeded("walk_table: n exceeds " + std::to_string(kWalkTableMaxN) +
                        "; use per-source rows");
  }
  WalkTable t(n, k);
  for (Vertex x = 0; x < n; ++x) {
    const auto row = walk_row(g, x, k);
    for (Vertex y = 0; y < n; ++y) t.at(x, y) = row[y];
  }
  return t;
}

/// Matrix product; the table for length a+b equals multiply(table a, table b).
inline WalkTable multiply(const WalkTable& a, const WalkTable& b) {
  if (a.size() != b.size()) throw PreconditionError("multiply: size mismatch");
  const std::size_t n = a.size();
  WalkTable out(n, a.length() + b.length());
  for (Vertex x = 0; x < n; ++x)
    for (Vertex z = 0; z < n; ++z) {
      if (a.at(x, z) == 0) continue;
      for (Vertex y = 0; y < n; ++y) out.at(x, y) += a.at(x, z) * b.at(z, y);
    }
  return out;
}

/// hom(P_len, g): all walks with len edges.
inline BigCount hom_path(const Graph& g, std::size_t len) {
  BigCount total = 0;
  for (Vertex x = 0; x < g.num_vertices(); ++x) {
    for (const auto& c : walk_row(g, x, len)) total += c;
  }
  return total;
}

/// hom(C_{2j}, g) for j = 0..kmax, with hom(C_0) = n and hom(C_2) = 2|E|.
inline std::vector<BigCount> hom_cycles(const Graph& g, std::size_t kmax) {
  std::vector<BigCount> out;
  try {
    const auto fast = detail::cycle_homs<std::uint64_t>(g, kmax);
    out.assign(fast.begin(), fast.end());
  } catch (const Overflow&) {
    out = detail::cycle_homs<BigCount>(g, kmax);
  }
  out[0] = g.num_vertices();
  return out;
}

/// hom(C_len, g) for even len >= 0.
inline BigCount hom_cycle(const Graph& g, std::size_t len) {
  if (len % 2 != 0) throw PreconditionError("hom_cycle: length must be even");
  return hom_cycles(g, len / 2)[len / 2];
}

/// Sum of lambda^len over adjacency eigenvalues, for even len >= 2.
inline double hom_cycle_spectral(const Graph& g, std::size_t len) {
  if (len % 2 != 0 || len < 2) {
    throw PreconditionError("hom_cycle_spectral: length must be even and >= 2");
  }
  const std::size_t n = g.num_vertices();
  if (n > kSpectralMaxN) {
    throw GuardExceeded("hom_cycle_spectral: n exceeds " +
                        std::to_string(kSpectralMaxN));
  }
  if (n == 0) return 0.0;
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
  for (const Edge& e : g.edges()) adj(e.u, e.v) = adj(e.v, e.u) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adj,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hom_cycle_spectral: eigensolver failed");
  }
  long double total = 0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    total += std::pow(static_cast<long double>(solver.eigenvalues()(i)),
                      static_cast<long double>(len));
  }
  const double out = static_cast<double>(total);
  if (!std::isfinite(out)) {
    throw std::runtime_error("hom_cycle_spectral: non-finite result");
  }
  return out;
}

/// Outcome of an exact integer inequality check lhs <= rhs (or a family of
/// them). On failure `first_violation` names the failing index.
struct InequalityCertificate {
  bool passed = true;
  std::optional<std::size_t> first_violation;
  BigCount lhs = 0;  // of the failing check, or of the last one checked
  BigCount rhs = 0;
  std::vector<BigCount> homs;  // hom(C_{2j}) for j = 0..max used
  std::string detail;
};

/// hom(C_{2l}) hom(C_{2l-4}) >= hom(C_{2l-2})^2 for 2 <= l <= kmax.
inline InequalityCertificate check_ratio_monotonicity(const Graph& g,
                                                      std::size_t kmax) {
  if (g.num_edges() == 0) {
    throw PreconditionError("check_ratio_monotonicity: graph has no edges");
  }
  if (kmax < 2) throw PreconditionError("check_ratio_monotonicity: kmax < 2");
  InequalityCertificate cert;
  cert.homs = hom_cycles(g, kmax);
  cert.detail = "hom(C_{2l-2})^2 <= hom(C_{2l}) hom(C_{2l-4})";
  for (std::size_t l = 2; l <= kmax; ++l) {
    cert.lhs = cert.homs[l - 1] * cert.homs[l - 1];
    cert.rhs = cert.homs[l] * cert.homs[l - 2];
    if (cert.lhs > cert.rhs) {
      cert.passed = false;
      cert.first_violation = l;
      break;
    }
  }
  return cert;
}

/// hom(C_{2k-2})^{k-l} <= hom(C_{2l}) hom(C_{2k})^{k-l-1}.
inline InequalityCertificate check_interpolation(const Graph& g, std::size_t k,
                                                 std::size_t l) {
  if (k < 2 || l + 1 > k) {
    throw PreconditionError("check_interpolation: need k >= 2 and 0 <= l <= k-1");
  }
  InequalityCertificate cert;
  cert.homs = hom_cycles(g, k);
  const auto span = static_cast<unsigned>(k - l);
  cert.lhs = big_pow(cert.homs[k - 1], span);
  cert.rhs = cert.homs[l] * big_pow(cert.homs[k], span - 1);
  cert.passed = cert.lhs <= cert.rhs;
  if (!cert.passed) cert.first_violation = l;
  cert.detail = "hom(C_{2k-2})^{k-l} <= hom(C_{2l}) hom(C_{2k})^{k-l-1}";
  return cert;
}

/// hom(C_{2k}) n^{2k} >= (2|E|)^{2k}.
inline InequalityCertificate check_sidorenko(const Graph& g, std::size_t k) {
  if (k < 2) throw PreconditionError("check_sidorenko: k < 2");
  InequalityCertificate cert;
  cert.homs = hom_cycles(g, k);
  const auto e2 = static_cast<unsigned>(2 * k);
  cert.lhs = big_pow(BigCount(2 * g.num_edges()), e2);
  cert.rhs = cert.homs[k] * big_pow(BigCount(g.num_vertices()), e2);
  cert.passed = cert.lhs <= cert.rhs;
  if (!cert.passed) cert.first_violation = k;
  cert.detail = "(2|E|)^{2k} <= hom(C_{2k}) n^{2k}";
  return cert;
}

/// For a bipartite graph with parts X, Y where every x in X has degree >= s
/// and every y in Y has degree >= t (s, t measured as the minima), checks
/// hom(C_{2k}) >= s^k t^k.
inline InequalityCertificate check_bipartite_min_degree(
    const Graph& g, const std::vector<Vertex>& left,
    const std::vector<Vertex>& right, std::size_t k) {
  if (k < 1) throw PreconditionError("check_bipartite_min_degree: k < 1");
  BipartitePartition part{left, right};
  part.validate(g.num_vertices());
  if (left.size() + right.size() != g.num_vertices()) {
    throw PreconditionError("check_bipartite_min_degree: parts must cover V");
  }
  std::vector<std::uint8_t> side(g.num_vertices(), 0);
  for (Vertex v : left) side[v] = 1;
  for (Vertex v : right) side[v] = 2;
  for (const Edge& e : g.edges()) {
    if (side[e.u] == side[e.v]) {
      throw PreconditionError("check_bipartite_min_degree: edge inside a part");
    }
  }
  std::size_t s = left.empty() ? 0 : g.degree(left[0]);
  for (Vertex v : left) s = std::min(s, g.degree(v));
  std::size_t t = right.empty() ? 0 : g.degree(right[0]);
  for (Vertex v : right) t = std::min(t, g.degree(v));
  InequalityCertificate cert;
  cert.homs = hom_cycles(g, k);
  const auto kk = static_cast<unsigned>(k);
  cert.lhs = big_pow(BigCount(s), kk) * big_pow(BigCount(t), kk);
  cert.rhs = cert.homs[k];
  cert.passed = cert.lhs <= cert.rhs;
  if (!cert.passed) cert.first_violation = k;
  cert.detail = "s^k t^k <= hom(C_{2k}) with s=" + std::to_string(s) +
                " t=" + std::to_string(t);
  return cert;
}

}  // namespace rainbow
