#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rainbow/rainbow.hpp"

namespace rainbow::cli {

inline constexpr const char* kVersion = "1.0.0";

enum Exit : int { kOk = 0, kNegative = 1, kInconclusive = 2, kUsage = 3 };

struct Config {
  std::string command;
  std::string kind;
  std::string in;
  std::string out;
  std::uint64_t seed = 0;
  std::uint64_t budget = 1'000'000;
  std::optional<std::size_t> k;
  std::size_t r = 2;
  std::size_t t = 3;
  std::size_t m = 3;
  std::size_t n = 10;
  double p = 0.5;
  std::string format = "json";
  bool no_timestamp = false;
  std::size_t exact_max_n = 64;
  std::uint64_t exact_budget = 1'000'000'000;
  std::size_t nmax = 6;
  std::size_t l = 0;
  double eps = 0.5;
  double c = 1.0;
  std::string relation = "both";
  unsigned threads = 1;
  std::size_t chains = 1;
  double min_average_degree = 64;
};

using nlohmann::json;

inline std::string fmt(long double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10Lg", x);
  return buf;
}

// JSON numbers for finite values, strings otherwise (json rejects inf).
inline json num(long double x) {
  if (std::isfinite(x)) return static_cast<double>(x);
  return fmt(x);
}

inline json config_json(const Config& c) {
  json j;
  j["command"] = c.command;
  j["kind"] = c.kind;
  j["in"] = c.in;
  j["out"] = c.out;
  j["seed"] = c.seed;
  j["budget"] = c.budget;
  j["k"] = c.k ? json(*c.k) : json(nullptr);
  j["r"] = c.r;
  j["t"] = c.t;
  j["m"] = c.m;
  j["n"] = c.n;
  j["p"] = c.p;
  j["format"] = c.format;
  j["exact_max_n"] = c.exact_max_n;
  j["exact_budget"] = c.exact_budget;
  j["nmax"] = c.nmax;
  j["l"] = c.l;
  j["eps"] = c.eps;
  j["c"] = c.c;
  j["relation"] = c.relation;
  j["threads"] = c.threads;
  j["chains"] = c.chains;
  j["min_average_degree"] = c.min_average_degree;
  return j;
}

inline json guards_json(const Config& c) {
  return {{"walk_table_max_n", kWalkTableMaxN},
          {"spectral_max_n", kSpectralMaxN},
          {"exact_densest_max_edges", kExactDensestMaxEdges},
          {"aux_max_vertices", kAuxMaxVertices},
          {"aux_max_edges", kAuxMaxEdges},
          {"hypercube_max_dim", kHypercubeMaxDim},
          {"exact_max_n", c.exact_max_n},
          {"exact_budget", c.exact_budget},
          {"min_average_degree", c.min_average_degree}};
}

inline std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

struct Context {
  Config cfg;
  std::vector<std::string> argv;
  std::ostream* out;
  std::ostream* err;

  json header() const {
    json j;
    j["tool"] = "rainbow";
    j["version"] = kVersion;
    j["argv"] = argv;
    j["config"] = config_json(cfg);
    j["guards"] = guards_json(cfg);
    if (!cfg.no_timestamp) j["timestamp"] = timestamp();
    return j;
  }

  // '#' comment lines carrying the same metadata, for text outputs.
  std::vector<std::string> comment_header() const {
    std::vector<std::string> lines{std::string("rainbow ") + kVersion};
    std::string joined;
    for (const auto& a : argv) joined += (joined.empty() ? "" : " ") + a;
    lines.push_back("argv: " + joined);
    lines.push_back("config: " + config_json(cfg).dump());
    lines.push_back("guards: " + guards_json(cfg).dump());
    if (!cfg.no_timestamp) lines.push_back("timestamp: " + timestamp());
    return lines;
  }

  void emit(const std::string& text) const {
    if (cfg.out.empty()) {
      *out << text;
      return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw PreconditionError("cannot write '" + cfg.out + "'");
    f << text;
  }

  void emit_report(json result) const {
    json doc = header();
    doc["result"] = std::move(result);
    emit(doc.dump(2) + "\n");
  }
};

// ------------------------------------------------------------------ inputs

struct Input {
  Graph graph;
  std::optional<EdgeColouring> colouring;
};

inline Input read_input(const Config& c) {
  if (c.in.empty()) throw PreconditionError("--in is required for '" + c.command + " " + c.kind + "'");
  auto [g, col] = load_any_graph(read_text_file(c.in));
  return {std::move(g), std::move(col)};
}

inline EdgeColouring colouring_or_greedy(const Input& in, std::uint64_t seed) {
  return in.colouring ? *in.colouring : greedy_proper_colouring(in.graph, seed);
}

inline const EdgeColouring& require_colouring(const Input& in) {
  if (!in.colouring) throw PreconditionError("input must be a coloured graph (lines 'u v c')");
  return *in.colouring;
}

inline SearchOptions search_options(const Config& c) {
  SearchOptions o;
  o.budget = c.budget;
  o.seed = c.seed;
  o.exact_max_n = c.exact_max_n;
  o.exact_budget = c.exact_budget;
  o.chains = c.chains;
  o.threads = c.threads;
  o.min_average_degree = c.min_average_degree;
  return o;
}

inline std::size_t k_or(const Config& c, std::size_t dflt) { return c.k.value_or(dflt); }

inline BipartitePartition two_colour(const Graph& g) {
  std::vector<int> side(g.num_vertices(), -1);
  BipartitePartition part;
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::vector<Vertex> stack{s};
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbours(v)) {
        if (side[w] < 0) {
          side[w] = 1 - side[v];
          stack.push_back(w);
        } else if (side[w] == side[v]) {
          throw PreconditionError("graph is not bipartite");
        }
      }
    }
  }
  for (Vertex v = 0; v < g.num_vertices(); ++v) (side[v] == 0 ? part.left : part.right).push_back(v);
  return part;
}

// ---------------------------------------------------------------- json bits

inline json cert_json(const InequalityCertificate& c) {
  json homs = json::array();
  for (const auto& h : c.homs) homs.push_back(to_string(h));
  return {{"passed", c.passed},
          {"first_violation", c.first_violation ? json(*c.first_violation) : json(nullptr)},
          {"lhs", to_string(c.lhs)},
          {"rhs", to_string(c.rhs)},
          {"homs", homs},
          {"inequality", c.detail}};
}

inline json extraction_json(const Graph& parent, const ExtractionReport& r) {
  json checks = json::array();
  for (const auto& ch : r.checks) {
    checks.push_back({{"name", ch.name}, {"lhs", num(ch.lhs)}, {"rhs", num(ch.rhs)}, {"ok", ch.ok}});
  }
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = num(v);
  return {{"branch", r.branch},
          {"vertices", r.result.graph.num_vertices()},
          {"edges", r.result.graph.num_edges()},
          {"left", r.result.to_parent_ids(r.left)},
          {"right", r.result.to_parent_ids(r.right)},
          {"params", params},
          {"checks", checks},
          {"passed", r.passed},
          {"remeasured", remeasure(parent, r)}};
}

inline json intersection_json(const IntersectionCertificate& c) {
  return {{"bound", c.bound_form},
          {"exhaustive", c.exhaustive},
          {"pairs_checked", c.pairs_checked},
          {"violations", c.violations},
          {"worst_x", c.worst_x},
          {"worst_y", c.worst_y},
          {"worst_count", c.worst_count},
          {"worst_bound", num(c.worst_bound)},
          {"passed", c.passed}};
}

inline int exit_for(Outcome o) {
  switch (o) {
    case Outcome::kFound: return kOk;
    case Outcome::kAbsent: return kNegative;
    case Outcome::kInconclusive: return kInconclusive;
  }
  return kInconclusive;
}

// ---------------------------------------------------------------------- gen

inline int run_gen(const Context& ctx) {
  const Config& c = ctx.cfg;
  auto header = ctx.comment_header();
  if (c.kind == "random") {
    ctx.emit(write_graph(random_graph(c.n, c.p, c.seed), header));
  } else if (c.kind == "random-coloured") {
    const Graph g = random_graph(c.n, c.p, c.seed);
    ctx.emit(write_coloured_graph(g, greedy_proper_colouring(g, derive_seed(c.seed, 1)), header));
  } else if (c.kind == "complete") {
    const Graph g = complete_graph(c.n);
    ctx.emit(write_coloured_graph(g, greedy_proper_colouring(g, c.seed), header));
  } else if (c.kind == "hypercube") {
    const auto q = hypercube_coloured(c.m);
    ctx.emit(write_coloured_graph(q.graph, q.colouring, header));
  } else if (c.kind == "subset") {
    const auto in = read_input(c);
    const auto sg = build_subset_graph(in.graph, c.r);
    for (Vertex v = 0; v < sg.vertices.size(); ++v) {
      std::string line = "vertex " + std::to_string(v) + ":";
      for (Vertex b : sg.vertices[v].members) line += " " + std::to_string(b);
      header.push_back(line);
    }
    ctx.emit(write_graph(sg.graph, header));
  } else if (c.kind == "tuple") {
    const auto in = read_input(c);
    const auto tg = build_tuple_graph(in.graph, require_colouring(in), c.r);
    for (Vertex v = 0; v < tg.vertices.size(); ++v) {
      std::string line = "vertex " + std::to_string(v) + ":";
      for (Vertex b : tg.vertices[v].coords) line += " " + std::to_string(b);
      header.push_back(line);
    }
    ctx.emit(write_graph(tg.graph, header));
  } else {
    throw PreconditionError("unknown gen kind '" + c.kind + "'");
  }
  return kOk;
}

// ------------------------------------------------------------------- verify

inline Conflicts conflicts_for(const std::string& relation, const EdgeColouring* col) {
  if (relation == "equality") return {VertexRelation::equality(), std::nullopt};
  if (relation == "same-colour") return {std::nullopt, EdgePairRelation::same_colour(*col)};
  if (relation == "both") return {VertexRelation::equality(), EdgePairRelation::same_colour(*col)};
  throw PreconditionError("unknown relation '" + relation + "'");
}

inline int run_verify(const Context& ctx) {
  const Config& c = ctx.cfg;
  const Input in = read_input(c);
  const Graph& g = in.graph;
  json res;
  bool passed = true;
  if (c.kind == "proper") {
    const auto v = validate_proper(g, require_colouring(in));
    json list = json::array();
    for (const auto& x : v) {
      list.push_back({{"vertex", x.vertex},
                      {"colour", x.colour},
                      {"first", {x.first.u, x.first.v}},
                      {"second", {x.second.u, x.second.v}}});
    }
    passed = v.empty();
    res = {{"violations", list}, {"passed", passed}};
  } else if (c.kind == "ratio") {
    const auto cert = check_ratio_monotonicity(g, k_or(c, 4));
    passed = cert.passed;
    res = cert_json(cert);
  } else if (c.kind == "sidorenko") {
    const auto cert = check_sidorenko(g, k_or(c, 2));
    passed = cert.passed;
    res = cert_json(cert);
  } else if (c.kind == "interpolation") {
    const auto cert = check_interpolation(g, k_or(c, 3), c.l);
    passed = cert.passed;
    res = cert_json(cert);
  } else if (c.kind == "bipartite-min-degree") {
    const auto part = two_colour(g);
    const auto cert = check_bipartite_min_degree(g, part.left, part.right, k_or(c, 2));
    passed = cert.passed;
    res = cert_json(cert);
  } else if (c.kind == "keylemma") {
    const EdgeColouring col = colouring_or_greedy(in, c.seed);
    KeyLemmaOptions ko;
    ko.enumeration.budget = c.exact_budget;
    ko.enumeration.threads = c.threads;
    const auto cert = check_key_lemma(g, k_or(c, 2), conflicts_for(c.relation, &col), nullptr, ko);
    passed = cert.passed && cert.sparsity_ok;
    res = {{"bad", to_string(cert.bad)},      {"total", to_string(cert.total)},
           {"bound", num(cert.bound)},        {"margin", num(cert.margin)},
           {"s_vertex", cert.s_vertex},       {"s_edge", cert.s_edge},
           {"steps", cert.steps},             {"sparsity_ok", cert.sparsity_ok},
           {"passed", passed}};
  } else if (c.kind == "dyadic") {
    const EdgeColouring col = colouring_or_greedy(in, c.seed);
    const std::string rel = c.relation == "both" ? "equality" : c.relation;
    const auto rep = check_dyadic_claims(g, k_or(c, 2), conflicts_for(rel, &col), c.exact_budget);
    passed = rep.claim1 && rep.claim2 && rep.total_ok;
    res = {{"claim1", rep.claim1},
           {"claim2", rep.claim2},
           {"total_ok", rep.total_ok},
           {"gamma_total", to_string(rep.gamma_total)},
           {"s", rep.s},
           {"passed", passed}};
  } else if (c.kind == "almost-regular") {
    const auto rep = almost_regular_subgraph(g, c.eps, c.c);
    passed = rep.passed && remeasure(g, rep);
    res = extraction_json(g, rep);
  } else if (c.kind == "step1" || c.kind == "step2") {
    BipartiteStepOptions so;
    so.min_average_degree = c.min_average_degree;
    const auto rep = c.kind == "step1" ? bipartite_step1(g, so) : bipartite_step2(g, so);
    passed = rep.passed && remeasure(g, rep);
    res = extraction_json(g, rep);
  } else if (c.kind == "blowup") {
    const auto sg = build_subset_graph(g, c.r);
    const auto rep = blowup_biregular(sg.graph, g.num_vertices(), c.r, {c.seed, 100});
    passed = rep.passed && remeasure(sg.graph, rep);
    res = extraction_json(sg.graph, rep);
  } else if (c.kind == "tuple-bound") {
    IntersectionOptions io;
    io.seed = c.seed;
    io.threads = c.threads;
    const auto cert = check_tuple_intersection_bound(build_tuple_graph(g, require_colouring(in), c.r), io);
    passed = cert.passed;
    res = intersection_json(cert);
  } else if (c.kind == "subset-bound") {
    IntersectionOptions io;
    io.seed = c.seed;
    io.threads = c.threads;
    const auto cert = check_subset_intersection_bound(build_subset_graph(g, c.r), io);
    passed = cert.passed;
    res = intersection_json(cert);
  } else if (c.kind == "mono-matchings") {
    res = {{"count", to_string(count_mono_matchings(require_colouring(in), c.r))}, {"passed", true}};
  } else if (c.kind == "krr") {
    res = {{"count", to_string(count_Krr(g, c.r))}, {"passed", true}};
  } else if (c.kind == "hom") {
    const std::size_t k = k_or(c, 2);
    res = {{"hom", to_string(hom_cycle(g, 2 * k))}, {"passed", true}};
  } else {
    throw PreconditionError("unknown verify kind '" + c.kind + "'");
  }
  res["n"] = g.num_vertices();
  res["e"] = g.num_edges();
  ctx.emit_report(res);
  return passed ? kOk : kNegative;
}

// ------------------------------------------------------------------- search

inline json search_stats(const std::string& phase, std::uint64_t draws, std::uint64_t steps,
                         std::uint64_t exact_steps) {
  return {{"phase", phase}, {"draws", draws}, {"steps", steps}, {"exact_steps", exact_steps}};
}

inline int run_search(const Context& ctx) {
  const Config& c = ctx.cfg;
  const Input in = read_input(c);
  const Graph& g = in.graph;
  const SearchOptions so = search_options(c);
  json res;
  Outcome outcome = Outcome::kInconclusive;
  if (c.kind == "rainbow-cycle") {
    const EdgeColouring& col = require_colouring(in);
    if (c.k) {
      const auto r = find_rainbow_2k_cycle(g, col, *c.k, so);
      outcome = r.outcome;
      res = search_stats(r.phase, r.draws, r.steps, r.exact_steps);
      res["k"] = *c.k;
      if (r.outcome == Outcome::kFound) res["witness"] = r.witness;
    } else {
      const auto r = find_rainbow_even_cycle(g, col, so);
      outcome = r.search.outcome;
      res = search_stats(r.search.phase, r.search.draws, r.search.steps, r.search.exact_steps);
      res["k"] = r.k;
      res["extracted"] = r.extracted;
      res["extracted_vertices"] = r.extracted_vertices;
      res["extracted_edges"] = r.extracted_edges;
      if (r.threshold) {
        res["threshold"] = {{"hom", to_string(r.threshold->hom)},
                            {"threshold", to_string(r.threshold->threshold)},
                            {"holds", r.threshold->holds}};
      }
      if (outcome == Outcome::kFound) res["witness"] = r.search.witness;
    }
  } else if (c.kind == "theta") {
    const auto r = find_rainbow_theta(g, require_colouring(in), k_or(c, 2), c.t, so);
    outcome = r.outcome;
    res = search_stats(r.phase, r.draws, r.steps, r.exact_steps);
    if (r.witness) res["witness"] = {{"a", r.witness->a}, {"b", r.witness->b}, {"paths", r.witness->paths}};
  } else if (c.kind == "blowup") {
    const auto r = find_blowup_cycle(g, c.r, c.k, so);
    outcome = r.outcome;
    res = search_stats(r.phase, r.draws, r.steps, r.exact_steps);
    res["aux_vertices"] = r.aux_vertices;
    res["aux_edges"] = r.aux_edges;
    json sched = json::array();
    for (const auto& [k, o] : r.schedule) sched.push_back({{"k", k}, {"outcome", to_string(o)}});
    res["schedule"] = sched;
    if (r.extraction) res["extraction"] = {{"branch", r.extraction->branch}, {"passed", r.extraction->passed}};
    if (r.witness) {
      res["k"] = r.k;
      res["witness"] = r.witness->classes;
    }
  } else if (c.kind == "colour-iso") {
    const auto r = find_colour_isomorphic_cycles(g, require_colouring(in), c.r, k_or(c, 2), so);
    outcome = r.outcome;
    res = search_stats(r.phase, r.draws, r.steps, r.exact_steps);
    res["aux_vertices"] = r.aux_vertices;
    res["aux_edges"] = r.aux_edges;
    if (r.witness) res["witness"] = r.witness->copies;
  } else {
    throw PreconditionError("unknown search kind '" + c.kind + "'");
  }
  res["outcome"] = to_string(outcome);
  ctx.emit_report(res);
  return exit_for(outcome);
}

// -------------------------------------------------------------------- sweep

struct SweepRow {
  std::string id;
  std::size_t n = 0, e = 0, k = 0;
  std::string bad;
  long double bound = 0, margin = 0;
  bool pass = false;
};

struct SweepJob {
  std::string id;
  Graph g;
  std::optional<std::uint64_t> colour_seed;  // same-colour rows
};

inline std::vector<SweepJob> keylemma_jobs(const Config& c) {
  std::vector<SweepJob> jobs;
  const auto codes = catalogue::all_graph_codes(c.nmax);
  const bool eq = c.relation == "equality" || c.relation == "both";
  const bool col = c.relation == "same-colour" || c.relation == "both";
  if (!eq && !col) throw PreconditionError("unknown relation '" + c.relation + "'");
  for (std::size_t n = 1; n <= c.nmax; ++n) {
    for (std::size_t i = 0; i < codes[n].size(); ++i) {
      Graph g = catalogue::from_code(n, codes[n][i]);
      if (g.num_edges() == 0) continue;
      char base[48];
      std::snprintf(base, sizeof base, "n%02zu-g%06zu", n, i);
      if (eq) jobs.push_back({std::string(base) + "-eq", g, std::nullopt});
      if (col) {
        for (std::uint64_t s = 0; s < 3; ++s) {
          jobs.push_back({std::string(base) + "-col" + std::to_string(s), g, derive_seed(c.seed, s)});
        }
      }
    }
  }
  return jobs;
}

inline int run_sweep(const Context& ctx) {
  const Config& c = ctx.cfg;
  if (c.kind != "keylemma") throw PreconditionError("unknown sweep kind '" + c.kind + "'");
  if (c.nmax > 9) throw GuardExceeded("sweep keylemma: nmax <= 9");
  const std::size_t k = k_or(c, 2);
  if (k < 2) throw PreconditionError("sweep keylemma: k >= 2 required");
  const auto jobs = keylemma_jobs(c);
  std::vector<SweepRow> rows(jobs.size());
  auto work = [&](std::size_t i) {
    const SweepJob& job = jobs[i];
    Conflicts conf;
    if (job.colour_seed) {
      conf.edge = EdgePairRelation::same_colour(greedy_proper_colouring(job.g, *job.colour_seed));
    } else {
      conf.vertex = VertexRelation::equality();
    }
    KeyLemmaOptions ko;
    ko.enumeration.budget = c.exact_budget;
    const auto cert = check_key_lemma(job.g, k, conf, nullptr, ko);
    rows[i] = {job.id, job.g.num_vertices(), job.g.num_edges(), k, to_string(cert.bad), cert.bound,
               cert.margin, cert.passed && cert.sparsity_ok};
  };
  const unsigned threads = std::max(1u, c.threads);
  if (threads == 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) { return a.id < b.id; });
  bool all = true;
  for (const auto& r : rows) all = all && r.pass;

  if (c.format == "csv") {
    std::ostringstream os;
    for (const auto& h : ctx.comment_header()) os << "# " << h << '\n';
    os << "instance-id,n,e,k,bad-count,bound,margin,pass\n";
    for (const auto& r : rows) {
      os << r.id << ',' << r.n << ',' << r.e << ',' << r.k << ',' << r.bad << ',' << fmt(r.bound) << ','
         << fmt(r.margin) << ',' << (r.pass ? "true" : "false") << '\n';
    }
    ctx.emit(os.str());
  } else if (c.format == "json") {
    json list = json::array();
    for (const auto& r : rows) {
      list.push_back({{"instance-id", r.id},
                      {"n", r.n},
                      {"e", r.e},
                      {"k", r.k},
                      {"bad-count", r.bad},
                      {"bound", fmt(r.bound)},
                      {"margin", fmt(r.margin)},
                      {"pass", r.pass}});
    }
    ctx.emit_report({{"rows", list}, {"all_pass", all}});
  } else {
    throw PreconditionError("unknown format '" + c.format + "'");
  }
  return all ? kOk : kNegative;
}

// ---------------------------------------------------------------------- run

inline void add_common(CLI::App* sub, Config& c) {
  sub->add_option("kind", c.kind, "what to generate / verify / search / sweep")->required();
  sub->add_option("--in", c.in, "input graph file");
  sub->add_option("--out", c.out, "output file (default stdout)");
  sub->add_option("--seed", c.seed, "64-bit seed");
  sub->add_option("--budget", c.budget, "randomized budget in extension steps");
  sub->add_option("--k", c.k, "cycle half-length / path length");
  sub->add_option("--r", c.r, "blow-up or tuple size");
  sub->add_option("--t", c.t, "number of theta paths");
  sub->add_option("--m", c.m, "hypercube dimension");
  sub->add_option("--n", c.n, "vertex count");
  sub->add_option("--p", c.p, "edge probability");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag("--no-timestamp", c.no_timestamp, "omit the timestamp field");
  sub->add_option("--exact-max-n", c.exact_max_n, "largest graph searched exhaustively");
  sub->add_option("--exact-budget", c.exact_budget, "exhaustive budget in extension steps");
  sub->add_option("--nmax", c.nmax, "largest order in sweeps");
  sub->add_option("--l", c.l, "interpolation index");
  sub->add_option("--eps", c.eps, "almost-regular exponent");
  sub->add_option("--c", c.c, "almost-regular coefficient");
  sub->add_option("--relation", c.relation, "equality, same-colour or both");
  sub->add_option("--threads", c.threads, "worker threads");
  sub->add_option("--chains", c.chains, "independent sampling chains");
  sub->add_option("--min-average-degree", c.min_average_degree, "extraction degree guard");
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx;
  ctx.argv.assign(args.begin() + (args.empty() ? 0 : 1), args.end());
  ctx.out = &out;
  ctx.err = &err;
  CLI::App app{"rainbow: cycle homomorphism counting, conflict bounds and rainbow searches"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Config& c = ctx.cfg;
  const std::pair<const char*, const char*> subcommands[] = {
      {"gen", "write a graph: random, random-coloured, complete, hypercube, subset, tuple"},
      {"verify", "check an inequality or extraction on --in and print a certificate"},
      {"search", "look for rainbow-cycle, theta, blowup or colour-iso structures in --in"},
      {"sweep", "run keylemma over every small graph and print one row per instance"},
  };
  for (const auto& [name, help] : subcommands) add_common(app.add_subcommand(name, help), c);
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  c.command = app.get_subcommands().front()->get_name();
  try {
    if (c.command == "gen") return run_gen(ctx);
    if (c.command == "verify") return run_verify(ctx);
    if (c.command == "search") return run_search(ctx);
    return run_sweep(ctx);
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const GuardExceeded& e) {
    err << "guard exceeded: " << e.what() << '\n';
  } catch (const BudgetExceeded& e) {
    err << "budget exhausted: " << e.what() << '\n';
    return kInconclusive;
  }
  return kUsage;
}

}  // namespace rainbow::cli
