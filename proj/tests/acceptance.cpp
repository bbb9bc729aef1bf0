// Acceptance run: one [PASS]/[FAIL] line per criterion. Pass criterion ids
// as arguments to run a subset.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"

using namespace rainbow;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string format(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

long double as_ld(const BigCount& x) { return x.convert_to<long double>(); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1 -------------------------------------------------------------------------
Verdict counting_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto graphs = catalogue::read_graph6_file(std::string(RAINBOW_TEST_DATA) + "/connected_le8.g6");
  std::size_t mismatches = 0, checks = 0;
  for (const Graph& g : graphs) {
    for (std::size_t k = 1; k <= 3; ++k) {
      ++checks;
      if (hom_cycle(g, 2 * k) != oracle::closed_walks(g, 2 * k)) ++mismatches;
    }
  }
  const double secs = seconds_since(t0);
  return {graphs.size() >= 10000 && mismatches == 0 && secs < 300,
          format("%zu connected graphs, %zu checks, %zu mismatches, %.1f s", graphs.size(), checks, mismatches,
                 secs)};
}

// 2 -------------------------------------------------------------------------
Verdict spectral_cross_check() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(derive_seed(kSeed, 2));
  long double worst = 0;
  for (std::size_t i = 0; i < 200; ++i) {
    const std::size_t n = 1 + rng.below(40);
    const Graph g = random_graph(n, rng.unit(), rng.next());
    for (std::size_t k = 1; k <= 5; ++k) {
      const long double exact = as_ld(hom_cycle(g, 2 * k));
      const long double approx = hom_cycle_spectral(g, 2 * k);
      worst = std::max(worst, std::fabs(approx - exact) / std::max<long double>(exact, 1));
    }
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-6L && secs < 60, format("200 graphs, k<=5, worst relative error %.3Lg, %.1f s", worst, secs)};
}

// 3 -------------------------------------------------------------------------
std::vector<Graph> inequality_suite() {
  std::vector<Graph> out;
  Rng rng(derive_seed(kSeed, 3));
  for (std::size_t i = 0; i < 300; ++i) {
    out.push_back(random_graph(2 + rng.below(29), 0.05 + 0.9 * rng.unit(), rng.next()));
  }
  for (std::size_t i = 0; i < 100; ++i) {
    out.push_back(random_bipartite_graph(1 + rng.below(12), 1 + rng.below(12), 0.1 + 0.8 * rng.unit(), rng.next()));
  }
  for (std::size_t n = 3; n <= 30; ++n) out.push_back(cycle_graph(n));
  for (std::size_t n = 2; n <= 30; ++n) out.push_back(path_graph(n));
  for (std::size_t n = 1; n <= 20; ++n) out.push_back(star_graph(n));
  for (std::size_t n = 2; n <= 20; ++n) out.push_back(complete_graph(n));
  for (std::size_t a = 1; a <= 6; ++a)
    for (std::size_t b = a; b <= 6; ++b) out.push_back(complete_bipartite_graph(a, b));
  out.push_back(petersen_graph());
  for (std::size_t r = 1; r <= 3; ++r) out.push_back(blowup_graph(cycle_graph(5), r));
  out.push_back(disjoint_union(complete_graph(6), path_graph(9)));
  out.push_back(disjoint_union(star_graph(7), cycle_graph(4)));
  std::erase_if(out, [](const Graph& g) { return g.num_edges() == 0; });
  return out;
}

Verdict ratio_and_sidorenko() {
  const auto suite = inequality_suite();
  std::size_t failures = 0;
  for (const Graph& g : suite) {
    if (!check_ratio_monotonicity(g, 6).passed) ++failures;
    for (std::size_t k = 2; k <= 5; ++k) {
      if (!check_sidorenko(g, k).passed) ++failures;
    }
  }
  return {suite.size() >= 500 && failures == 0,
          format("%zu graphs, ratio up to C_12, Sidorenko k=2..5, %zu failures", suite.size(), failures)};
}

// 4 -------------------------------------------------------------------------
Verdict key_lemma_sweep() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto codes = catalogue::all_graph_codes(9);
  std::size_t rows = 0, violations = 0, graphs = 0;
  for (std::size_t n = 1; n <= 9; ++n) {
    for (std::uint64_t code : codes[n]) {
      const Graph g = catalogue::from_code(n, code);
      if (g.num_edges() == 0) continue;
      ++graphs;
      std::vector<Conflicts> relations;
      relations.push_back({VertexRelation::equality(), std::nullopt});
      for (std::uint64_t s = 0; s < 3; ++s) {
        relations.push_back(
            {std::nullopt, EdgePairRelation::same_colour(greedy_proper_colouring(g, derive_seed(kSeed, s)))});
      }
      for (std::size_t k = 2; k <= 3; ++k) {
        for (const auto& conf : relations) {
          const auto cert = check_key_lemma(g, k, conf);
          ++rows;
          if (!cert.passed || !cert.sparsity_ok) ++violations;
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  return {violations == 0 && secs < 1800,
          format("%zu graphs on <=9 vertices, %zu rows, %zu violations, %.1f s", graphs, rows, violations, secs)};
}

// 5 -------------------------------------------------------------------------
Verdict bipartite_min_degree() {
  Rng rng(derive_seed(kSeed, 5));
  std::size_t violations = 0, floor_misses = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    const std::size_t a = 2 + rng.below(14), b = 2 + rng.below(14);
    const std::size_t s = 1 + rng.below(b), t = 1 + rng.below(a);
    std::set<std::pair<Vertex, Vertex>> edges;
    const double p = 0.6 * rng.unit();
    for (Vertex u = 0; u < a; ++u)
      for (Vertex v = 0; v < b; ++v)
        if (rng.bernoulli(p)) edges.insert({u, v});
    auto degree = [&](Vertex x, bool left) {
      std::size_t d = 0;
      for (const auto& [u, v] : edges) d += left ? (u == x) : (v == x);
      return d;
    };
    for (Vertex u = 0; u < a; ++u)
      while (degree(u, true) < s) edges.insert({u, static_cast<Vertex>(rng.below(b))});
    for (Vertex v = 0; v < b; ++v)
      while (degree(v, false) < t) edges.insert({static_cast<Vertex>(rng.below(a)), v});
    std::vector<Edge> list;
    for (const auto& [u, v] : edges) list.push_back({u, static_cast<Vertex>(a + v)});
    const Graph g = Graph::from_edges(a + b, std::move(list));
    std::vector<Vertex> left, right;
    for (Vertex u = 0; u < a; ++u) left.push_back(u);
    for (Vertex v = 0; v < b; ++v) right.push_back(static_cast<Vertex>(a + v));
    for (Vertex u : left) floor_misses += g.degree(u) < s;
    for (Vertex v : right) floor_misses += g.degree(v) < t;
    for (std::size_t k = 1; k <= 4; ++k) {
      if (!check_bipartite_min_degree(g, left, right, k).passed) ++violations;
    }
  }
  return {violations == 0 && floor_misses == 0,
          format("100 graphs, k=1..4, %zu violations, %zu floor misses", violations, floor_misses)};
}

// 6 -------------------------------------------------------------------------
Verdict hypercube() {
  bool ok = true;
  std::string notes;
  for (std::size_t m = 1; m <= 4; ++m) {
    const auto q = hypercube_coloured(m);
    const bool shape = q.graph.num_edges() == (m << (m - 1)) && is_proper(q.graph, q.colouring);
    const bool oracle_none = !oracle::has_rainbow_cycle(q.graph, q.colouring, [](std::size_t) { return true; });
    const auto res = find_rainbow_even_cycle(q.graph, q.colouring);
    const bool certified = res.search.outcome == Outcome::kAbsent;
    ok = ok && shape && oracle_none && certified;
    notes += format("Q%zu:%s ", m, shape && oracle_none && certified ? "absent" : "WRONG");
  }
  const auto q5 = hypercube_coloured(5);
  SearchOptions opts;
  opts.budget = 10'000'000;
  opts.exact_max_n = 0;
  std::size_t hits = 0;
  for (std::size_t k = 2; k <= 4; ++k) {
    opts.seed = derive_seed(kSeed, 60 + k);
    hits += find_rainbow_2k_cycle(q5.graph, q5.colouring, k, opts).outcome == Outcome::kFound;
  }
  opts.seed = derive_seed(kSeed, 69);
  hits += find_rainbow_even_cycle(q5.graph, q5.colouring, opts).search.outcome == Outcome::kFound;
  ok = ok && hits == 0 && q5.graph.num_edges() == 80 && is_proper(q5.graph, q5.colouring);
  return {ok, notes + format("Q5: %zu randomized hits at budget 1e7", hits)};
}

// 7 -------------------------------------------------------------------------
Verdict positive_controls() {
  auto t0 = std::chrono::steady_clock::now();
  const Graph k50 = complete_graph(50);
  const auto c50 = greedy_proper_colouring(k50, kSeed);
  SearchOptions opts;
  opts.budget = 1'000'000;
  opts.seed = derive_seed(kSeed, 7);
  const auto cyc = find_rainbow_2k_cycle(k50, c50, 2, opts);
  const double cyc_secs = seconds_since(t0);
  const bool cyc_ok = cyc.outcome == Outcome::kFound && cyc.witness.size() == 4 && is_cycle(k50, cyc.witness) &&
                      is_rainbow_cycle(k50, c50, cyc.witness) && cyc_secs < 10;

  t0 = std::chrono::steady_clock::now();
  const Graph k60 = complete_graph(60);
  const auto c60 = greedy_proper_colouring(k60, kSeed);
  const auto th = find_rainbow_theta(k60, c60, 2, 3, opts);
  const double th_secs = seconds_since(t0);
  const bool th_ok = th.outcome == Outcome::kFound && th.witness && is_rainbow_theta(k60, c60, *th.witness, 2, 3) &&
                     th_secs < 60;
  return {cyc_ok && th_ok, format("K50 C4 %s in %.3f s (%llu draws); K60 theta(2,3) %s in %.3f s",
                                  cyc_ok ? "validated" : "FAILED", cyc_secs,
                                  static_cast<unsigned long long>(cyc.draws), th_ok ? "validated" : "FAILED", th_secs)};
}

// 8 -------------------------------------------------------------------------
Verdict negative_control() {
  const Graph k4 = complete_graph(4);
  EdgeColouring c;
  c.set(0, 1, 0);
  c.set(2, 3, 0);
  c.set(0, 2, 1);
  c.set(1, 3, 1);
  c.set(0, 3, 2);
  c.set(1, 2, 2);
  const bool oracle_has = oracle::has_rainbow_cycle(k4, c, [](std::size_t len) { return len == 4; });
  const auto res = find_rainbow_2k_cycle(k4, c, 2);
  const bool certified = res.outcome == Outcome::kAbsent && (res.phase == "exact" || res.phase == "trivial");
  return {certified && !oracle_has,
          format("search: %s via %s phase; oracle: %s", to_string(res.outcome), res.phase.c_str(),
                 oracle_has ? "rainbow C4 exists" : "no rainbow C4")};
}

// 9 -------------------------------------------------------------------------
Verdict intersection_bounds() {
  Rng rng(derive_seed(kSeed, 9));
  std::size_t certs = 0, violations = 0, sampled = 0;
  for (std::size_t n = 2; n <= 8; ++n) {
    for (std::size_t r = 1; r <= 3 && r <= n; ++r) {
      const Graph kn = complete_graph(n);
      for (std::uint64_t s = 0; s < 3; ++s) {
        const auto tg = build_tuple_graph(kn, greedy_proper_colouring(kn, derive_seed(kSeed, 90 + s)), r);
        const auto cert = check_tuple_intersection_bound(tg, {});
        ++certs;
        sampled += !cert.exhaustive;
        violations += cert.violations + !cert.passed;
      }
      for (std::size_t i = 0; i < 5; ++i) {
        const auto sg = build_subset_graph(random_graph(n, 0.3 + 0.6 * rng.unit(), rng.next()), r);
        if (sg.graph.num_edges() == 0) continue;
        const auto cert = check_subset_intersection_bound(sg, {});
        ++certs;
        sampled += !cert.exhaustive;
        violations += cert.violations + !cert.passed;
      }
    }
  }
  return {violations == 0 && sampled == 0,
          format("%zu exhaustive certificates (n<=8, r<=3), %zu violations, %zu sampled", certs, violations, sampled)};
}

// 10 ------------------------------------------------------------------------
Verdict extraction_floors() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(derive_seed(kSeed, 10));
  std::size_t step2_bad = 0, blowup_bad = 0, below_guard = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    const std::size_t n = 150 + rng.below(151);
    const Graph g = random_graph(n, 0.45 + 0.4 * rng.unit(), rng.next());
    if (2.0 * static_cast<double>(g.num_edges()) / static_cast<double>(n) < 64) ++below_guard;
    const auto step2 = bipartite_step2(g);
    if (!step2.passed || !remeasure(g, step2)) ++step2_bad;
    const auto blow = blowup_biregular(g, n, 1, {rng.next(), 100});
    if (!blow.passed || !remeasure(g, blow)) ++blowup_bad;
  }
  // The subset graph of pairs is the auxiliary graph the blow-up search uses.
  std::size_t pair_bad = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    const Graph g = random_graph(12 + rng.below(9), 0.6 + 0.3 * rng.unit(), rng.next());
    const auto sg = build_subset_graph(g, 2);
    if (sg.graph.num_edges() == 0) {
      ++pair_bad;
      continue;
    }
    const auto blow = blowup_biregular(sg.graph, g.num_vertices(), 2, {rng.next(), 100});
    if (!blow.passed || !remeasure(sg.graph, blow)) ++pair_bad;
  }
  const double secs = seconds_since(t0);
  return {below_guard == 0 && step2_bad == 0 && blowup_bad == 0 && pair_bad == 0,
          format("100 dense graphs: step2 failures %zu, blow-up (r=1) failures %zu; 100 pair graphs (r=2): "
                 "failures %zu; %.1f s",
                 step2_bad, blowup_bad, pair_bad, secs)};
}

// 11 ------------------------------------------------------------------------
Verdict sampler_uniformity() {
  struct Case {
    const char* name;
    Graph g;
    std::size_t k;
  };
  const std::vector<Case> cases{{"K2/C4", complete_graph(2), 2},
                                {"C4/C4", cycle_graph(4), 2},
                                {"K4/C4", complete_graph(4), 2},
                                {"K23/C4", complete_bipartite_graph(2, 3), 2},
                                {"C6/C6", cycle_graph(6), 3}};
  constexpr std::size_t kDraws = 100'000;
  bool ok = true;
  std::string notes;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& cs = cases[i];
    std::map<std::vector<Vertex>, std::size_t> seen;
    oracle::for_each_closed_walk(cs.g, 2 * cs.k, [&](const std::vector<Vertex>& w) { seen.emplace(w, 0); });
    const std::size_t support = seen.size();
    CycleSampler sampler(cs.g, cs.k);
    Rng rng(derive_seed(kSeed, 110 + i));
    std::size_t strays = 0;
    for (std::size_t d = 0; d < kDraws; ++d) {
      const auto it = seen.find(sampler.sample(rng));
      if (it == seen.end()) {
        ++strays;
      } else {
        ++it->second;
      }
    }
    double tv = 0;
    for (const auto& [w, cnt] : seen) {
      tv += std::fabs(static_cast<double>(cnt) / kDraws - 1.0 / static_cast<double>(support));
    }
    tv /= 2;
    const bool case_ok = strays == 0 && BigCount(support) == hom_cycle(cs.g, 2 * cs.k) && support <= 10000 &&
                         tv < 0.02;
    ok = ok && case_ok;
    notes += format("%s hom=%zu TV=%.4f%s; ", cs.name, support, tv, case_ok ? "" : " FAIL");
  }
  return {ok, notes + "1e5 draws each"};
}

// 12 ------------------------------------------------------------------------
Verdict pipeline_agreement() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto codes = catalogue::all_graph_codes(8);
  std::size_t instances = 0, found = 0, disagree = 0, inconclusive = 0, invalid = 0;
  SearchOptions opts;
  opts.budget = 20'000;
  for (std::size_t n = 1; n <= 8; ++n) {
    for (std::size_t i = 0; i < codes[n].size(); ++i) {
      const Graph g = catalogue::from_code(n, codes[n][i]);
      opts.seed = derive_seed(kSeed, instances);
      const auto res = find_blowup_cycle(g, 2, 2, opts);
      const bool expected = oracle::has_blowup_cycle(g, 2, 2);
      ++instances;
      if (res.outcome == Outcome::kInconclusive) {
        ++inconclusive;
      } else if (res.outcome == Outcome::kFound) {
        ++found;
        if (!res.witness || !is_blowup_cycle(g, *res.witness, 2)) ++invalid;
        if (!expected) ++disagree;
      } else if (expected) {
        ++disagree;
      }
    }
  }
  std::size_t iso_instances = 0, iso_found = 0;
  for (std::size_t n = 4; n <= 8; ++n) {
    const Graph g = complete_graph(n);
    std::vector<EdgeColouring> colourings;
    for (std::uint64_t s = 0; s < 5; ++s) colourings.push_back(greedy_proper_colouring(g, derive_seed(kSeed, 120 + s)));
    if (n % 2 == 0) colourings.push_back(round_robin_colouring(g));
    for (const auto& c : colourings) {
      opts.seed = derive_seed(kSeed, 200 + iso_instances);
      const auto res = find_colour_isomorphic_cycles(g, c, 2, 2, opts);
      const bool expected = oracle::has_colour_isomorphic_cycles(n, c, 2, 2);
      ++iso_instances;
      if (res.outcome == Outcome::kInconclusive) {
        ++inconclusive;
      } else if (res.outcome == Outcome::kFound) {
        ++iso_found;
        if (!res.witness || !is_colour_isomorphic_family(g, c, *res.witness, 2, 2)) ++invalid;
        if (!expected) ++disagree;
      } else if (expected) {
        ++disagree;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {disagree == 0 && inconclusive == 0 && invalid == 0,
          format("blow-up: %zu graphs (%zu found); colour-iso: %zu coloured K_n (%zu found); %zu disagreements, "
                 "%zu inconclusive, %zu invalid witnesses; %.1f s",
                 instances, found, iso_instances, iso_found, disagree, inconclusive, invalid, secs)};
}

// 13 ------------------------------------------------------------------------
struct RunOutput {
  int code;
  std::string out;
};

RunOutput run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "rainbow");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str() + "\n--stderr--\n" + err.str()};
}

Verdict reproducibility() {
  const auto dir = std::filesystem::temp_directory_path() / "rainbow-acceptance";
  std::filesystem::create_directories(dir);
  auto save = [&](const std::string& name, const std::string& text) {
    const auto p = (dir / name).string();
    std::ofstream(p, std::ios::binary) << text;
    return p;
  };
  auto gen = [](std::vector<std::string> args) {
    args.insert(args.begin(), "rainbow");
    args.push_back("--no-timestamp");
    std::ostringstream out, err;
    cli::run(args, out, err);
    return out.str();
  };
  const auto g = save("g.cg", gen({"gen", "random-coloured", "--n", "40", "--p", "0.3", "--seed", "5"}));
  const auto k8 = save("k8.cg", gen({"gen", "complete", "--n", "8", "--seed", "5"}));
  const auto q4 = save("q4.cg", gen({"gen", "hypercube", "--m", "4"}));
  const std::vector<std::vector<std::string>> commands{
      {"gen", "random", "--n", "30", "--p", "0.2", "--seed", "7"},
      {"gen", "random-coloured", "--n", "30", "--p", "0.2", "--seed", "7"},
      {"gen", "complete", "--n", "12", "--seed", "7"},
      {"gen", "hypercube", "--m", "5"},
      {"gen", "subset", "--in", k8, "--r", "2"},
      {"gen", "tuple", "--in", k8, "--r", "2"},
      {"verify", "proper", "--in", g},
      {"verify", "ratio", "--in", g, "--k", "4"},
      {"verify", "sidorenko", "--in", g, "--k", "3"},
      {"verify", "interpolation", "--in", g, "--k", "3", "--l", "1"},
      {"verify", "bipartite-min-degree", "--in", q4, "--k", "3"},
      {"verify", "keylemma", "--in", g, "--k", "2", "--seed", "7"},
      {"verify", "dyadic", "--in", g, "--k", "2", "--seed", "7"},
      {"verify", "almost-regular", "--in", g, "--eps", "0.25", "--c", "1", "--seed", "7"},
      {"verify", "step1", "--in", g, "--min-average-degree", "4", "--seed", "7"},
      {"verify", "step2", "--in", g, "--min-average-degree", "4", "--seed", "7"},
      {"verify", "blowup", "--in", g, "--r", "2", "--seed", "7"},
      {"verify", "tuple-bound", "--in", k8, "--r", "2", "--seed", "7"},
      {"verify", "subset-bound", "--in", g, "--r", "2", "--seed", "7"},
      {"verify", "mono-matchings", "--in", k8, "--r", "2"},
      {"verify", "krr", "--in", g, "--r", "2"},
      {"verify", "hom", "--in", g, "--k", "3"},
      {"search", "rainbow-cycle", "--in", g, "--k", "3", "--seed", "7"},
      {"search", "rainbow-cycle", "--in", g, "--seed", "7", "--chains", "4", "--threads", "2"},
      {"search", "theta", "--in", g, "--k", "2", "--t", "2", "--seed", "7"},
      {"search", "blowup", "--in", g, "--r", "2", "--seed", "7"},
      {"search", "colour-iso", "--in", k8, "--r", "2", "--k", "2", "--seed", "7"},
      {"sweep", "keylemma", "--nmax", "6", "--k", "2", "--seed", "7", "--format", "csv", "--threads", "2"},
      {"sweep", "keylemma", "--nmax", "5", "--k", "3", "--seed", "7", "--format", "json"},
  };
  std::size_t differing = 0, errors = 0;
  std::string names;
  for (auto args : commands) {
    args.push_back("--no-timestamp");
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    if (a.code != b.code || a.out != b.out) {
      ++differing;
      names += args[0] + " " + args[1] + "; ";
    }
    if (a.code == cli::kUsage) {
      ++errors;
      names += "usage error: " + args[0] + " " + args[1] + "; ";
    }
  }
  return {differing == 0 && errors == 0,
          format("%zu seeded commands run twice, %zu differ, %zu rejected %s", commands.size(), differing, errors,
                 names.c_str())};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"cycle homomorphism counts match closed-walk enumeration", counting_oracle},
      {"exact counts match the spectral sum", spectral_cross_check},
      {"ratio monotonicity and Sidorenko certificates", ratio_and_sidorenko},
      {"bad-cycle bound sweep over all graphs on <=9 vertices", key_lemma_sweep},
      {"bipartite min-degree lower bound", bipartite_min_degree},
      {"hypercube colouring has no rainbow cycle", hypercube},
      {"rainbow search positive controls", positive_controls},
      {"rainbow search negative control", negative_control},
      {"tuple and subset intersection bounds", intersection_bounds},
      {"extraction post-conditions", extraction_floors},
      {"cycle sampler uniformity", sampler_uniformity},
      {"blow-up and colour-isomorphic pipelines match oracles", pipeline_agreement},
      {"seeded commands are byte-identical", reproducibility},
  };
  std::set<std::size_t> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoul(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const std::size_t id = i + 1;
    if (!only.empty() && !only.count(id)) continue;
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("[%s] %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", id, criteria[i].first, v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
