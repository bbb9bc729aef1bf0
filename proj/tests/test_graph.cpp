#include <gtest/gtest.h>

#include <cmath>

#include "rainbow/rainbow.hpp"

using namespace rainbow;

TEST(LoadGraph, ParsesSimpleDocument) {
  const Graph g = load_graph("3\n0 1\n1 2");
  EXPECT_EQ(g.num_vertices(), 3u);
  ASSERT_EQ(g.num_edges(), 2u);
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_FALSE(g.has_edge(0, 2));
}

TEST(LoadGraph, CommentsBlankLinesAndCrlf) {
  const Graph g = load_graph("# header\r\n\r\n4\r\n  # inner\r\n0 3\r\n2 1\r\n");
  EXPECT_EQ(g.num_vertices(), 4u);
  EXPECT_EQ(g.num_edges(), 2u);
}

TEST(LoadGraph, ReportsErrorsWithLines) {
  auto kind_and_line = [](const std::string& doc) {
    try {
      load_graph(doc);
    } catch (const ParseError& e) {
      return std::make_pair(e.kind(), e.line());
    }
    ADD_FAILURE() << "no error for " << doc;
    return std::make_pair(ParseError::Kind::kMalformed, std::size_t{0});
  };
  EXPECT_EQ(kind_and_line("2\n0 0"), std::make_pair(ParseError::Kind::kSelfLoop, std::size_t{2}));
  EXPECT_EQ(kind_and_line("1\n0 1"), std::make_pair(ParseError::Kind::kOutOfRange, std::size_t{2}));
  EXPECT_EQ(kind_and_line("3\n0 1\n# c\n1 0"),
            std::make_pair(ParseError::Kind::kDuplicateEdge, std::size_t{4}));
  EXPECT_EQ(kind_and_line("3\n0 x"), std::make_pair(ParseError::Kind::kMalformed, std::size_t{2}));
  EXPECT_EQ(kind_and_line("3\n0 1 2"), std::make_pair(ParseError::Kind::kMalformed, std::size_t{2}));
  EXPECT_EQ(kind_and_line(""), std::make_pair(ParseError::Kind::kMalformed, std::size_t{1}));
}

TEST(LoadGraph, RoundTripIsIdentityOnCanonicalDocuments) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_graph(15, 0.3, seed);
    const std::string doc = write_graph(g);
    EXPECT_EQ(write_graph(load_graph(doc)), doc);
    EXPECT_EQ(load_graph(doc), g);
  }
}

TEST(LoadGraph, ColouredRoundTrip) {
  const Graph g = complete_graph(6);
  const auto c = greedy_proper_colouring(g, 3);
  const std::string doc = write_coloured_graph(g, c);
  const auto back = load_coloured_graph(doc);
  EXPECT_EQ(back.graph, g);
  EXPECT_EQ(write_coloured_graph(back.graph, back.colouring), doc);
  const auto any = load_any_graph(doc);
  EXPECT_TRUE(any.second.has_value());
}

TEST(ValidateProper, Examples) {
  const Graph k3 = complete_graph(3);
  EdgeColouring c;
  c.set(0, 1, 0);
  c.set(1, 2, 1);
  c.set(0, 2, 2);
  EXPECT_TRUE(validate_proper(k3, c).empty());

  const Graph p = path_graph(3);
  EdgeColouring bad;
  bad.set(0, 1, 0);
  bad.set(1, 2, 0);
  const auto v = validate_proper(p, bad);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].vertex, 1u);
  EXPECT_EQ(v[0].colour, 0u);
  EXPECT_EQ(v[0].first, (Edge{0, 1}));
  EXPECT_EQ(v[0].second, (Edge{1, 2}));
}

TEST(ValidateProper, K4OneFactorization) {
  const Graph k4 = complete_graph(4);
  EdgeColouring c;
  c.set(0, 1, 0);
  c.set(2, 3, 0);
  c.set(0, 2, 1);
  c.set(1, 3, 1);
  c.set(0, 3, 2);
  c.set(1, 2, 2);
  EXPECT_TRUE(validate_proper(k4, c).empty());
  EXPECT_EQ(c.palette_size(), 3u);
  EXPECT_TRUE(is_proper(k4, round_robin_colouring(k4)));
}

TEST(ValidateProper, RejectsPartialColouring) {
  EdgeColouring c;
  c.set(0, 1, 0);
  EXPECT_THROW(validate_proper(path_graph(3), c), PreconditionError);
}

TEST(RoundRobin, ProperWithMinimumPalette) {
  for (std::size_t n = 2; n <= 12; ++n) {
    const Graph g = complete_graph(n);
    const auto c = round_robin_colouring(g);
    EXPECT_TRUE(is_proper(g, c)) << n;
    EXPECT_EQ(c.palette_size(), n % 2 == 0 ? n - 1 : n) << n;
  }
  EXPECT_THROW(round_robin_colouring(cycle_graph(5)), PreconditionError);
}

TEST(RandomGraph, ExtremesAndReproducibility) {
  EXPECT_EQ(random_graph(5, 0.0, 1).num_edges(), 0u);
  EXPECT_EQ(random_graph(5, 1.0, 1), complete_graph(5));
  EXPECT_EQ(random_graph(40, 0.3, 9), random_graph(40, 0.3, 9));
  EXPECT_NE(random_graph(40, 0.3, 9), random_graph(40, 0.3, 10));
  EXPECT_THROW(random_graph(5, 1.5, 1), PreconditionError);
}

TEST(RandomGraph, EdgeCountWithinFiveSigma) {
  const Graph g = random_graph(100, 0.5, 7);
  const double mean = 4950 * 0.5;
  const double sigma = std::sqrt(4950 * 0.25);
  EXPECT_LT(std::abs(static_cast<double>(g.num_edges()) - mean), 5 * sigma);
}

TEST(GreedyColouring, Examples) {
  const Graph edge = complete_graph(2);
  EXPECT_EQ(greedy_proper_colouring(edge, 1).palette_size(), 1u);
  const Graph star = star_graph(4);
  const auto cs = greedy_proper_colouring(star, 5);
  EXPECT_EQ(cs.palette_size(), 4u);
  EXPECT_TRUE(is_proper(star, cs));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EXPECT_TRUE(validate_proper(complete_graph(6), greedy_proper_colouring(complete_graph(6), seed)).empty());
  }
}

TEST(GreedyColouring, AlwaysProperWithinGreedyBound) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Graph g = random_graph(25, 0.25, seed);
    const auto c = greedy_proper_colouring(g, seed + 100);
    EXPECT_TRUE(is_proper(g, c));
    if (g.num_edges() > 0) {
      EXPECT_LE(c.palette_size(), 2 * g.max_degree() - 1);
    }
  }
}

TEST(BipartiteSubgraph, Examples) {
  auto k3 = bipartite_subgraph(complete_graph(3), {{0}, {1}});
  EXPECT_EQ(k3.graph.num_edges(), 1u);
  EXPECT_EQ(k3.to_parent, (std::vector<Vertex>{0, 1}));

  auto k4 = bipartite_subgraph(complete_graph(4), {{0, 1}, {2, 3}});
  EXPECT_EQ(k4.graph.num_edges(), 4u);
  EXPECT_EQ(k4.graph.max_degree(), 2u);
  EXPECT_EQ(k4.graph.min_degree(), 2u);

  const Graph c6 = cycle_graph(6);
  auto alt = bipartite_subgraph(c6, {{0, 2, 4}, {1, 3, 5}});
  EXPECT_EQ(alt.graph, c6);

  EXPECT_THROW(bipartite_subgraph(c6, {{0, 1}, {1, 2}}), PreconditionError);
  EXPECT_THROW(bipartite_subgraph(c6, {{0, 9}, {1}}), PreconditionError);
}

TEST(BipartiteSubgraph, MaxDegreeNeverGrows) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = random_graph(20, 0.4, seed);
    BipartitePartition part;
    Rng rng(seed);
    for (Vertex v = 0; v < 20; ++v) {
      const auto r = rng.below(3);
      if (r == 1) part.left.push_back(v);
      if (r == 2) part.right.push_back(v);
    }
    const auto sub = bipartite_subgraph(g, part);
    EXPECT_LE(sub.graph.max_degree(), g.max_degree());
    for (const Edge& e : sub.graph.edges()) {
      EXPECT_TRUE(g.has_edge(sub.to_parent[e.u], sub.to_parent[e.v]));
    }
  }
}

TEST(Graph, RejectsInvalidEdgeLists) {
  EXPECT_THROW(Graph::from_edges(3, {{0, 0}}), PreconditionError);
  EXPECT_THROW(Graph::from_edges(3, {{0, 1}, {1, 0}}), PreconditionError);
  EXPECT_THROW(Graph::from_edges(3, {{0, 3}}), PreconditionError);
}

TEST(Graph, AdjacencyIsSymmetricAndSorted) {
  const Graph g = random_graph(30, 0.3, 4);
  for (Vertex u = 0; u < 30; ++u) {
    const auto nb = g.neighbours(u);
    EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
    for (std::size_t i = 0; i < nb.size(); ++i) {
      EXPECT_TRUE(g.has_edge(nb[i], u));
      const Edge& e = g.edges()[g.incident_edges(u)[i]];
      EXPECT_EQ(e, make_edge(u, nb[i]));
    }
  }
}

TEST(Generators, Shapes) {
  EXPECT_EQ(petersen_graph().num_edges(), 15u);
  EXPECT_EQ(petersen_graph().min_degree(), 3u);
  EXPECT_EQ(blowup_graph(cycle_graph(6), 2).num_edges(), 24u);
  EXPECT_EQ(complete_bipartite_graph(3, 4).num_edges(), 12u);
  EXPECT_EQ(disjoint_union(complete_graph(3), path_graph(4)).num_edges(), 6u);
  const auto perm = random_permutation(10, 3);
  EXPECT_TRUE(std::is_permutation(perm.begin(), perm.end(), random_permutation(10, 4).begin()));
}
