#include <catch2/catch_amalgamated.hpp>

#include "netexp/generators.hpp"
#include "netexp/graph.hpp"
#include "test_support.hpp"

using namespace netexp;
using namespace netexp::testing;

TEST_CASE("Graph rejects self-loops and reports duplicates") {
  Graph g(3);
  REQUIRE_THROWS_AS(g.add_edge(1, 1), std::invalid_argument);
  REQUIRE(g.add_edge(0, 1));
  REQUIRE_FALSE(g.add_edge(1, 0));
  REQUIRE(g.edge_count() == 1);
  REQUIRE(g.has_edge(0, 1));
  REQUIRE(g.has_edge(1, 0));
  REQUIRE_THROWS_AS(g.add_edge(0, 7), std::invalid_argument);
}

TEST_CASE("erdos renyi endpoints") {
  SECTION("p = 1 forces the complete graph") {
    Graph g = gen_erdos_renyi(5, 1.0, 3);
    REQUIRE(g.edge_count() == 10);
  }
  SECTION("p = 0 yields isolated nodes") {
    Graph g = gen_erdos_renyi(3, 0.0, 3);
    REQUIRE(g.edge_count() == 0);
  }
  SECTION("preconditions") {
    REQUIRE_THROWS_AS(gen_erdos_renyi(0, 0.5, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(gen_erdos_renyi(5, 1.5, 1), std::invalid_argument);
  }
}

TEST_CASE("erdos renyi edge count matches the binomial law") {
  // 499500 candidate pairs at p = 0.01: mean 4995, variance ~4945. The mean
  // over 100 seeds must land within 4 standard errors.
  const std::size_t seeds = 100;
  double total = 0.0;
  for (std::size_t s = 0; s < seeds; ++s) {
    total += static_cast<double>(gen_erdos_renyi(1000, 0.01, 9000 + s).edge_count());
  }
  const double mean = total / static_cast<double>(seeds);
  const double expect = 499500.0 * 0.01;
  const double sigma = std::sqrt(499500.0 * 0.01 * 0.99);
  const double band = 4.0 * sigma / std::sqrt(static_cast<double>(seeds));
  REQUIRE(std::abs(mean - expect) <= band);
}

TEST_CASE("preferential attachment structure") {
  SECTION("n = m + 1 is just the seed clique") {
    Graph g = gen_preferential_attachment(3, 2, 1);
    REQUIRE(g.edge_count() == 3);
    REQUIRE(g.degree(0) == 2);
  }
  SECTION("edge count is forced by construction") {
    Graph g = gen_preferential_attachment(100, 2, 7);
    REQUIRE(g.edge_count() == 3 + 2 * 97);
  }
  SECTION("rejects n <= m") {
    REQUIRE_THROWS_AS(gen_preferential_attachment(2, 2, 1), std::invalid_argument);
  }
  SECTION("connected") {
    REQUIRE(is_connected(gen_preferential_attachment(500, 2, 11)));
  }
}

TEST_CASE("preferential attachment grows a heavier tail than erdos renyi") {
  // Same node count, matched mean degree; count nodes of degree >= 20
  // aggregated over 20 seeds each.
  const std::size_t n = 10000;
  std::size_t pa_heavy = 0, er_heavy = 0, pa_edges = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    Graph pa = gen_preferential_attachment(n, 2, 100 + s);
    pa_edges += pa.edge_count();
    for (node_id v = 0; v < n; ++v) {
      if (pa.degree(v) >= 20) ++pa_heavy;
    }
  }
  const double mean_edges =
      static_cast<double>(pa_edges) / 20.0;
  const double p = 2.0 * mean_edges / (static_cast<double>(n) * (n - 1));
  for (std::uint64_t s = 0; s < 20; ++s) {
    Graph er = gen_erdos_renyi(n, p, 200 + s);
    for (node_id v = 0; v < n; ++v) {
      if (er.degree(v) >= 20) ++er_heavy;
    }
  }
  REQUIRE(pa_heavy > er_heavy);
}

TEST_CASE("generators are bit-for-bit reproducible") {
  REQUIRE(gen_erdos_renyi(200, 0.03, 5) == gen_erdos_renyi(200, 0.03, 5));
  REQUIRE(gen_preferential_attachment(200, 3, 5) ==
          gen_preferential_attachment(200, 3, 5));
  REQUIRE_FALSE(gen_erdos_renyi(200, 0.03, 5) == gen_erdos_renyi(200, 0.03, 6));
}

TEST_CASE("neighborhood") {
  Graph g = layered_visibility_graph();
  SECTION("selected path plus one hop") {
    node_list hop1 = neighborhood(g, {0, 1, 2}, 1);
    REQUIRE(hop1 == node_list{0, 1, 2, 3, 4, 5});
  }
  SECTION("two hops reach the second ring") {
    node_list hop2 = neighborhood(g, {0, 1, 2}, 2);
    REQUIRE(hop2 == node_list{0, 1, 2, 3, 4, 5, 6, 7, 8});
  }
  SECTION("isolated node sees only itself") {
    Graph lone(4);
    lone.add_edge(0, 1);
    REQUIRE(neighborhood(lone, {3}, 5) == node_list{3});
  }
  SECTION("path: two hops from one end") {
    Graph path = make_path(3);
    REQUIRE(neighborhood(path, {0}, 2) == node_list{0, 1, 2});
  }
  SECTION("monotone in the radius and decomposes over unions") {
    Graph r = gen_random_connected(30, 15, 77);
    node_list s{1, 4}, t{9};
    for (unsigned l = 1; l <= 3; ++l) {
      node_list inner = neighborhood(r, s, l);
      node_list outer = neighborhood(r, s, l + 1);
      REQUIRE(std::includes(outer.begin(), outer.end(), inner.begin(), inner.end()));
      node_list joint = neighborhood(r, {1, 4, 9}, l);
      node_list lhs = neighborhood(r, s, l);
      node_list rhs = neighborhood(r, t, l);
      node_list merged;
      std::set_union(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
                     std::back_inserter(merged));
      REQUIRE(joint == merged);
    }
  }
  SECTION("radius zero rejected") {
    REQUIRE_THROWS_AS(neighborhood(g, {0}, 0), std::invalid_argument);
  }
}

TEST_CASE("max degree") {
  REQUIRE(max_degree(make_star(4)) == 4);
  Graph empty(3);
  REQUIRE(max_degree(empty) == 0);
  Graph r = gen_erdos_renyi(120, 0.05, 5);
  std::size_t expect = 0;
  for (node_id v = 0; v < r.node_count(); ++v) {
    expect = std::max(expect, r.neighbors(v).size());
  }
  REQUIRE(max_degree(r) == expect);
}

TEST_CASE("is_connected_subset") {
  Graph path = make_path(3);
  REQUIRE(is_connected_subset(path, {1}));
  REQUIRE_FALSE(is_connected_subset(path, {0, 2}));
  REQUIRE(is_connected_subset(path, {0, 1, 2}));
  REQUIRE_THROWS_AS(is_connected_subset(path, {}), std::invalid_argument);
}
