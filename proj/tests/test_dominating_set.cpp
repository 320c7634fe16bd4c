#include <catch2/catch_amalgamated.hpp>

#include "netexp/dominating_set.hpp"
#include "netexp/generators.hpp"
#include "test_support.hpp"

using namespace netexp;
using namespace netexp::testing;

TEST_CASE("greedy cds on canonical shapes") {
  SECTION("star is dominated by its hub") {
    REQUIRE(greedy_cds(make_star(6)) == node_list{0});
  }
  SECTION("complete graph needs one node") {
    REQUIRE(greedy_cds(make_complete(5)).size() == 1);
  }
  SECTION("length-four path needs its two middle nodes") {
    REQUIRE(greedy_cds(make_path(4)) == node_list{1, 2});
  }
  SECTION("disconnected input rejected") {
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    REQUIRE_THROWS_AS(greedy_cds(g), std::invalid_argument);
  }
}

TEST_CASE("exhaustive minimum cds") {
  SECTION("star") { REQUIRE(brute_force_min_cds(make_star(5)).size() == 1); }
  SECTION("five-cycle needs three nodes") {
    REQUIRE(brute_force_min_cds(make_cycle(5)).size() == 3);
  }
  SECTION("complete graph") {
    REQUIRE(brute_force_min_cds(make_complete(4)).size() == 1);
  }
  SECTION("size guard") {
    REQUIRE_THROWS_AS(brute_force_min_cds(make_path(25)), std::invalid_argument);
  }
  SECTION("disconnected rejected") {
    Graph g(3);
    g.add_edge(0, 1);
    REQUIRE_THROWS_AS(brute_force_min_cds(g), std::invalid_argument);
  }
  SECTION("result is a connected dominating set") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Graph g = gen_random_connected(9, 4, 500 + seed);
      MinCdsResult min_cds = brute_force_min_cds(g);
      REQUIRE(neighborhood(g, min_cds.nodes, 1).size() == g.node_count());
      REQUIRE(is_connected_subset(g, min_cds.nodes));
    }
  }
}

TEST_CASE("greedy cds stays within the logarithmic factor of optimal") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Graph g = gen_random_connected(4 + seed % 9, seed % 7, 900 + seed);
    node_list greedy = greedy_cds(g);
    REQUIRE(neighborhood(g, greedy, 1).size() == g.node_count());
    REQUIRE(is_connected_subset(g, greedy));
    const std::size_t gamma = brute_force_min_cds(g).size();
    const double delta = static_cast<double>(max_degree(g));
    const double factor = 2.0 + 2.0 * std::log(std::max(delta, std::exp(1.0)));
    REQUIRE(static_cast<double>(greedy.size()) <=
            factor * static_cast<double>(gamma));
  }
}
