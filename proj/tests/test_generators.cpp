#include <catch2/catch_amalgamated.hpp>

#include "netexp/generators.hpp"
#include "test_support.hpp"

using namespace netexp;

TEST_CASE("feature overlay on a forced triangle") {
  // One feature over all three nodes with m = 2: the subgraph is the seed
  // clique, all degrees tie, and the id tie-break pins the rank values.
  OverlayResult overlay = gen_feature_overlay(FeatureOverlayConfig(1, 3, 1.0, 2), 5);
  REQUIRE(overlay.graph.edge_count() == 3);
  REQUIRE(overlay.features.value(0, 0) == 1.0);
  REQUIRE(overlay.features.value(1, 0) == Catch::Approx(2.0 / 3.0));
  REQUIRE(overlay.features.value(2, 0) == Catch::Approx(1.0 / 3.0));
  REQUIRE(overlay.degenerate_features.empty());
}

TEST_CASE("feature overlay with zero membership probability") {
  OverlayResult overlay = gen_feature_overlay(FeatureOverlayConfig(2, 10, 0.0, 2), 5);
  REQUIRE(overlay.graph.edge_count() == 0);
  for (node_id v = 0; v < 10; ++v) {
    REQUIRE(overlay.features.features_of(v).empty());
  }
  REQUIRE(overlay.degenerate_features.size() == 2);
}

TEST_CASE("tiny memberships fall back to a clique") {
  // theta small enough that some features end up with fewer than m+1 members
  FeatureOverlayConfig config(6, 8, 0.2, 3);
  OverlayResult overlay = gen_feature_overlay(config, 17);
  for (feature_id x : overlay.degenerate_features) {
    node_list members;
    for (node_id v = 0; v < 8; ++v) {
      if (overlay.features.value(v, x) > 0.0) members.push_back(v);
    }
    // every member pair of a degenerate feature is directly connected
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        REQUIRE(overlay.graph.has_edge(members[i], members[j]));
      }
    }
  }
}

TEST_CASE("overlay feature counts concentrate around theta * features") {
  // 10 features at theta = 0.2: binomial mean 2 per node; the empirical mean
  // over all nodes must land within 4 standard errors.
  const std::size_t n = 100000;
  OverlayResult overlay = gen_feature_overlay(FeatureOverlayConfig(10, n, 0.2, 2), 23);
  std::size_t total = 0;
  for (node_id v = 0; v < n; ++v) {
    total += overlay.features.features_of(v).size();
  }
  const double mean = static_cast<double>(total) / static_cast<double>(n);
  const double band = 4.0 * std::sqrt(10.0 * 0.2 * 0.8 / static_cast<double>(n));
  REQUIRE(std::abs(mean - 2.0) <= band);
}

TEST_CASE("overlay rank values are a proper (0,1] scale per feature") {
  OverlayResult overlay =
      gen_feature_overlay(FeatureOverlayConfig(3, 400, 0.5, 2), 29);
  for (feature_id x = 0; x < 3; ++x) {
    double top = 0.0;
    std::size_t members = 0;
    for (node_id v = 0; v < 400; ++v) {
      double val = overlay.features.value(v, x);
      if (val > 0.0) {
        ++members;
        top = std::max(top, val);
        REQUIRE(val <= 1.0);
      }
    }
    REQUIRE(members > 0);
    REQUIRE(top == 1.0);
  }
}

TEST_CASE("overlay members stay mutually reachable inside the union graph") {
  // Each per-feature subgraph is connected by construction when membership
  // exceeds m, and it survives inside the union.
  OverlayResult overlay =
      gen_feature_overlay(FeatureOverlayConfig(4, 300, 0.3, 2), 31);
  for (feature_id x = 0; x < 4; ++x) {
    node_list members;
    for (node_id v = 0; v < 300; ++v) {
      if (overlay.features.value(v, x) > 0.0) members.push_back(v);
    }
    if (members.size() <= 1) continue;
    REQUIRE(is_connected_subset(overlay.graph, members));
  }
}

TEST_CASE("overlay determinism") {
  FeatureOverlayConfig config(5, 500, 0.25, 2);
  OverlayResult a = gen_feature_overlay(config, 41);
  OverlayResult b = gen_feature_overlay(config, 41);
  REQUIRE(a.graph == b.graph);
  REQUIRE(a.features == b.features);
}

TEST_CASE("overlay config validation") {
  FeatureOverlayConfig bad(2, 10, 0.5, 2);
  bad.feature_probability[1] = 1.5;
  REQUIRE_THROWS_AS(gen_feature_overlay(bad, 1), std::invalid_argument);
  FeatureOverlayConfig zero_links(1, 10, 0.5, 2);
  zero_links.attachment_links[0] = 0;
  REQUIRE_THROWS_AS(gen_feature_overlay(zero_links, 1), std::invalid_argument);
}

TEST_CASE("random connected generator really is connected") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Graph g = gen_random_connected(8 + seed % 20, seed % 10, seed);
    REQUIRE(is_connected(g));
  }
}
