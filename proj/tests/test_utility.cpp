#include <catch2/catch_amalgamated.hpp>

#include "netexp/generators.hpp"
#include "netexp/utility.hpp"
#include "netexp/verify.hpp"
#include "test_support.hpp"

using namespace netexp;

TEST_CASE("feature coverage formula") {
  REQUIRE(feature_coverage({}) == 0.0);
  const double one[] = {1.0};
  REQUIRE(feature_coverage(one) == 1.0);
  const double halves[] = {0.5, 0.5};
  REQUIRE(feature_coverage(halves) == Catch::Approx(0.75));
  const double bad[] = {1.5};
  REQUIRE_THROWS_AS(feature_coverage(bad), std::invalid_argument);
}

namespace {

FeatureTable two_feature_table() {
  FeatureTable ft(4, 2);
  ft.set(1, 0, 0.5);
  ft.set(2, 0, 0.5);
  ft.set(3, 1, 1.0);
  return ft;
}

}  // namespace

TEST_CASE("task utility") {
  FeatureTable ft = two_feature_table();
  Task task;
  task.weights = {1.0, 1.0};

  SECTION("empty set scores zero") {
    REQUIRE(task_utility(task, {}, ft) == 0.0);
  }
  SECTION("weighted average of per-feature coverages") {
    // feature 0 covered at 0.75, feature 1 untouched
    REQUIRE(task_utility(task, {1, 2}, ft) == Catch::Approx(0.375));
  }
  SECTION("a top node per weighted feature reaches exactly one") {
    FeatureTable tops(3, 2);
    tops.set(0, 0, 1.0);
    tops.set(2, 1, 1.0);
    REQUIRE(task_utility(task, {0, 2}, tops) == 1.0);
  }
  SECTION("all-zero weights rejected") {
    Task broken;
    broken.weights = {0.0, 0.0};
    REQUIRE_THROWS_AS(task_utility(broken, {1}, ft), std::invalid_argument);
  }
  SECTION("duplicates in the input do not change the value") {
    REQUIRE(task_utility(task, {1, 2, 1, 2, 2}, ft) ==
            task_utility(task, {1, 2}, ft));
  }
  SECTION("input order does not change the value") {
    REQUIRE(task_utility(task, {2, 1, 3}, ft) ==
            Catch::Approx(task_utility(task, {3, 1, 2}, ft)).margin(1e-12));
  }
}

TEST_CASE("marginal gain") {
  FeatureTable ft = two_feature_table();
  Task task;
  task.weights = {1.0, 1.0};

  SECTION("zero-valued chain gains nothing") {
    node_list s{1};
    Chain chain{0};  // node 0 has no values
    REQUIRE(marginal_gain(task, s, ft, chain) == 0.0);
  }
  SECTION("capped feature gains nothing more") {
    FeatureTable capped(3, 1);
    capped.set(0, 0, 1.0);
    capped.set(1, 0, 1.0);
    Task single;
    single.weights = {1.0};
    REQUIRE(marginal_gain(single, {0}, capped, Chain{1}) == 0.0);
  }
  SECTION("overlapping chain rejected") {
    REQUIRE_THROWS_AS(marginal_gain(task, {1}, ft, Chain{1}),
                      std::invalid_argument);
  }
  SECTION("matches the from-scratch utility difference on random instances") {
    Graph g = gen_random_connected(60, 40, 7);
    FeatureTable table(60, 4);
    Rng rng(8);
    for (node_id v = 0; v < 60; ++v) {
      for (feature_id x = 0; x < 4; ++x) {
        if (rng.flip(0.3)) table.set(v, x, rng.uniform_pos());
      }
    }
    for (int trial = 0; trial < 200; ++trial) {
      Task t;
      t.weights = {0.0, 0.0, 0.0, 0.0};
      t.weights[rng.below(4)] = 1.0;
      t.weights[rng.below(4)] = 1.0;
      node_list s;
      for (int i = 0; i < 6; ++i) s.push_back(static_cast<node_id>(rng.below(60)));
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      Chain chain;
      while (chain.size() < 2) {
        node_id v = static_cast<node_id>(rng.below(60));
        if (!std::binary_search(s.begin(), s.end(), v) &&
            std::find(chain.begin(), chain.end(), v) == chain.end()) {
          chain.push_back(v);
        }
      }
      node_list merged = s;
      merged.insert(merged.end(), chain.begin(), chain.end());
      double expect = task_utility(t, merged, table) - task_utility(t, s, table);
      REQUIRE(marginal_gain(t, s, table, chain) ==
              Catch::Approx(expect).margin(1e-12));
    }
  }
}

TEST_CASE("coverage state tracks the growing set") {
  Graph g = gen_random_connected(40, 30, 17);
  FeatureTable ft = gen_feature_overlay(FeatureOverlayConfig(3, 40, 0.6, 2), 18).features;
  Task task;
  task.weights = {1.0, 0.0, 1.0};
  CoverageState<FeatureTable> cov(task, ft);
  node_list grown;
  Rng rng(19);
  for (int i = 0; i < 15; ++i) {
    node_id v = static_cast<node_id>(rng.below(40));
    if (std::find(grown.begin(), grown.end(), v) != grown.end()) continue;
    double gain = cov.gain(std::span<const node_id>(&v, 1));
    double before = cov.utility();
    cov.add_node(v);
    grown.push_back(v);
    REQUIRE(cov.utility() == Catch::Approx(before + gain).margin(1e-12));
    REQUIRE(cov.utility() ==
            Catch::Approx(task_utility(task, grown, ft)).margin(1e-12));
  }
}

TEST_CASE("task sampling") {
  SECTION("exactly the requested number of features get weight one") {
    auto tasks = sample_tasks(5, 3, 40, 100, 21);
    REQUIRE(tasks.size() == 40);
    for (const Task& t : tasks) {
      std::size_t positive = 0;
      for (double w : t.weights) {
        REQUIRE((w == 0.0 || w == 1.0));
        if (w == 1.0) ++positive;
      }
      REQUIRE(positive == 3);
      REQUIRE(t.initial_node < 100);
      REQUIRE(t.quota == 1.0);
      REQUIRE(t.beta == 0.05);
    }
  }
  SECTION("required equal to the pool selects everything") {
    auto tasks = sample_tasks(4, 4, 3, 10, 22);
    for (const Task& t : tasks) {
      for (double w : t.weights) REQUIRE(w == 1.0);
    }
  }
  SECTION("deterministic under a fixed seed") {
    auto a = sample_tasks(6, 2, 10, 50, 23);
    auto b = sample_tasks(6, 2, 10, 50, 23);
    for (std::size_t i = 0; i < a.size(); ++i) {
      REQUIRE(a[i].initial_node == b[i].initial_node);
      REQUIRE(a[i].weights == b[i].weights);
    }
  }
  SECTION("rejects an oversized requirement") {
    REQUIRE_THROWS_AS(sample_tasks(3, 4, 1, 10, 1), std::invalid_argument);
  }
}

TEST_CASE("utility is monotone and submodular on a random instance") {
  Graph g = gen_random_connected(150, 200, 31);
  FeatureTable ft =
      gen_feature_overlay(FeatureOverlayConfig(5, 150, 0.3, 2), 32).features;
  Task task;
  task.weights = {1.0, 0.0, 1.0, 1.0, 0.0};
  auto f = [&](const node_list& s) { return task_utility(task, s, ft); };
  REQUIRE_FALSE(check_monotone(f, 150, 300, 33).has_value());
  REQUIRE_FALSE(check_submodular(f, 150, 300, 34).has_value());
}

TEST_CASE("property checks catch planted violations") {
  // A deliberately non-monotone stand-in: utility decreases with set size.
  auto broken = [](const node_list& s) {
    return 1.0 / (1.0 + static_cast<double>(s.size()));
  };
  auto failure = check_monotone(broken, 50, 200, 35);
  REQUIRE(failure.has_value());
  REQUIRE(failure->find("monotonicity") != std::string::npos);

  // And a non-submodular one: accelerating returns.
  auto convex = [](const node_list& s) {
    return static_cast<double>(s.size() * s.size());
  };
  auto sub_failure = check_submodular(convex, 50, 200, 36);
  REQUIRE(sub_failure.has_value());
  REQUIRE(sub_failure->find("submodularity") != std::string::npos);
}

TEST_CASE("feature table validation") {
  FeatureTable ft(3, 2);
  REQUIRE_THROWS_AS(ft.set(0, 0, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(ft.set(0, 0, 1.5), std::invalid_argument);
  REQUIRE_THROWS_AS(ft.set(5, 0, 0.5), std::invalid_argument);
  REQUIRE_THROWS_AS(ft.set(0, 9, 0.5), std::invalid_argument);
  ft.set(0, 1, 0.25);
  REQUIRE(ft.value(0, 1) == 0.25);
  REQUIRE(ft.value(0, 0) == 0.0);
  REQUIRE(ft.value(2, 1) == 0.0);
}
