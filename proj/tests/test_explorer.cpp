#include <catch2/catch_amalgamated.hpp>

#include "netexp/explorer.hpp"
#include "netexp/generators.hpp"
#include "netexp/verify.hpp"
#include "test_support.hpp"

using namespace netexp;
using namespace netexp::testing;

namespace {

struct Instance {
  Graph graph;
  FeatureTable features;
  Task task;
};

Instance random_instance(std::uint64_t seed, std::size_t n = 40) {
  Rng rng(seed);
  Instance inst{gen_random_connected(n, n / 2, mix_seed(seed, 1)),
                FeatureTable(n, 3), Task{}};
  for (feature_id x = 0; x < 3; ++x) {
    std::vector<std::pair<node_id, double>> valued;
    for (node_id v = 0; v < n; ++v) {
      if (rng.flip(0.15)) valued.emplace_back(v, rng.uniform_pos());
    }
    double top = 0.0;
    for (auto& [v, u] : valued) top = std::max(top, u);
    for (auto& [v, u] : valued) inst.features.set(v, x, u / top);
  }
  inst.task.weights = {1.0, 1.0, 0.0};
  inst.task.initial_node = static_cast<node_id>(rng.below(n));
  return inst;
}

}  // namespace

TEST_CASE("one exploit step grabs an adjacent top node") {
  // start - top - other: the unique value-1 node sits next to the start, so
  // exploit-only meets the quota after a single step.
  Graph g = make_path(3);
  FeatureTable ft(3, 1);
  ft.set(1, 0, 1.0);
  Task task;
  task.initial_node = 0;
  task.weights = {1.0};
  NetExpParams params;
  params.epsilon = 0.0;
  params.seed = 17;
  RunTrace trace = run_netexp(g, ft, task, params);
  REQUIRE(trace.outcome == Outcome::quota_met);
  REQUIRE(trace.final_selected() == 2);
  REQUIRE(trace.steps.size() == 1);
  REQUIRE(trace.steps[0].action == Action::exploit);
  REQUIRE(trace.steps[0].chain == Chain{1});
  REQUIRE(trace.final_utility() == 1.0);
}

TEST_CASE("epsilon zero reproduces the val baseline exactly") {
  Instance inst = random_instance(100);
  NetExpParams params;
  params.epsilon = 0.0;
  params.seed = 4242;
  params.max_selected = inst.graph.node_count();
  RunTrace direct = run_netexp(inst.graph, inst.features, inst.task, params);
  NetExpParams any = params;
  any.epsilon = 0.73;  // run_baseline must override this
  RunTrace val = run_baseline(BaselineKind::val, inst.graph, inst.features,
                              inst.task, any);
  REQUIRE(direct == val);
}

TEST_CASE("unreachable quota terminates as stuck") {
  // the only valued node lives in a different component
  Graph g(5);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  g.add_edge(3, 4);
  FeatureTable ft(5, 1);
  ft.set(4, 0, 1.0);
  Task task;
  task.initial_node = 0;
  task.weights = {1.0};
  NetExpParams params;
  params.seed = 5;
  RunTrace trace = run_netexp(g, ft, task, params);
  REQUIRE(trace.outcome == Outcome::stuck);
  REQUIRE(trace.final_selected() <= 2);
}

TEST_CASE("baseline action mixes") {
  Instance inst = random_instance(200, 50);
  NetExpParams params;
  params.seed = 9;
  params.max_selected = 30;
  params.stop_at_quota = false;

  SECTION("deg explores until saturation, never before") {
    RunTrace deg = run_baseline(BaselineKind::deg, inst.graph, inst.features,
                                inst.task, params);
    bool exploit_seen = false;
    for (const TraceStep& step : deg.steps) {
      if (step.action == Action::exploit) exploit_seen = true;
      // once saturation flips epsilon to zero, explores can never resume
      if (exploit_seen) REQUIRE(step.action == Action::exploit);
      if (step.action == Action::exploit) REQUIRE(step.epsilon_in_effect == 0.0);
    }
  }
  SECTION("val never explores") {
    RunTrace val = run_baseline(BaselineKind::val, inst.graph, inst.features,
                                inst.task, params);
    for (const TraceStep& step : val.steps) {
      REQUIRE(step.action == Action::exploit);
    }
  }
  SECTION("random uses only frontier picks") {
    RunTrace rnd = run_baseline(BaselineKind::random, inst.graph, inst.features,
                                inst.task, params);
    for (const TraceStep& step : rnd.steps) {
      REQUIRE(step.action == Action::random_pick);
      REQUIRE(step.chain.size() == 1);
    }
  }
}

TEST_CASE("random baseline covers a star uniformly") {
  // From the hub every leaf is on the frontier; the first pick must be
  // uniform across the five leaves (chi-square at p ~ 0.001, df 4).
  Graph g = make_star(5);
  FeatureTable ft(6, 1);
  ft.set(5, 0, 1.0);
  Task task;
  task.initial_node = 0;
  task.weights = {1.0};
  NetExpParams params;
  params.stop_at_quota = false;
  params.max_selected = 6;
  std::array<std::size_t, 5> first_pick{};
  const std::size_t trials = 1000;
  for (std::size_t s = 0; s < trials; ++s) {
    params.seed = 3000 + s;
    RunTrace trace = run_baseline(BaselineKind::random, g, ft, task, params);
    REQUIRE(trace.final_selected() == 6);  // whole star in the end
    first_pick[trace.steps[0].chain[0] - 1]++;
  }
  const double expect = static_cast<double>(trials) / 5.0;
  double chi2 = 0.0;
  for (std::size_t count : first_pick) {
    const double diff = static_cast<double>(count) - expect;
    chi2 += diff * diff / expect;
  }
  REQUIRE(chi2 < 18.467);
}

TEST_CASE("budget semantics") {
  Instance inst = random_instance(300, 60);
  NetExpParams params;
  params.seed = 77;
  params.stop_at_quota = false;
  params.max_selected = 20;
  RunTrace trace = run_netexp(inst.graph, inst.features, inst.task, params);
  REQUIRE(trace.outcome == Outcome::budget_exhausted);
  REQUIRE(trace.final_selected() == 20);
  for (const TraceStep& step : trace.steps) {
    REQUIRE(step.selected_after <= 20);
  }

  SECTION("a longer budget run extends the shorter one step for step") {
    NetExpParams longer = params;
    longer.max_selected = 40;
    RunTrace big = run_netexp(inst.graph, inst.features, inst.task, longer);
    REQUIRE(big.steps.size() >= trace.steps.size());
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
      REQUIRE(big.steps[i] == trace.steps[i]);
    }
  }
}

TEST_CASE("netexp traces replay and hold every invariant") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    Instance inst = random_instance(400 + seed);
    NetExpParams params;
    params.epsilon = 0.5;
    params.l_deg = 1 + seed % 2;
    params.l_val = 1;
    params.seed = mix_seed(123, seed);
    params.max_selected = inst.graph.node_count();
    RunTrace trace = run_netexp(inst.graph, inst.features, inst.task, params);
    auto failure = check_trace_integrity(inst.graph, inst.features, inst.task,
                                         params, trace, true);
    INFO(failure.value_or(""));
    REQUIRE_FALSE(failure.has_value());
    RunTrace again = run_netexp(inst.graph, inst.features, inst.task, params);
    REQUIRE(trace == again);
  }
}

TEST_CASE("saturation permanently disables exploration") {
  // tiny graph so saturation arrives quickly even at epsilon 0.9
  Instance inst = random_instance(500, 14);
  NetExpParams params;
  params.epsilon = 0.9;
  params.seed = 31;
  params.stop_at_quota = false;
  params.max_selected = 14;
  RunTrace trace = run_netexp(inst.graph, inst.features, inst.task, params);
  bool saturated = false;
  for (const TraceStep& step : trace.steps) {
    if (step.epsilon_in_effect == 0.0) saturated = true;
    if (saturated) {
      REQUIRE(step.epsilon_in_effect == 0.0);
      REQUIRE(step.action == Action::exploit);
    }
  }
}

TEST_CASE("random pick after exploration when l_deg is one") {
  // star around 1 with start 0: exploring 1 exposes all other leaves, the
  // follow-up random pick must grab one of them within the same iteration
  Graph g = make_star(6);  // hub 0... use node 1 as start leaf
  FeatureTable ft(7, 1);
  ft.set(6, 0, 1.0);
  Task task;
  task.initial_node = 1;
  task.weights = {1.0};
  NetExpParams params;
  params.epsilon = 1.0;
  params.add_random_after_explore = true;
  params.seed = 8;
  params.stop_at_quota = false;
  params.max_selected = 4;
  RunTrace trace = run_netexp(g, ft, task, params);
  REQUIRE(trace.steps.size() >= 2);
  REQUIRE(trace.steps[0].action == Action::explore);
  REQUIRE(trace.steps[0].chain == Chain{0});
  REQUIRE(trace.steps[1].action == Action::random_pick);
  REQUIRE(trace.steps[1].iteration == trace.steps[0].iteration);
  node_id picked = trace.steps[1].chain[0];
  REQUIRE(picked >= 2);  // one of the newly exposed leaves
}

TEST_CASE("visibility compliance under the audited double") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    Instance inst = random_instance(600 + seed, 30);
    NetExpParams params;
    const unsigned combos[4][2] = {{1, 1}, {2, 1}, {2, 2}, {1, 2}};
    params.l_deg = combos[seed % 4][0];
    params.l_val = combos[seed % 4][1];
    params.seed = mix_seed(321, seed);
    params.max_selected = inst.graph.node_count();
    AuditOutcome out = audited_netexp(inst.graph, inst.features, inst.task, params);
    REQUIRE(out.adj_reads > 0);
    REQUIRE(out.val_reads > 0);
    REQUIRE(out.adj_violations == 0);
    REQUIRE(out.val_violations == 0);
  }
}

TEST_CASE("centralized greedy") {
  SECTION("disjoint top nodes are picked one per required feature") {
    FeatureTable ft(6, 3);
    ft.set(1, 0, 1.0);
    ft.set(3, 1, 1.0);
    ft.set(5, 2, 1.0);
    Graph g = make_path(6);
    Task task;
    task.weights = {1.0, 1.0, 1.0};
    node_list chosen = centralized_greedy(g, ft, task, 0.05);
    REQUIRE(chosen.size() == 3);
    node_list sorted = chosen;
    std::sort(sorted.begin(), sorted.end());
    REQUIRE(sorted == node_list{1, 3, 5});
  }
  SECTION("meets the target whenever achievable") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Instance inst = random_instance(700 + seed);
      CoverResult cover = brute_force_min_cover(inst.features, inst.task);
      node_list greedy =
          centralized_greedy(inst.graph, inst.features, inst.task, 0.05);
      if (cover.achievable) {
        REQUIRE(task_utility(inst.task, greedy, inst.features) >=
                inst.task.target());
        REQUIRE(greedy.size() >= cover.size());
      }
    }
  }
}

TEST_CASE("brute force minimum cover") {
  SECTION("single top node suffices") {
    FeatureTable ft(4, 1);
    ft.set(2, 0, 1.0);
    Task task;
    task.weights = {1.0};
    CoverResult cover = brute_force_min_cover(ft, task);
    REQUIRE(cover.achievable);
    REQUIRE(cover.nodes == node_list{2});
  }
  SECTION("three disjoint required features need three nodes") {
    FeatureTable ft(9, 3);
    ft.set(0, 0, 1.0);
    ft.set(4, 1, 1.0);
    ft.set(8, 2, 1.0);
    Task task;
    task.weights = {1.0, 1.0, 1.0};
    REQUIRE(brute_force_min_cover(ft, task).size() == 3);
  }
  SECTION("unachievable quota reported") {
    FeatureTable ft(4, 2);
    ft.set(1, 0, 1.0);  // feature 1 has no valued node at all
    Task task;
    task.weights = {1.0, 1.0};
    REQUIRE_FALSE(brute_force_min_cover(ft, task).achievable);
  }
  SECTION("guard on the pruned candidate count") {
    FeatureTable ft(30, 1);
    for (node_id v = 0; v < 30; ++v) ft.set(v, 0, 0.5);
    Task task;
    task.weights = {1.0};
    REQUIRE_THROWS_AS(brute_force_min_cover(ft, task), std::invalid_argument);
  }
}

TEST_CASE("oracle consistency on tiny instances") {
  auto failure = check_oracle_consistency(15, 808);
  INFO(failure.value_or(""));
  REQUIRE_FALSE(failure.has_value());
}

TEST_CASE("parameter validation") {
  NetExpParams params;
  params.epsilon = 1.2;
  REQUIRE_THROWS_AS(params.validate(), std::invalid_argument);
  params.epsilon = 0.5;
  params.beta = 0.0;
  REQUIRE_THROWS_AS(params.validate(), std::invalid_argument);
  params.beta = 0.05;
  params.stop_at_quota = false;
  params.max_selected = 0;
  REQUIRE_THROWS_AS(params.validate(), std::invalid_argument);
  params.max_selected = 10;
  REQUIRE_NOTHROW(params.validate());
}
