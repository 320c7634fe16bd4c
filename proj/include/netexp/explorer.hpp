#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "netexp/features.hpp"
#include "netexp/graph.hpp"
#include "netexp/rng.hpp"
#include "netexp/utility.hpp"
#include "netexp/visibility.hpp"

namespace netexp {

enum class Action { explore, exploit, random_pick };
enum class Outcome { quota_met, budget_exhausted, stuck };

inline const char* to_string(Action a) {
  switch (a) {
    case Action::explore: return "explore";
    case Action::exploit: return "exploit";
    case Action::random_pick: return "random_pick";
  }
  return "?";
}

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::quota_met: return "quota_met";
    case Outcome::budget_exhausted: return "budget_exhausted";
    case Outcome::stuck: return "stuck";
  }
  return "?";
}

struct TraceStep {
  std::size_t iteration;  // loop index; an explore and its random pick share it
  Action action;
  Chain chain;
  double utility_after;
  std::size_t selected_after;
  std::size_t exposed_after;  // |N(S,1)| after the step
  double epsilon_in_effect;

  bool operator==(const TraceStep&) const = default;
};

// Full record of one run: enough to replay it, plot it, or audit it.
struct RunTrace {
  double initial_utility = 0.0;
  std::size_t initial_exposed = 0;  // |N({v0},1)|
  std::vector<TraceStep> steps;
  Outcome outcome = Outcome::stuck;
  node_list selected;  // insertion order, starts with the initial node

  double final_utility() const {
    return steps.empty() ? initial_utility : steps.back().utility_after;
  }
  std::size_t final_selected() const { return selected.size(); }
  std::size_t final_exposed() const {
    return steps.empty() ? initial_exposed : steps.back().exposed_after;
  }

  bool operator==(const RunTrace&) const = default;
};

struct NetExpParams {
  unsigned l_deg = 1;
  unsigned l_val = 1;
  double epsilon = 0.5;
  double beta = 0.05;
  double quota = 1.0;
  // After each exploration when l_deg == 1: additionally select one uniformly
  // random newly exposed node. Off by default; it guards worst-case
  // structure, not typical instances.
  bool add_random_after_explore = false;
  // When false the run ignores the quota and keeps going until the budget is
  // reached (curve-reproduction mode). max_selected == 0 means no budget.
  bool stop_at_quota = true;
  std::size_t max_selected = 0;
  std::uint64_t seed = 0;

  void validate() const {
    if (l_deg < 1 || l_deg > max_chain_length || l_val < 1 ||
        l_val > max_chain_length) {
      throw std::invalid_argument("NetExpParams: lookahead out of range");
    }
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
      throw std::invalid_argument("NetExpParams: epsilon outside [0,1]");
    }
    if (!(beta > 0.0 && beta < 1.0)) {
      throw std::invalid_argument("NetExpParams: beta outside (0,1)");
    }
    if (!(quota > 0.0)) {
      throw std::invalid_argument("NetExpParams: quota must be positive");
    }
    if (!stop_at_quota && max_selected == 0) {
      throw std::invalid_argument(
          "NetExpParams: budget mode needs max_selected > 0");
    }
  }
};

namespace detail {

// Shared run skeleton: stopping rules, budget-truncating extension, and trace
// recording are identical for every policy.
template <GraphLike G, FeatureSource F>
struct RunState {
  VisibilityView<G> view;
  CoverageState<F> coverage;
  RunTrace trace;
  const NetExpParams& params;
  double target;
  std::size_t iteration = 1;

  RunState(const G& g, const F& ft, const Task& task, const NetExpParams& p)
      : view(g, task.initial_node, p.l_deg, p.l_val),
        coverage(task, ft),
        params(p),
        target((1.0 - p.beta) * p.quota) {
    coverage.add_node(task.initial_node);
    trace.initial_utility = coverage.utility();
    trace.initial_exposed = view.exposed_count();
  }

  bool budget_left() const {
    return params.max_selected == 0 ||
           view.selected_count() < params.max_selected;
  }

  // Returns nullopt while the run should continue.
  std::optional<Outcome> stop_reason() const {
    if (params.stop_at_quota && coverage.utility() >= target) {
      return Outcome::quota_met;
    }
    if (!budget_left()) return Outcome::budget_exhausted;
    if (view.frontier().empty()) return Outcome::stuck;
    return std::nullopt;
  }

  // Extends by the chain, truncated so the budget is never overshot, and
  // records the step. Returns the chain actually added.
  Chain apply(Action action, Chain chain, double epsilon_now) {
    if (params.max_selected != 0) {
      const std::size_t room = params.max_selected - view.selected_count();
      if (chain.size() > room) chain.resize(room);
    }
    view.extend(chain);
    coverage.add(chain);
    trace.steps.push_back({iteration, action, chain, coverage.utility(),
                           view.selected_count(), view.exposed_count(),
                           epsilon_now});
    return chain;
  }

  RunTrace finish(Outcome outcome) {
    trace.outcome = outcome;
    trace.selected = view.selected_order();
    return std::move(trace);
  }
};

}  // namespace detail

// The explore/exploit interleaving policy. Each iteration flips an
// epsilon-weighted coin: explore adds the chain with the best per-node
// exposure of unseen network, exploit adds the chain with the best per-node
// marginal utility. Once the reachable structure is fully exposed, epsilon
// drops to zero for good. Deterministic given the seed; argmax ties go to the
// shortest chain, then the lexicographically smallest node sequence, which is
// exactly the canonical enumeration order.
template <GraphLike G, FeatureSource F>
RunTrace run_netexp(const G& g, const F& ft, const Task& task,
                const NetExpParams& params) {
  params.validate();
  if (task.initial_node >= g.node_count()) {
    throw std::invalid_argument("run_netexp: initial node out of range");
  }
  detail::RunState<G, F> run(g, ft, task, params);
  Rng rng(params.seed);
  double epsilon = params.epsilon;

  for (;;) {
    if (auto reason = run.stop_reason()) return run.finish(*reason);

    if (run.view.is_saturated()) epsilon = 0.0;  // permanent
    const bool explore = rng.flip(epsilon);

    if (explore) {
      auto chains = run.view.explore_chains_scored();
      const ScoredChain* best = nullptr;
      double best_rate = -1.0;
      for (const auto& sc : chains) {
        double rate = static_cast<double>(sc.exposure) /
                      static_cast<double>(sc.nodes.size());
        if (rate > best_rate) {
          best_rate = rate;
          best = &sc;
        }
      }
      if (best == nullptr || best_rate <= 0.0) {
        // Unreachable: the frontier is nonempty and saturation was checked
        // this very iteration.
        throw std::logic_error("run_netexp: explore step with no exposure gain");
      }
      const bool want_random_pick =
          params.l_deg == 1 && params.add_random_after_explore;
      node_list pool;
      if (want_random_pick) pool = run.view.exposure_set(best->nodes);
      run.apply(Action::explore, best->nodes, epsilon);
      if (want_random_pick && run.budget_left() && !pool.empty()) {
        node_id pick = pool[rng.below(pool.size())];
        run.apply(Action::random_pick, {pick}, epsilon);
      }
    } else {
      auto chains = run.view.exploit_chains();
      const Chain* best = nullptr;
      double best_rate = -1.0;
      for (const auto& chain : chains) {
        double rate =
            run.coverage.gain(chain) / static_cast<double>(chain.size());
        if (rate > best_rate) {
          best_rate = rate;
          best = &chain;
        }
      }
      if (best == nullptr) return run.finish(Outcome::stuck);
      if (best_rate <= 0.0 && params.stop_at_quota && run.view.is_saturated()) {
        // Nothing can raise the utility anymore and no structure is left to
        // uncover: the quota is unreachable.
        return run.finish(Outcome::stuck);
      }
      run.apply(Action::exploit, *best, epsilon);
    }
    ++run.iteration;
  }
}

enum class BaselineKind { random, deg, val };

inline BaselineKind baseline_from_name(const std::string& name) {
  if (name == "random") return BaselineKind::random;
  if (name == "deg") return BaselineKind::deg;
  if (name == "val") return BaselineKind::val;
  throw std::invalid_argument("unknown baseline: " + name);
}

// Comparison policies. deg and val are netexp with the coin pinned to
// explore-always / exploit-always; random picks uniformly from the exposed
// frontier each step.
template <GraphLike G, FeatureSource F>
RunTrace run_baseline(BaselineKind kind, const G& g, const F& ft,
                      const Task& task, const NetExpParams& params) {
  if (kind == BaselineKind::deg || kind == BaselineKind::val) {
    NetExpParams forced = params;
    forced.epsilon = kind == BaselineKind::deg ? 1.0 : 0.0;
    return run_netexp(g, ft, task, forced);
  }
  params.validate();
  detail::RunState<G, F> run(g, ft, task, params);
  Rng rng(params.seed);
  for (;;) {
    if (auto reason = run.stop_reason()) return run.finish(*reason);
    const node_list& pool = run.view.frontier();
    node_id pick = pool[rng.below(pool.size())];
    run.apply(Action::random_pick, {pick}, 0.0);
    ++run.iteration;
  }
}

// Full-visibility greedy, free of connectivity and visibility constraints:
// repeatedly add the single node with the best marginal gain until the target
// utility is met or no node helps. The quality reference the local policies
// are measured against.
inline node_list centralized_greedy(const Graph& g, const FeatureTable& ft,
                                    const Task& task, double beta) {
  task.validate(g.node_count(), ft.feature_count());
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("centralized_greedy: beta outside (0,1)");
  }
  const double target = (1.0 - beta) * task.quota;
  // Only nodes with a positive value on some relevant feature can ever help.
  std::vector<node_id> candidates;
  for (node_id v = 0; v < g.node_count(); ++v) {
    for (const auto& [x, val] : ft.features_of(v)) {
      if (task.weights[x] > 0.0 && val > 0.0) {
        candidates.push_back(v);
        break;
      }
    }
  }
  CoverageState<FeatureTable> coverage(task, ft);
  node_list chosen;
  std::vector<std::uint8_t> used(g.node_count(), 0);
  while (coverage.utility() < target) {
    node_id best = 0;
    double best_gain = 0.0;
    bool found = false;
    for (node_id v : candidates) {
      if (used[v]) continue;
      double gain = coverage.gain(std::span<const node_id>(&v, 1));
      if (!found || gain > best_gain) {
        best = v;
        best_gain = gain;
        found = true;
      }
    }
    if (!found || best_gain <= 0.0) break;
    used[best] = 1;
    coverage.add_node(best);
    chosen.push_back(best);
  }
  return chosen;
}

struct CoverResult {
  bool achievable = false;
  node_list nodes;
  std::size_t size() const { return nodes.size(); }
};

// Exhaustive minimum-cardinality set reaching (1-beta)*quota, ignoring the
// graph entirely. Nodes with no relevant value are pruned first; at most 20
// may remain, this is an exponential oracle.
inline CoverResult brute_force_min_cover(const FeatureTable& ft,
                                         const Task& task) {
  task.validate(ft.node_count(), ft.feature_count());
  const double target = task.target();
  std::vector<node_id> relevant;
  for (node_id v = 0; v < ft.node_count(); ++v) {
    for (const auto& [x, val] : ft.features_of(v)) {
      if (task.weights[x] > 0.0 && val > 0.0) {
        relevant.push_back(v);
        break;
      }
    }
  }
  if (relevant.size() > 20) {
    throw std::invalid_argument(
        "brute_force_min_cover: too many valued nodes (max 20)");
  }
  CoverResult result;
  if (task_utility(task, relevant, ft) < target) {
    return result;  // not achievable even with every relevant node
  }
  result.achievable = true;
  std::vector<std::size_t> idx;
  for (std::size_t k = 1; k <= relevant.size(); ++k) {
    idx.assign(k, 0);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      node_list subset;
      subset.reserve(k);
      for (std::size_t i : idx) subset.push_back(relevant[i]);
      if (task_utility(task, subset, ft) >= target) {
        result.nodes = subset;
        return result;
      }
      // next combination
      std::size_t i = k;
      bool advanced = false;
      while (i > 0) {
        --i;
        if (idx[i] != i + relevant.size() - k) {
          ++idx[i];
          for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }
  return result;  // not reached: the all-relevant check guarantees a hit
}

}  // namespace netexp
