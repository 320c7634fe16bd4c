#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "netexp/dominating_set.hpp"
#include "netexp/explorer.hpp"
#include "netexp/generators.hpp"
#include "netexp/utility.hpp"

namespace netexp {

// A check either passes (quiet) or reports what broke, with enough detail to
// reproduce the failing instance.
using CheckResult = std::optional<std::string>;

// ---------------------------------------------------------------------------
// Access-audited doubles. They stand in for Graph and FeatureTable under the
// selection policies and flag every adjacency read outside N(S, l_deg) and
// every value read outside N(S, l_val), with S tracked as it actually grows
// (including mid-step growth during an extension).
// ---------------------------------------------------------------------------

struct AccessAudit {
  const Graph* g = nullptr;
  unsigned l_deg = 1;
  unsigned l_val = 1;
  node_list selected;
  std::vector<std::uint8_t> adj_allowed;
  std::vector<std::uint8_t> val_allowed;
  std::size_t adj_reads = 0;
  std::size_t val_reads = 0;
  std::size_t adj_violations = 0;
  std::size_t val_violations = 0;

  AccessAudit(const Graph& graph, unsigned ld, unsigned lv)
      : g(&graph),
        l_deg(ld),
        l_val(lv),
        adj_allowed(graph.node_count(), 0),
        val_allowed(graph.node_count(), 0) {}

  void select(node_id v) {
    selected.push_back(v);
    refresh(adj_allowed, l_deg);
    refresh(val_allowed, l_val);
  }

 private:
  void refresh(std::vector<std::uint8_t>& flags, unsigned l) {
    std::fill(flags.begin(), flags.end(), 0);
    for (node_id v : neighborhood(*g, selected, l)) flags[v] = 1;
  }
};

struct AuditedGraph {
  const Graph* g;
  AccessAudit* audit;

  std::size_t node_count() const { return g->node_count(); }
  const std::vector<node_id>& neighbors(node_id v) const {
    ++audit->adj_reads;
    if (!audit->adj_allowed[v]) ++audit->adj_violations;
    return g->neighbors(v);
  }
  void note_selected(node_id v) const { audit->select(v); }
};

struct AuditedFeatures {
  const FeatureTable* ft;
  AccessAudit* audit;

  double value(node_id v, feature_id x) const {
    ++audit->val_reads;
    if (!audit->val_allowed[v]) ++audit->val_violations;
    return ft->value(v, x);
  }
};

struct AuditOutcome {
  RunTrace trace;
  std::size_t adj_reads = 0;
  std::size_t val_reads = 0;
  std::size_t adj_violations = 0;
  std::size_t val_violations = 0;
};

inline AuditOutcome audited_netexp(const Graph& g, const FeatureTable& ft,
                                   const Task& task,
                                   const NetExpParams& params) {
  AccessAudit audit(g, params.l_deg, params.l_val);
  AuditedGraph ag{&g, &audit};
  AuditedFeatures af{&ft, &audit};
  AuditOutcome out;
  out.trace = run_netexp(ag, af, task, params);
  out.adj_reads = audit.adj_reads;
  out.val_reads = audit.val_reads;
  out.adj_violations = audit.adj_violations;
  out.val_violations = audit.val_violations;
  return out;
}

// ---------------------------------------------------------------------------
// Randomized property checks over arbitrary set functions. Parameterized on
// the function so a deliberately broken stand-in can demonstrate that the
// suite actually catches violations.
// ---------------------------------------------------------------------------

namespace detail {

inline node_list random_subset(Rng& rng, std::size_t node_count,
                               std::size_t max_size) {
  std::size_t want = 1 + rng.below(max_size);
  node_list out;
  for (std::size_t i = 0; i < want; ++i) {
    out.push_back(static_cast<node_id>(rng.below(node_count)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

// f(S) <= f(S') whenever S ⊆ S'.
template <class SetFn>
CheckResult check_monotone(SetFn&& f, std::size_t node_count,
                           std::size_t trials, std::uint64_t seed,
                           double tol = 1e-12) {
  Rng rng(seed);
  const std::size_t cap = std::min<std::size_t>(node_count, 40);
  for (std::size_t t = 0; t < trials; ++t) {
    node_list sup = detail::random_subset(rng, node_count, cap);
    node_list sub;
    for (node_id v : sup) {
      if (rng.flip(0.5)) sub.push_back(v);
    }
    double fs = f(sub), fsup = f(sup);
    if (fs > fsup + tol) {
      std::ostringstream msg;
      msg << "monotonicity violated at trial " << t << " (seed " << seed
          << "): f(sub)=" << fs << " > f(sup)=" << fsup;
      return msg.str();
    }
  }
  return std::nullopt;
}

// f(S ∪ {v}) - f(S) >= f(S' ∪ {v}) - f(S') whenever S ⊆ S', v ∉ S'.
template <class SetFn>
CheckResult check_submodular(SetFn&& f, std::size_t node_count,
                             std::size_t trials, std::uint64_t seed,
                             double tol = 1e-12) {
  Rng rng(seed);
  const std::size_t cap = std::min<std::size_t>(node_count, 40);
  for (std::size_t t = 0; t < trials; ++t) {
    node_list sup = detail::random_subset(rng, node_count, cap);
    node_list sub;
    for (node_id v : sup) {
      if (rng.flip(0.5)) sub.push_back(v);
    }
    node_id v = 0;
    bool found = false;
    for (int attempt = 0; attempt < 64; ++attempt) {
      v = static_cast<node_id>(rng.below(node_count));
      if (!std::binary_search(sup.begin(), sup.end(), v)) {
        found = true;
        break;
      }
    }
    if (!found) continue;
    node_list sub_v = sub, sup_v = sup;
    sub_v.push_back(v);
    sup_v.push_back(v);
    double small_gain = f(sub_v) - f(sub);
    double large_gain = f(sup_v) - f(sup);
    if (small_gain + tol < large_gain) {
      std::ostringstream msg;
      msg << "submodularity violated at trial " << t << " (seed " << seed
          << "): gain over subset " << small_gain << " < gain over superset "
          << large_gain;
      return msg.str();
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Trace integrity: replays a recorded run against a fresh view and re-derives
// every column. Catches broken chains, connectivity breaks, cache
// incoherence, non-monotone utility, and post-saturation exploration.
// ---------------------------------------------------------------------------

inline CheckResult check_trace_integrity(const Graph& g, const FeatureTable& ft,
                                         const Task& task,
                                         const NetExpParams& params,
                                         const RunTrace& trace,
                                         bool from_netexp) {
  auto fail = [](const std::string& what) -> CheckResult { return what; };
  if (trace.selected.empty() || trace.selected.front() != task.initial_node) {
    return fail("selected set does not start at the initial node");
  }
  VisibilityView<Graph> view(g, task.initial_node, params.l_deg, params.l_val);
  node_list prefix{task.initial_node};
  double prev_utility = trace.initial_utility;
  std::size_t prev_selected = 1;
  bool saturated_seen = false;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& step = trace.steps[i];
    if (view.is_saturated()) saturated_seen = true;
    if (from_netexp && saturated_seen && step.action != Action::exploit) {
      return fail("step " + std::to_string(i) + ": non-exploit action after saturation");
    }
    if (!view.chain_valid(step.chain)) {
      return fail("step " + std::to_string(i) + ": recorded chain invalid");
    }
    view.extend(step.chain);
    for (node_id v : step.chain) prefix.push_back(v);
    if (!view.frontier_matches_recompute()) {
      return fail("step " + std::to_string(i) + ": frontier cache incoherent");
    }
    if (step.selected_after != view.selected_count() ||
        step.selected_after != prefix.size()) {
      return fail("step " + std::to_string(i) + ": selected count mismatch");
    }
    if (step.selected_after <= prev_selected) {
      return fail("step " + std::to_string(i) + ": |S| not strictly increasing");
    }
    if (step.exposed_after != view.exposed_count()) {
      return fail("step " + std::to_string(i) + ": exposed count mismatch");
    }
    if (step.exposed_after != neighborhood(g, prefix, 1).size()) {
      return fail("step " + std::to_string(i) + ": exposed size != |N(S,1)|");
    }
    if (!is_connected_subset(g, prefix)) {
      return fail("step " + std::to_string(i) + ": selected set disconnected");
    }
    if (step.utility_after + 1e-12 < prev_utility) {
      return fail("step " + std::to_string(i) + ": utility decreased");
    }
    double fresh = task_utility(task, prefix, ft);
    if (std::abs(fresh - step.utility_after) > 1e-9) {
      return fail("step " + std::to_string(i) +
                  ": utility disagrees with from-scratch recomputation");
    }
    prev_utility = step.utility_after;
    prev_selected = step.selected_after;
  }
  if (trace.selected != view.selected_order()) {
    return fail("final selected order does not replay");
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Expected-size bound probes. A single hidden value-1 node is planted in a
// random connected graph; the interleaving policy must reach it, and its mean
// selected-set size over many coin flips is compared against the analytical
// bound built from the exact minimum connected dominating set and minimum
// cover. The guarantee is in expectation with a high-probability qualifier,
// so a small number of graphs may exceed the bound without failing the probe.
// ---------------------------------------------------------------------------

enum class BoundVariant {
  lookahead2,  // l_deg=2: per-node constant 2 + 2 ln(max(deg, e))
  randompick1, // l_deg=1 with the random-pick step: 4 + 2 ln(deg)
};

struct SizeBoundProbe {
  BoundVariant variant = BoundVariant::lookahead2;
  std::size_t graph_count = 50;
  std::size_t coin_seeds = 200;
  double epsilon = 0.5;
  double beta = 0.05;
  std::uint64_t seed = 20240601;
};

struct SizeBoundOutcome {
  std::size_t graphs_checked = 0;
  std::size_t within_bound = 0;
  std::string detail;  // per-graph summary of the first few exceedances
};

inline SizeBoundOutcome run_size_bound_probe(const SizeBoundProbe& probe) {
  SizeBoundOutcome outcome;
  std::ostringstream detail;
  for (std::size_t i = 0; i < probe.graph_count; ++i) {
    const std::size_t n = 8 + (i % 9);  // 8..16
    const std::uint64_t gseed = mix_seed(probe.seed, i);
    Rng rng(gseed);
    Graph g = gen_random_connected(n, 1 + rng.below(n), mix_seed(gseed, 1));

    node_id needle = static_cast<node_id>(rng.below(n));
    node_id start = static_cast<node_id>(rng.below(n));
    if (start == needle) start = static_cast<node_id>((needle + 1) % n);
    FeatureTable ft(n, 1);
    ft.set(needle, 0, 1.0);
    Task task;
    task.initial_node = start;
    task.weights = {1.0};
    task.beta = probe.beta;

    const std::size_t gamma = brute_force_min_cds(g).size();
    const std::size_t vopt = brute_force_min_cover(ft, task).size();
    const double delta = static_cast<double>(max_degree(g));
    const double per_node =
        probe.variant == BoundVariant::lookahead2
            ? 2.0 + 2.0 * std::log(std::max(delta, std::exp(1.0)))
            : 4.0 + 2.0 * std::log(delta);
    const double bound =
        (1.0 / probe.epsilon) * per_node * static_cast<double>(gamma) +
        (1.0 / (1.0 - probe.epsilon)) * static_cast<double>(vopt) *
            std::log(1.0 / probe.beta) +
        1.0;

    NetExpParams params;
    params.l_deg = probe.variant == BoundVariant::lookahead2 ? 2 : 1;
    params.l_val = 1;
    params.epsilon = probe.epsilon;
    params.beta = probe.beta;
    params.add_random_after_explore = probe.variant == BoundVariant::randompick1;
    double total = 0.0;
    for (std::size_t j = 0; j < probe.coin_seeds; ++j) {
      params.seed = mix_seed(gseed, 1000 + j);
      RunTrace trace = run_netexp(g, ft, task, params);
      if (trace.outcome != Outcome::quota_met) {
        outcome.detail = "graph " + std::to_string(i) +
                         ": run did not meet quota on a connected instance";
        return outcome;
      }
      total += static_cast<double>(trace.final_selected());
    }
    const double mean = total / static_cast<double>(probe.coin_seeds);
    ++outcome.graphs_checked;
    if (mean <= bound) {
      ++outcome.within_bound;
    } else if (outcome.within_bound + 6 > outcome.graphs_checked) {
      detail << "graph " << i << " (n=" << n << "): mean |S| " << mean
             << " > bound " << bound << "; ";
    }
  }
  outcome.detail = detail.str();
  return outcome;
}

// ---------------------------------------------------------------------------
// Named check registry behind the `verify` command. fast = randomized
// property suites on small instances; full = fast plus the exhaustive-oracle
// bound probes.
// ---------------------------------------------------------------------------

enum class VerifyLevel { fast, full };

struct VerifyCheck {
  std::string name;
  VerifyLevel level;
  std::function<CheckResult()> run;
};

namespace detail {

inline FeatureTable random_features(const Graph& g, std::size_t feature_count,
                                    double p, std::uint64_t seed) {
  FeatureTable ft(g.node_count(), feature_count);
  for (feature_id x = 0; x < feature_count; ++x) {
    Rng rng(mix_seed(seed, x));
    std::vector<std::pair<node_id, double>> valued;
    for (node_id v = 0; v < g.node_count(); ++v) {
      if (rng.flip(p)) valued.emplace_back(v, rng.uniform_pos());
    }
    double top = 0.0;
    for (auto& [v, u] : valued) top = std::max(top, u);
    for (auto& [v, u] : valued) ft.set(v, x, u / top);
  }
  return ft;
}

inline Task random_task(const Graph& g, const FeatureTable& ft,
                        std::uint64_t seed) {
  Rng rng(seed);
  std::size_t k = ft.feature_count();
  Task task;
  task.weights.assign(k, 0.0);
  std::size_t required = 1 + rng.below(k);
  for (std::size_t i = 0; i < required; ++i) {
    task.weights[rng.below(k)] = 1.0;
  }
  // ensure at least one positive weight even if draws collided
  task.weights[rng.below(k)] = 1.0;
  task.initial_node = static_cast<node_id>(rng.below(g.node_count()));
  return task;
}

inline CheckResult check_graph_is_simple_undirected(const Graph& g,
                                                    const std::string& what) {
  for (node_id v = 0; v < g.node_count(); ++v) {
    node_id prev = 0;
    bool first = true;
    for (node_id w : g.neighbors(v)) {
      if (w == v) return what + ": self-loop at " + std::to_string(v);
      if (!first && w == prev) {
        return what + ": duplicate edge at " + std::to_string(v);
      }
      if (!g.has_edge(w, v)) {
        return what + ": asymmetric edge " + std::to_string(v) + "-" +
               std::to_string(w);
      }
      prev = w;
      first = false;
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Tiny instances where the exhaustive oracles are feasible: the greedy cover
// must sit between the optimum and its ln(1/beta) factor, and the greedy
// connected dominating set within its logarithmic factor of the exact one.
inline CheckResult check_oracle_consistency(std::size_t instances,
                                            std::uint64_t seed) {
  for (std::size_t i = 0; i < instances; ++i) {
    const std::uint64_t iseed = mix_seed(seed, i);
    Rng rng(iseed);
    const std::size_t n = 6 + rng.below(7);  // 6..12
    Graph g = gen_random_connected(n, rng.below(n), mix_seed(iseed, 1));

    // greedy CDS against the exact minimum
    node_list cds = greedy_cds(g);
    if (neighborhood(g, cds, 1).size() != g.node_count()) {
      return "instance " + std::to_string(i) + ": greedy cds not dominating";
    }
    if (!is_connected_subset(g, cds)) {
      return "instance " + std::to_string(i) + ": greedy cds not connected";
    }
    const std::size_t gamma = brute_force_min_cds(g).size();
    const double delta = static_cast<double>(max_degree(g));
    const double ratio = 2.0 + 2.0 * std::log(std::max(delta, std::exp(1.0)));
    if (static_cast<double>(cds.size()) >
        ratio * static_cast<double>(gamma)) {
      return "instance " + std::to_string(i) + ": greedy cds size " +
             std::to_string(cds.size()) + " exceeds " +
             std::to_string(ratio) + " * " + std::to_string(gamma);
    }

    // greedy cover against the exact minimum cover
    FeatureTable ft = detail::random_features(g, 1 + rng.below(3), 0.35,
                                              mix_seed(iseed, 2));
    Task task = detail::random_task(g, ft, mix_seed(iseed, 3));
    CoverResult cover = brute_force_min_cover(ft, task);
    if (!cover.achievable) continue;
    node_list greedy = centralized_greedy(g, ft, task, task.beta);
    if (task_utility(task, greedy, ft) < task.target()) {
      return "instance " + std::to_string(i) +
             ": greedy cover missed an achievable target";
    }
    const std::size_t factor =
        static_cast<std::size_t>(std::ceil(std::log(1.0 / task.beta)));
    if (greedy.size() < cover.size() ||
        greedy.size() > cover.size() * factor + 1) {
      return "instance " + std::to_string(i) + ": greedy cover size " +
             std::to_string(greedy.size()) + " outside [" +
             std::to_string(cover.size()) + ", " +
             std::to_string(cover.size() * factor + 1) + "]";
    }
  }
  return std::nullopt;
}

inline std::vector<VerifyCheck> build_verify_checks();

// Runs every check at or below the level; prints one line per check. Returns
// true iff everything passed.
inline bool run_verify(VerifyLevel level, std::ostream& out) {
  bool ok = true;
  for (const VerifyCheck& check : build_verify_checks()) {
    if (check.level == VerifyLevel::full && level == VerifyLevel::fast) {
      continue;
    }
    CheckResult result = check.run();
    if (result) {
      ok = false;
      out << "[FAIL] " << check.name << ": " << *result << "\n";
    } else {
      out << "[PASS] " << check.name << "\n";
    }
  }
  return ok;
}

inline std::vector<VerifyCheck> build_verify_checks() {
  std::vector<VerifyCheck> checks;
  auto add = [&](std::string name, VerifyLevel level,
                 std::function<CheckResult()> fn) {
    checks.push_back({std::move(name), level, std::move(fn)});
  };

  add("generator_invariants", VerifyLevel::fast, []() -> CheckResult {
    Graph er = gen_erdos_renyi(60, 0.1, 11);
    if (auto r = detail::check_graph_is_simple_undirected(er, "er")) return r;
    if (!(gen_erdos_renyi(60, 0.1, 11) == er)) {
      return "er generator not deterministic under a fixed seed";
    }
    Graph pa = gen_preferential_attachment(80, 2, 12);
    if (auto r = detail::check_graph_is_simple_undirected(pa, "pa")) return r;
    if (!(gen_preferential_attachment(80, 2, 12) == pa)) {
      return "pa generator not deterministic under a fixed seed";
    }
    OverlayResult ov = gen_feature_overlay(FeatureOverlayConfig(4, 40, 0.5, 2), 13);
    if (auto r = detail::check_graph_is_simple_undirected(ov.graph, "overlay")) {
      return r;
    }
    OverlayResult ov2 = gen_feature_overlay(FeatureOverlayConfig(4, 40, 0.5, 2), 13);
    if (!(ov2.graph == ov.graph) || !(ov2.features == ov.features)) {
      return "overlay generator not deterministic under a fixed seed";
    }
    return std::nullopt;
  });

  add("neighborhood_properties", VerifyLevel::fast, []() -> CheckResult {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Graph g = gen_random_connected(20 + seed % 15, 10, mix_seed(31, seed));
      Rng rng(mix_seed(32, seed));
      node_list s = detail::random_subset(rng, g.node_count(), 6);
      node_list t = detail::random_subset(rng, g.node_count(), 6);
      for (unsigned l = 1; l <= 3; ++l) {
        node_list inner = neighborhood(g, s, l);
        node_list outer = neighborhood(g, s, l + 1);
        if (!std::includes(outer.begin(), outer.end(), inner.begin(),
                           inner.end())) {
          return "N(s,l) not contained in N(s,l+1) at seed " +
                 std::to_string(seed);
        }
        node_list st = s;
        st.insert(st.end(), t.begin(), t.end());
        std::sort(st.begin(), st.end());
        st.erase(std::unique(st.begin(), st.end()), st.end());
        node_list joint = neighborhood(g, st, l);
        node_list left = neighborhood(g, s, l);
        node_list right = neighborhood(g, t, l);
        node_list merged;
        std::set_union(left.begin(), left.end(), right.begin(), right.end(),
                       std::back_inserter(merged));
        if (joint != merged) {
          return "union decomposition failed at seed " + std::to_string(seed);
        }
      }
    }
    return std::nullopt;
  });

  add("greedy_cds_valid", VerifyLevel::fast, []() -> CheckResult {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      Graph g = gen_random_connected(6 + seed % 20, seed % 12, mix_seed(41, seed));
      node_list cds = greedy_cds(g);
      if (neighborhood(g, cds, 1).size() != g.node_count()) {
        return "greedy_cds not dominating at seed " + std::to_string(seed);
      }
      if (!is_connected_subset(g, cds)) {
        return "greedy_cds not connected at seed " + std::to_string(seed);
      }
    }
    return std::nullopt;
  });

  add("chain_enumeration_definition", VerifyLevel::fast, []() -> CheckResult {
    // Every enumerated chain passes the constraint-by-constraint filter, and
    // nothing the filter accepts is missing, for all lookaheads up to 3.
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      Graph g = gen_random_connected(9, seed % 8, mix_seed(51, seed));
      Rng rng(mix_seed(52, seed));
      VisibilityView<Graph> view(g, static_cast<node_id>(rng.below(9)), 3, 3);
      for (int grow = 0; grow < 2; ++grow) {
        auto chains = view.explore_chains();
        // brute force: all ordered tuples of distinct nodes up to length 3
        std::vector<Chain> expect;
        const std::size_t n = g.node_count();
        for (node_id a = 0; a < n; ++a) {
          Chain c1{a};
          if (view.chain_valid(c1)) expect.push_back(c1);
          for (node_id b = 0; b < n; ++b) {
            if (b == a) continue;
            Chain c2{a, b};
            if (view.chain_valid(c2)) expect.push_back(c2);
            for (node_id c = 0; c < n; ++c) {
              if (c == a || c == b) continue;
              Chain c3{a, b, c};
              if (view.chain_valid(c3)) expect.push_back(c3);
            }
          }
        }
        std::sort(expect.begin(), expect.end(),
                  [](const Chain& x, const Chain& y) {
                    if (x.size() != y.size()) return x.size() < y.size();
                    return x < y;
                  });
        if (chains != expect) {
          return "chain enumeration disagrees with definitional filter at seed " +
                 std::to_string(seed);
        }
        if (view.frontier().empty()) break;
        view.extend({view.frontier().front()});
      }
    }
    return std::nullopt;
  });

  add("frontier_cache_coherence", VerifyLevel::fast, []() -> CheckResult {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Graph g = gen_random_connected(25, 12, mix_seed(61, seed));
      Rng rng(mix_seed(62, seed));
      VisibilityView<Graph> view(g, static_cast<node_id>(rng.below(25)), 2, 2);
      for (int step = 0; step < 10 && !view.frontier().empty(); ++step) {
        auto chains = view.explore_chains();
        view.extend(chains[rng.below(chains.size())]);
        if (!view.frontier_matches_recompute()) {
          return "frontier cache incoherent at seed " + std::to_string(seed);
        }
      }
    }
    return std::nullopt;
  });

  add("exposure_gain_definition", VerifyLevel::fast, []() -> CheckResult {
    // exposure_gain both matches the from-scratch neighborhood difference and
    // respects the max-degree * length cap.
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
      Graph g = gen_random_connected(16, 10, mix_seed(71, seed));
      Rng rng(mix_seed(72, seed));
      VisibilityView<Graph> view(g, static_cast<node_id>(rng.below(16)), 2, 1);
      const std::size_t cap = max_degree(g);
      for (int step = 0; step < 5 && !view.frontier().empty(); ++step) {
        for (const auto& sc : view.explore_chains_scored()) {
          node_list with = view.selected_order();
          node_list without = with;
          for (node_id v : sc.nodes) with.push_back(v);
          node_list n_with = neighborhood(g, with, 1);
          node_list n_without = neighborhood(g, without, 1);
          std::vector<node_id> sel_sorted = with;
          std::sort(sel_sorted.begin(), sel_sorted.end());
          std::size_t fresh = 0;
          for (node_id v : n_with) {
            bool in_old = std::binary_search(n_without.begin(), n_without.end(), v);
            bool in_sel = std::binary_search(sel_sorted.begin(), sel_sorted.end(), v);
            if (!in_old && !in_sel) ++fresh;
          }
          if (sc.exposure != fresh || view.exposure_gain(sc.nodes) != fresh) {
            return "exposure gain mismatch at seed " + std::to_string(seed);
          }
          if (fresh > cap * sc.nodes.size()) {
            return "exposure gain exceeds max-degree bound at seed " +
                   std::to_string(seed);
          }
        }
        auto chains = view.explore_chains();
        view.extend(chains[rng.below(chains.size())]);
      }
    }
    return std::nullopt;
  });

  add("utility_monotone", VerifyLevel::fast, []() -> CheckResult {
    Graph g = gen_random_connected(200, 300, 81);
    FeatureTable ft = detail::random_features(g, 5, 0.05, 82);
    Task task = detail::random_task(g, ft, 83);
    return check_monotone(
        [&](const node_list& s) { return task_utility(task, s, ft); },
        g.node_count(), 1000, 84);
  });

  add("utility_submodular", VerifyLevel::fast, []() -> CheckResult {
    Graph g = gen_random_connected(200, 300, 91);
    FeatureTable ft = detail::random_features(g, 5, 0.05, 92);
    Task task = detail::random_task(g, ft, 93);
    return check_submodular(
        [&](const node_list& s) { return task_utility(task, s, ft); },
        g.node_count(), 1000, 94);
  });

  add("utility_range_and_cap", VerifyLevel::fast, []() -> CheckResult {
    Graph g = gen_random_connected(50, 60, 101);
    FeatureTable ft = detail::random_features(g, 4, 0.2, 102);
    Task task = detail::random_task(g, ft, 103);
    Rng rng(104);
    for (int t = 0; t < 500; ++t) {
      node_list s = detail::random_subset(rng, g.node_count(), 30);
      double u = task_utility(task, s, ft);
      if (!(u >= 0.0 && u <= 1.0)) return "utility escaped [0,1]";
    }
    // selecting one value-1 node per required feature hits exactly 1
    node_list tops;
    for (feature_id x = 0; x < ft.feature_count(); ++x) {
      if (task.weights[x] <= 0.0) continue;
      for (node_id v = 0; v < g.node_count(); ++v) {
        if (ft.value(v, x) == 1.0) {
          tops.push_back(v);
          break;
        }
      }
    }
    std::sort(tops.begin(), tops.end());
    tops.erase(std::unique(tops.begin(), tops.end()), tops.end());
    if (task_utility(task, tops, ft) != 1.0) {
      return "full coverage by top nodes does not reach 1";
    }
    return std::nullopt;
  });

  add("trace_invariants", VerifyLevel::fast, []() -> CheckResult {
    for (std::uint64_t seed = 0; seed < 24; ++seed) {
      Graph g = gen_random_connected(30 + seed % 20, 20, mix_seed(111, seed));
      FeatureTable ft = detail::random_features(g, 3, 0.1, mix_seed(112, seed));
      Task task = detail::random_task(g, ft, mix_seed(113, seed));
      NetExpParams params;
      params.l_deg = 1 + seed % 2;
      params.epsilon = 0.5;
      params.seed = mix_seed(114, seed);
      params.max_selected = g.node_count();
      RunTrace trace;
      bool from_netexp = true;
      switch (seed % 3) {
        case 0: trace = run_netexp(g, ft, task, params); break;
        case 1:
          trace = run_baseline(BaselineKind::random, g, ft, task, params);
          from_netexp = false;
          break;
        default: trace = run_baseline(BaselineKind::deg, g, ft, task, params);
      }
      if (auto r = check_trace_integrity(g, ft, task, params, trace, from_netexp)) {
        return "seed " + std::to_string(seed) + ": " + *r;
      }
      // replay determinism
      RunTrace again;
      switch (seed % 3) {
        case 0: again = run_netexp(g, ft, task, params); break;
        case 1: again = run_baseline(BaselineKind::random, g, ft, task, params); break;
        default: again = run_baseline(BaselineKind::deg, g, ft, task, params);
      }
      if (!(again == trace)) {
        return "seed " + std::to_string(seed) + ": rerun produced a different trace";
      }
    }
    return std::nullopt;
  });

  add("visibility_access_audit", VerifyLevel::fast, []() -> CheckResult {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Graph g = gen_random_connected(24 + seed % 16, 18, mix_seed(121, seed));
      FeatureTable ft = detail::random_features(g, 3, 0.15, mix_seed(122, seed));
      Task task = detail::random_task(g, ft, mix_seed(123, seed));
      NetExpParams params;
      const unsigned combos[4][2] = {{1, 1}, {2, 1}, {2, 2}, {1, 2}};
      params.l_deg = combos[seed % 4][0];
      params.l_val = combos[seed % 4][1];
      params.seed = mix_seed(124, seed);
      params.max_selected = g.node_count();
      AuditOutcome out = audited_netexp(g, ft, task, params);
      if (out.adj_violations != 0 || out.val_violations != 0) {
        return "seed " + std::to_string(seed) + ": " +
               std::to_string(out.adj_violations) + " structural and " +
               std::to_string(out.val_violations) + " value reads out of bounds";
      }
    }
    return std::nullopt;
  });

  add("oracle_consistency", VerifyLevel::fast, []() -> CheckResult {
    return check_oracle_consistency(25, 131);
  });

  add("size_bound_lookahead2", VerifyLevel::full, []() -> CheckResult {
    SizeBoundProbe probe;
    probe.variant = BoundVariant::lookahead2;
    SizeBoundOutcome out = run_size_bound_probe(probe);
    if (out.graphs_checked != probe.graph_count || out.within_bound < 48) {
      return "only " + std::to_string(out.within_bound) + "/" +
             std::to_string(out.graphs_checked) + " graphs within bound; " +
             out.detail;
    }
    return std::nullopt;
  });

  add("size_bound_randompick", VerifyLevel::full, []() -> CheckResult {
    SizeBoundProbe probe;
    probe.variant = BoundVariant::randompick1;
    SizeBoundOutcome out = run_size_bound_probe(probe);
    if (out.graphs_checked != probe.graph_count || out.within_bound < 46) {
      return "only " + std::to_string(out.within_bound) + "/" +
             std::to_string(out.graphs_checked) + " graphs within bound; " +
             out.detail;
    }
    return std::nullopt;
  });

  return checks;
}

}  // namespace netexp
