#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "netexp/features.hpp"
#include "netexp/graph.hpp"
#include "netexp/rng.hpp"

namespace netexp {

// Erdős–Rényi G(n, p): every unordered pair is an edge independently.
inline Graph gen_erdos_renyi(std::size_t n, double p_edge, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_erdos_renyi: n must be >= 1");
  if (!(p_edge >= 0.0 && p_edge <= 1.0)) {
    throw std::invalid_argument("gen_erdos_renyi: p_edge outside [0,1]");
  }
  Graph g(n);
  Rng rng(seed);
  for (node_id i = 0; i + 1 < n; ++i) {
    for (node_id j = i + 1; j < n; ++j) {
      if (rng.flip(p_edge)) g.add_edge(i, j);
    }
  }
  return g;
}

namespace detail {

// Preferential attachment over `count` slots (ids 0..count-1): an (m+1)-clique
// seed, then each arrival wires m edges to distinct existing slots sampled
// proportionally to degree. Duplicate targets are resampled. Edges are
// reported through `emit`.
template <class EmitFn>
void pa_process(std::size_t count, unsigned m, Rng& rng, EmitFn&& emit) {
  // Endpoint ledger: each slot appears once per incident edge, so a uniform
  // draw from it is a degree-proportional draw.
  std::vector<node_id> endpoints;
  endpoints.reserve(2 * (m * count));
  for (node_id i = 0; i < m + 1; ++i) {
    for (node_id j = i + 1; j < m + 1; ++j) {
      emit(i, j);
      endpoints.push_back(i);
      endpoints.push_back(j);
    }
  }
  std::vector<node_id> targets;
  for (node_id t = m + 1; t < count; ++t) {
    targets.clear();
    while (targets.size() < m) {
      node_id cand = endpoints[rng.below(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), cand) == targets.end()) {
        targets.push_back(cand);
      }
    }
    for (node_id target : targets) {
      emit(t, target);
      endpoints.push_back(t);
      endpoints.push_back(target);
    }
  }
}

}  // namespace detail

// Connected scale-free graph grown by preferential attachment.
inline Graph gen_preferential_attachment(std::size_t n, unsigned m,
                                         std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("gen_preferential_attachment: m >= 1");
  if (n <= m) {
    throw std::invalid_argument(
        "gen_preferential_attachment: need n >= m + 1 nodes");
  }
  Graph g(n);
  Rng rng(seed);
  detail::pa_process(n, m,
                     rng, [&](node_id u, node_id v) { g.add_edge(u, v); });
  return g;
}

// Per-feature overlay model: each feature induces its own preferential
// attachment subgraph over an i.i.d.-sampled membership, the visible graph is
// the union of those subgraphs, and a member's value for a feature reflects
// its degree rank inside that feature's subgraph.
struct FeatureOverlayConfig {
  std::size_t feature_count = 1;
  std::size_t nodes_total = 1;
  std::vector<double> feature_probability;  // theta per feature
  std::vector<unsigned> attachment_links;   // m per feature

  FeatureOverlayConfig() = default;
  FeatureOverlayConfig(std::size_t features, std::size_t nodes, double theta,
                       unsigned m)
      : feature_count(features),
        nodes_total(nodes),
        feature_probability(features, theta),
        attachment_links(features, m) {}

  void validate() const {
    if (feature_count < 1 || nodes_total < 1) {
      throw std::invalid_argument("FeatureOverlayConfig: empty dimensions");
    }
    if (feature_probability.size() != feature_count ||
        attachment_links.size() != feature_count) {
      throw std::invalid_argument("FeatureOverlayConfig: per-feature vectors "
                                  "must match feature_count");
    }
    for (double theta : feature_probability) {
      if (!(theta >= 0.0 && theta <= 1.0)) {
        throw std::invalid_argument(
            "FeatureOverlayConfig: probability outside [0,1]");
      }
    }
    for (unsigned m : attachment_links) {
      if (m < 1) {
        throw std::invalid_argument(
            "FeatureOverlayConfig: attachment links must be >= 1");
      }
    }
  }
};

struct OverlayResult {
  Graph graph;
  FeatureTable features;
  // Features whose sampled membership was too small for the attachment
  // process and fell back to a clique (or stayed empty). Degenerate but
  // legal; callers may want to surface it.
  std::vector<feature_id> degenerate_features;
};

inline OverlayResult gen_feature_overlay(const FeatureOverlayConfig& config,
                                         std::uint64_t seed) {
  config.validate();
  const std::size_t n = config.nodes_total;
  OverlayResult out{Graph(n), FeatureTable(n, config.feature_count), {}};

  for (feature_id x = 0; x < config.feature_count; ++x) {
    Rng rng(mix_seed(seed, x));
    std::vector<node_id> members;
    for (node_id v = 0; v < n; ++v) {
      if (rng.flip(config.feature_probability[x])) members.push_back(v);
    }
    if (members.empty()) {
      out.degenerate_features.push_back(x);
      continue;
    }

    const unsigned m = config.attachment_links[x];
    std::vector<std::size_t> local_degree(members.size(), 0);
    auto emit = [&](node_id a, node_id b) {
      // a, b index into members; degrees are tracked per feature subgraph,
      // the union graph deduplicates shared edges.
      ++local_degree[a];
      ++local_degree[b];
      out.graph.add_edge(members[a], members[b]);
    };

    if (members.size() < static_cast<std::size_t>(m) + 1) {
      out.degenerate_features.push_back(x);
      for (std::size_t i = 0; i + 1 < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          emit(static_cast<node_id>(i), static_cast<node_id>(j));
        }
      }
    } else {
      detail::pa_process(members.size(), m, rng, emit);
    }

    // Rank members by degree within this feature's subgraph, ties to the
    // lower node id. Rank r (1-based) maps to (|V_x| - r + 1) / |V_x|, so the
    // top-ranked member gets exactly 1 and values stay in (0,1].
    std::vector<std::size_t> order(members.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (local_degree[a] != local_degree[b]) {
        return local_degree[a] > local_degree[b];
      }
      return members[a] < members[b];
    });
    const double count = static_cast<double>(members.size());
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
      out.features.set(members[order[rank]], x,
                       (count - static_cast<double>(rank)) / count);
    }
  }
  return out;
}

// Random connected graph: a random spanning tree plus `extra_edges` uniform
// chords. Used by the randomized property suites, which need connectivity
// guaranteed up front.
inline Graph gen_random_connected(std::size_t n, std::size_t extra_edges,
                                  std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_random_connected: n >= 1");
  Graph g(n);
  Rng rng(seed);
  for (node_id v = 1; v < n; ++v) {
    g.add_edge(v, static_cast<node_id>(rng.below(v)));
  }
  std::size_t added = 0, attempts = 0;
  const std::size_t max_possible = n * (n - 1) / 2;
  while (added < extra_edges && g.edge_count() < max_possible &&
         attempts < 20 * (extra_edges + 1)) {
    ++attempts;
    node_id u = static_cast<node_id>(rng.below(n));
    node_id v = static_cast<node_id>(rng.below(n));
    if (u != v && g.add_edge(u, v)) ++added;
  }
  return g;
}

}  // namespace netexp
