#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "netexp/graph.hpp"
#include "netexp/visibility.hpp"

namespace netexp {

// Greedy connected dominating set: grow from the highest-degree node, always
// adding the chain (length <= 2) with the best per-node exposure, until the
// 1-hop neighborhood of the set covers every node. Connectivity comes for
// free from chain growth.
inline node_list greedy_cds(const Graph& g) {
  if (!is_connected(g)) {
    throw std::invalid_argument("greedy_cds: graph must be connected");
  }
  node_id start = 0;
  for (node_id v = 1; v < g.node_count(); ++v) {
    if (g.degree(v) > g.degree(start)) start = v;
  }
  VisibilityView<Graph> view(g, start, 2, 1);
  while (view.exposed_count() < g.node_count()) {
    auto chains = view.explore_chains_scored();
    const ScoredChain* best = nullptr;
    double best_rate = -1.0;
    for (const auto& sc : chains) {
      double rate =
          static_cast<double>(sc.exposure) / static_cast<double>(sc.nodes.size());
      if (rate > best_rate) {
        best_rate = rate;
        best = &sc;
      }
    }
    // A connected graph with uncovered nodes always has a frontier node that
    // exposes something new.
    if (best == nullptr || best_rate <= 0.0) {
      throw std::logic_error("greedy_cds: no progress possible");
    }
    view.extend(best->nodes);
  }
  node_list out = view.selected_order();
  std::sort(out.begin(), out.end());
  return out;
}

struct MinCdsResult {
  node_list nodes;
  std::size_t size() const { return nodes.size(); }
};

namespace detail {

inline bool mask_connected(const std::vector<std::uint32_t>& adj_mask,
                           std::uint32_t mask) {
  if (mask == 0) return false;
  std::uint32_t start = mask & (~mask + 1);  // lowest set bit
  std::uint32_t reached = start;
  for (;;) {
    std::uint32_t grow = reached;
    std::uint32_t scan = reached;
    while (scan) {
      int v = std::countr_zero(scan);
      scan &= scan - 1;
      grow |= adj_mask[v] & mask;
    }
    if (grow == reached) break;
    reached = grow;
  }
  return reached == mask;
}

// Visits every size-k subset of {0..n-1} in lexicographic order.
template <class Fn>
bool for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (fn(idx)) return true;
    // advance
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (idx[i] != i + n - k) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return false;
    }
    if (k == 0) return false;
  }
}

}  // namespace detail

// Exhaustive minimum connected dominating set, searched in increasing size
// order. Exponential; hard-capped at 24 nodes so a stray call cannot melt a
// test suite.
inline MinCdsResult brute_force_min_cds(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n > 24) {
    throw std::invalid_argument("brute_force_min_cds: graph too large (max 24)");
  }
  if (!is_connected(g)) {
    throw std::invalid_argument("brute_force_min_cds: graph must be connected");
  }
  std::vector<std::uint32_t> closed(n), adj_mask(n);
  for (node_id v = 0; v < n; ++v) {
    std::uint32_t m = 0;
    for (node_id w : g.neighbors(v)) m |= (1u << w);
    adj_mask[v] = m;
    closed[v] = m | (1u << v);
  }
  const std::uint32_t full = (1u << n) - 1;

  MinCdsResult result;
  for (std::size_t k = 1; k <= n; ++k) {
    bool found = detail::for_each_combination(n, k, [&](const auto& idx) {
      std::uint32_t mask = 0, dominated = 0;
      for (std::size_t i : idx) {
        mask |= (1u << i);
        dominated |= closed[i];
      }
      if (dominated != full) return false;
      if (!detail::mask_connected(adj_mask, mask)) return false;
      result.nodes.assign(idx.begin(), idx.end());
      return true;
    });
    if (found) break;
  }
  return result;
}

}  // namespace netexp
