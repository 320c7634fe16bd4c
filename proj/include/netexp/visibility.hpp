#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "netexp/graph.hpp"

namespace netexp {

// An ordered run of nodes where each one is newly exposed by the previous
// extension: chain[0] sits on the current frontier, and chain[i] only became
// visible once chain[i-1] was (hypothetically) added.
using Chain = std::vector<node_id>;

// Chain enumeration is exhaustive and grows exponentially with the lookahead,
// so the lookahead is capped hard.
inline constexpr unsigned max_chain_length = 3;

struct ScoredChain {
  Chain nodes;
  std::size_t exposure;  // new frontier nodes if the whole chain were added
};

// The selected set S plus everything an algorithm is allowed to see around
// it: structure within l_deg hops, values within l_val hops. All graph access
// by the selection policies goes through this view, which keeps the frontier
// cache coherent and the selected set connected by construction.
//
// Single-owner mutable value: move it between threads, don't share it for
// concurrent mutation. Read-only queries on a quiescent view are fine from
// many threads.
template <GraphLike G>
class VisibilityView {
 public:
  VisibilityView(const G& g, node_id v0, unsigned l_deg, unsigned l_val)
      : g_(&g), l_deg_(l_deg), l_val_(l_val) {
    if (l_deg < 1 || l_deg > max_chain_length || l_val < 1 ||
        l_val > max_chain_length) {
      throw std::invalid_argument("VisibilityView: hop bounds must lie in [1," +
                                  std::to_string(max_chain_length) + "]");
    }
    const std::size_t n = g.node_count();
    if (v0 >= n) throw std::invalid_argument("VisibilityView: bad initial node");
    selected_flag_.assign(n, 0);
    frontier_flag_.assign(n, 0);
    mark_selected(v0);
    for (node_id w : g_->neighbors(v0)) {
      if (!selected_flag_[w] && !frontier_flag_[w]) {
        frontier_flag_[w] = 1;
        frontier_.push_back(w);
      }
    }
    std::sort(frontier_.begin(), frontier_.end());
  }

  unsigned lookahead_deg() const { return l_deg_; }
  unsigned lookahead_val() const { return l_val_; }
  const G& graph() const { return *g_; }

  // Ñ(S,1): exposed frontier, sorted.
  const node_list& frontier() const { return frontier_; }

  // Selected nodes in the order they were added.
  const node_list& selected_order() const { return selected_order_; }
  std::size_t selected_count() const { return selected_order_.size(); }
  bool is_selected(node_id v) const { return selected_flag_[v] != 0; }

  // |N(S,1)| = |S| + |Ñ(S,1)|.
  std::size_t exposed_count() const {
    return selected_order_.size() + frontier_.size();
  }

  // True iff no single frontier node would expose anything new; once this
  // holds the structure reachable from S is fully mapped.
  bool is_saturated() const {
    for (node_id v : frontier_) {
      for (node_id w : g_->neighbors(v)) {
        if (!selected_flag_[w] && !frontier_flag_[w]) return false;
      }
    }
    return true;
  }

  bool chain_valid(const Chain& chain) const {
    if (chain.empty() || chain.size() > max_chain_length) return false;
    for (node_id v : chain) {
      if (v >= selected_flag_.size()) return false;
    }
    if (!frontier_flag_[chain[0]]) return false;
    if (chain.size() == 1) return true;
    // seen = membership in N(S ∪ prefix, 1) ∪ S ∪ prefix as the prefix grows
    std::vector<std::uint8_t> seen(selected_flag_.size(), 0);
    for (std::size_t v = 0; v < seen.size(); ++v) {
      seen[v] = selected_flag_[v] | frontier_flag_[v];
    }
    for (std::size_t i = 1; i < chain.size(); ++i) {
      std::vector<node_id> newly;
      for (node_id w : g_->neighbors(chain[i - 1])) {
        if (!seen[w]) {
          seen[w] = 1;
          newly.push_back(w);
        }
      }
      if (std::find(newly.begin(), newly.end(), chain[i]) == newly.end()) {
        return false;
      }
    }
    return true;
  }

  // Nodes that would join the frontier if the whole chain were added:
  // Ñ(S ∪ chain, 1) \ Ñ(S, 1), sorted. Rejects invalid chains.
  node_list exposure_set(const Chain& chain) const {
    require_valid(chain);
    std::vector<std::uint8_t> in_chain(selected_flag_.size(), 0);
    for (node_id v : chain) in_chain[v] = 1;
    std::vector<std::uint8_t> counted(selected_flag_.size(), 0);
    node_list out;
    for (node_id v : chain) {
      for (node_id w : g_->neighbors(v)) {
        if (!selected_flag_[w] && !frontier_flag_[w] && !in_chain[w] &&
            !counted[w]) {
          counted[w] = 1;
          out.push_back(w);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t exposure_gain(const Chain& chain) const {
    return exposure_set(chain).size();
  }

  // All chains of length 1..l_deg with their exposure counts, for the explore
  // step. Canonical order: shorter first, then lexicographic by node ids.
  // Empty frontier yields an empty list.
  std::vector<ScoredChain> explore_chains_scored() const {
    return enumerate(l_deg_, /*score_exposure=*/true);
  }

  std::vector<Chain> explore_chains() const {
    return strip(explore_chains_scored());
  }

  // All chains of length 1..l_val, for the exploit step. Enumeration never
  // reads adjacency of the deepest chain node: exploit lookahead needs values
  // there, not structure, so l_val may exceed l_deg by one hop without
  // touching structure beyond N(S, l_deg).
  std::vector<Chain> exploit_chains() const {
    return strip(enumerate(l_val_, /*score_exposure=*/false));
  }

  // Adds a valid chain to S, updating the frontier incrementally. Nodes are
  // marked selected (and the graph's note_selected hook fired) before any
  // adjacency of theirs is read, so an access-audited graph sees every read
  // as covered by the grown set.
  void extend(const Chain& chain) {
    require_valid(chain);
    for (node_id v : chain) {
      mark_selected(v);
    }
    std::vector<node_id> added;
    for (node_id v : chain) {
      for (node_id w : g_->neighbors(v)) {
        if (!selected_flag_[w] && !frontier_flag_[w]) {
          frontier_flag_[w] = 1;
          added.push_back(w);
        }
      }
    }
    // Rebuild the sorted frontier: drop newly selected nodes, merge additions.
    std::erase_if(frontier_, [&](node_id v) { return selected_flag_[v] != 0; });
    std::sort(added.begin(), added.end());
    node_list merged;
    merged.reserve(frontier_.size() + added.size());
    std::merge(frontier_.begin(), frontier_.end(), added.begin(), added.end(),
               std::back_inserter(merged));
    frontier_ = std::move(merged);
  }

  // Full recomputation of the frontier from first principles; the incremental
  // cache must always agree.
  bool frontier_matches_recompute() const {
    std::vector<std::uint8_t> expect(selected_flag_.size(), 0);
    for (node_id v : selected_order_) {
      for (node_id w : g_->neighbors(v)) {
        if (!selected_flag_[w]) expect[w] = 1;
      }
    }
    node_list rebuilt;
    for (std::size_t v = 0; v < expect.size(); ++v) {
      if (expect[v]) rebuilt.push_back(static_cast<node_id>(v));
    }
    return rebuilt == frontier_;
  }

 private:
  void mark_selected(node_id v) {
    selected_flag_[v] = 1;
    frontier_flag_[v] = 0;
    selected_order_.push_back(v);
    if constexpr (requires(const G& g, node_id u) { g.note_selected(u); }) {
      g_->note_selected(v);
    }
  }

  void require_valid(const Chain& chain) const {
    if (!chain_valid(chain)) {
      throw std::invalid_argument("VisibilityView: invalid chain");
    }
  }

  std::vector<ScoredChain> enumerate(unsigned cap, bool score_exposure) const {
    std::vector<ScoredChain> out;
    if (frontier_.empty()) return out;
    const std::size_t n = selected_flag_.size();
    // seen = N(S ∪ prefix, 1) ∪ S ∪ prefix membership, maintained with undo
    std::vector<std::uint8_t> seen(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
      seen[v] = selected_flag_[v] | frontier_flag_[v];
    }
    Chain prefix;
    std::size_t exposure = 0;

    auto dfs = [&](auto&& self, node_id u) -> void {
      prefix.push_back(u);
      const bool need_neighbors = prefix.size() < cap || score_exposure;
      std::vector<node_id> newly;
      if (need_neighbors) {
        for (node_id w : g_->neighbors(u)) {
          if (!seen[w]) {
            seen[w] = 1;
            newly.push_back(w);
          }
        }
        std::sort(newly.begin(), newly.end());
      }
      exposure += newly.size();
      out.push_back({prefix, exposure});
      if (prefix.size() < cap) {
        for (node_id w : newly) {
          --exposure;  // w joins the chain, so it stops counting as exposure
          self(self, w);
          ++exposure;
        }
      }
      exposure -= newly.size();
      for (node_id w : newly) seen[w] = 0;
      prefix.pop_back();
    };

    for (node_id v : frontier_) dfs(dfs, v);

    std::sort(out.begin(), out.end(),
              [](const ScoredChain& a, const ScoredChain& b) {
                if (a.nodes.size() != b.nodes.size()) {
                  return a.nodes.size() < b.nodes.size();
                }
                return a.nodes < b.nodes;
              });
    return out;
  }

  static std::vector<Chain> strip(std::vector<ScoredChain> scored) {
    std::vector<Chain> out;
    out.reserve(scored.size());
    for (auto& sc : scored) out.push_back(std::move(sc.nodes));
    return out;
  }

  const G* g_;
  unsigned l_deg_;
  unsigned l_val_;
  std::vector<std::uint8_t> selected_flag_;
  std::vector<std::uint8_t> frontier_flag_;
  node_list frontier_;        // sorted
  node_list selected_order_;  // insertion order
};

}  // namespace netexp
