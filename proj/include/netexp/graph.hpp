#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace netexp {

using node_id = std::uint32_t;
// Node sets are carried as sorted, duplicate-free vectors of ids.
using node_list = std::vector<node_id>;

// Undirected simple graph over dense node ids 0..node_count-1.
// Immutable once built; all queries are const and safe to call concurrently.
class Graph {
 public:
  explicit Graph(std::size_t node_count) : adj_(node_count) {
    if (node_count == 0) {
      throw std::invalid_argument("Graph: node_count must be positive");
    }
  }

  std::size_t node_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_; }

  const std::vector<node_id>& neighbors(node_id v) const {
    check_node(v);
    return adj_[v];
  }

  std::size_t degree(node_id v) const {
    check_node(v);
    return adj_[v].size();
  }

  bool has_edge(node_id u, node_id v) const {
    check_node(u);
    check_node(v);
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }

  // Inserts {u, v}. Returns false if the edge already exists (overlays union
  // per-feature subgraphs, so repeats are expected there). Self-loops are
  // rejected outright: the representation is a simple graph.
  bool add_edge(node_id u, node_id v) {
    check_node(u);
    check_node(v);
    if (u == v) {
      throw std::invalid_argument("Graph: self-loop on node " +
                                  std::to_string(u));
    }
    if (has_edge(u, v)) return false;
    insert_sorted(adj_[u], v);
    insert_sorted(adj_[v], u);
    ++edges_;
    return true;
  }

  bool operator==(const Graph& other) const { return adj_ == other.adj_; }

  void check_node(node_id v) const {
    if (v >= adj_.size()) {
      throw std::invalid_argument("Graph: node id " + std::to_string(v) +
                                  " out of range");
    }
  }

 private:
  static void insert_sorted(std::vector<node_id>& vec, node_id v) {
    vec.insert(std::lower_bound(vec.begin(), vec.end(), v), v);
  }

  std::vector<std::vector<node_id>> adj_;
  std::size_t edges_ = 0;
};

// Anything that looks like a read-only graph: the concrete Graph, or an
// instrumented stand-in used by the visibility-compliance tests.
template <class G>
concept GraphLike = requires(const G& g, node_id v) {
  { g.node_count() } -> std::convertible_to<std::size_t>;
  { g.neighbors(v) } -> std::convertible_to<const std::vector<node_id>&>;
};

// All nodes within l hops of some node in s, inclusive of s itself.
inline node_list neighborhood(const Graph& g, const node_list& s, unsigned l) {
  if (l < 1) throw std::invalid_argument("neighborhood: hop radius must be >= 1");
  std::vector<std::uint8_t> seen(g.node_count(), 0);
  std::vector<node_id> frontier;
  frontier.reserve(s.size());
  for (node_id v : s) {
    g.check_node(v);
    if (!seen[v]) {
      seen[v] = 1;
      frontier.push_back(v);
    }
  }
  for (unsigned depth = 0; depth < l && !frontier.empty(); ++depth) {
    std::vector<node_id> next;
    for (node_id v : frontier) {
      for (node_id w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          next.push_back(w);
        }
      }
    }
    frontier = std::move(next);
  }
  node_list out;
  for (node_id v = 0; v < g.node_count(); ++v) {
    if (seen[v]) out.push_back(v);
  }
  return out;
}

inline std::size_t max_degree(const Graph& g) {
  std::size_t best = 0;
  for (node_id v = 0; v < g.node_count(); ++v) {
    best = std::max(best, g.degree(v));
  }
  return best;
}

// True iff the subgraph induced by s is connected. Empty sets are rejected.
inline bool is_connected_subset(const Graph& g, const node_list& s) {
  if (s.empty()) {
    throw std::invalid_argument("is_connected_subset: empty set");
  }
  std::vector<std::uint8_t> member(g.node_count(), 0);
  for (node_id v : s) {
    g.check_node(v);
    member[v] = 1;
  }
  std::vector<node_id> stack{s.front()};
  std::vector<std::uint8_t> seen(g.node_count(), 0);
  seen[s.front()] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    node_id v = stack.back();
    stack.pop_back();
    for (node_id w : g.neighbors(v)) {
      if (member[w] && !seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == s.size();
}

inline bool is_connected(const Graph& g) {
  node_list all(g.node_count());
  for (node_id v = 0; v < g.node_count(); ++v) all[v] = v;
  return is_connected_subset(g, all);
}

}  // namespace netexp
