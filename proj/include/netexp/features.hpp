#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "netexp/graph.hpp"

namespace netexp {

using feature_id = std::uint32_t;

// Sparse per-node feature values. Stored values lie in (0, 1]; a node/feature
// pair that is absent has value 0. Immutable in spirit: built once by a
// generator or loader, then only read.
class FeatureTable {
 public:
  FeatureTable(std::size_t node_count, std::size_t feature_count)
      : by_node_(node_count), feature_count_(feature_count) {
    if (node_count == 0) {
      throw std::invalid_argument("FeatureTable: node_count must be positive");
    }
    if (feature_count == 0) {
      throw std::invalid_argument("FeatureTable: feature_count must be positive");
    }
  }

  std::size_t node_count() const { return by_node_.size(); }
  std::size_t feature_count() const { return feature_count_; }

  void set(node_id v, feature_id x, double value) {
    check_ids(v, x);
    if (!(value > 0.0 && value <= 1.0)) {
      throw std::invalid_argument("FeatureTable: value for node " +
                                  std::to_string(v) + " feature " +
                                  std::to_string(x) +
                                  " outside (0,1]: " + std::to_string(value));
    }
    auto& row = by_node_[v];
    auto it = std::lower_bound(
        row.begin(), row.end(), x,
        [](const auto& entry, feature_id key) { return entry.first < key; });
    if (it != row.end() && it->first == x) {
      it->second = value;
    } else {
      row.insert(it, {x, value});
    }
  }

  double value(node_id v, feature_id x) const {
    check_ids(v, x);
    const auto& row = by_node_[v];
    auto it = std::lower_bound(
        row.begin(), row.end(), x,
        [](const auto& entry, feature_id key) { return entry.first < key; });
    if (it != row.end() && it->first == x) return it->second;
    return 0.0;
  }

  std::span<const std::pair<feature_id, double>> features_of(node_id v) const {
    if (v >= by_node_.size()) {
      throw std::invalid_argument("FeatureTable: node id out of range");
    }
    return by_node_[v];
  }

  bool operator==(const FeatureTable& other) const {
    return feature_count_ == other.feature_count_ && by_node_ == other.by_node_;
  }

 private:
  void check_ids(node_id v, feature_id x) const {
    if (v >= by_node_.size()) {
      throw std::invalid_argument("FeatureTable: node id out of range");
    }
    if (x >= feature_count_) {
      throw std::invalid_argument("FeatureTable: feature id out of range");
    }
  }

  std::vector<std::vector<std::pair<feature_id, double>>> by_node_;
  std::size_t feature_count_;
};

// Read-only source of per-node feature values. The concrete FeatureTable
// models it; tests substitute an access-counting double.
template <class F>
concept FeatureSource = requires(const F& f, node_id v, feature_id x) {
  { f.value(v, x) } -> std::convertible_to<double>;
};

}  // namespace netexp
