#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "netexp/features.hpp"
#include "netexp/graph.hpp"
#include "netexp/rng.hpp"

namespace netexp {

// A task: where the search starts, which features matter and how much, and
// when to stop. Runs terminate once utility reaches (1 - beta) * quota.
struct Task {
  node_id initial_node = 0;
  std::vector<double> weights;  // one per feature; 0 means irrelevant
  double quota = 1.0;
  double beta = 0.05;

  void validate(std::size_t node_count, std::size_t feature_count) const {
    if (initial_node >= node_count) {
      throw std::invalid_argument("Task: initial node out of range");
    }
    if (weights.size() != feature_count) {
      throw std::invalid_argument("Task: weight vector size mismatch");
    }
    bool any_positive = false;
    for (double w : weights) {
      if (w < 0.0) throw std::invalid_argument("Task: negative weight");
      if (w > 0.0) any_positive = true;
    }
    if (!any_positive) {
      throw std::invalid_argument("Task: all weights are zero");
    }
    if (!(quota > 0.0)) throw std::invalid_argument("Task: quota must be > 0");
    if (!(beta > 0.0 && beta < 1.0)) {
      throw std::invalid_argument("Task: beta must lie in (0,1)");
    }
  }

  double weight_sum() const {
    return std::accumulate(weights.begin(), weights.end(), 0.0);
  }

  double target() const { return (1.0 - beta) * quota; }
};

// Probabilistic coverage of a single feature: 1 - prod(1 - x_s) over the
// selected nodes' values. Empty input covers nothing.
inline double feature_coverage(std::span<const double> values) {
  double residual = 1.0;
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("feature_coverage: value outside [0,1]");
    }
    residual *= 1.0 - v;
  }
  return 1.0 - residual;
}

// Weighted, normalized coverage across features. Duplicate node ids in s are
// ignored: the function is defined on node sets.
inline double task_utility(const Task& task, const node_list& s,
                           const FeatureTable& ft) {
  task.validate(ft.node_count(), ft.feature_count());
  node_list unique = s;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

  double total = 0.0;
  for (feature_id x = 0; x < ft.feature_count(); ++x) {
    if (task.weights[x] <= 0.0) continue;
    double residual = 1.0;
    for (node_id v : unique) residual *= 1.0 - ft.value(v, x);
    total += task.weights[x] * (1.0 - residual);
  }
  return total / task.weight_sum();
}

// Incremental coverage bookkeeping for a growing selected set. Keeps the
// residual product prod(1 - x_s) per relevant feature, so marginal gains and
// utility are O(#relevant features) per node and never touch values of nodes
// outside the candidate chain.
template <FeatureSource F>
class CoverageState {
 public:
  CoverageState(const Task& task, const F& features)
      : features_(&features), weight_sum_(task.weight_sum()) {
    for (feature_id x = 0; x < static_cast<feature_id>(task.weights.size());
         ++x) {
      if (task.weights[x] > 0.0) {
        relevant_.push_back(x);
        weight_.push_back(task.weights[x]);
        residual_.push_back(1.0);
      }
    }
    if (relevant_.empty()) {
      throw std::invalid_argument("CoverageState: all weights are zero");
    }
  }

  double utility() const {
    double total = 0.0;
    for (std::size_t i = 0; i < relevant_.size(); ++i) {
      total += weight_[i] * (1.0 - residual_[i]);
    }
    return total / weight_sum_;
  }

  // f(S ∪ chain) - f(S) without mutating the state.
  double gain(std::span<const node_id> chain) const {
    double delta = 0.0;
    for (std::size_t i = 0; i < relevant_.size(); ++i) {
      double shrink = 1.0;
      for (node_id v : chain) {
        shrink *= 1.0 - features_->value(v, relevant_[i]);
      }
      delta += weight_[i] * residual_[i] * (1.0 - shrink);
    }
    return delta / weight_sum_;
  }

  void add(std::span<const node_id> chain) {
    for (std::size_t i = 0; i < relevant_.size(); ++i) {
      for (node_id v : chain) {
        residual_[i] *= 1.0 - features_->value(v, relevant_[i]);
      }
    }
  }

  void add_node(node_id v) { add(std::span<const node_id>(&v, 1)); }

 private:
  const F* features_;
  double weight_sum_;
  std::vector<feature_id> relevant_;
  std::vector<double> weight_;
  std::vector<double> residual_;
};

// f(s ∪ chain) - f(s); the chain must be disjoint from s.
inline double marginal_gain(const Task& task, const node_list& s,
                            const FeatureTable& ft,
                            std::span<const node_id> chain) {
  task.validate(ft.node_count(), ft.feature_count());
  for (node_id v : chain) {
    if (std::find(s.begin(), s.end(), v) != s.end()) {
      throw std::invalid_argument("marginal_gain: chain overlaps selected set");
    }
  }
  CoverageState<FeatureTable> cov(task, ft);
  cov.add(s);
  return cov.gain(chain);
}

// Random tasks: `required` features drawn uniformly without replacement get
// weight 1, the initial node is uniform over the graph.
inline std::vector<Task> sample_tasks(std::size_t feature_count,
                                      std::size_t required_features,
                                      std::size_t task_count,
                                      std::size_t node_count,
                                      std::uint64_t seed) {
  if (required_features == 0 || required_features > feature_count) {
    throw std::invalid_argument("sample_tasks: required features out of range");
  }
  if (node_count == 0) {
    throw std::invalid_argument("sample_tasks: node_count must be positive");
  }
  Rng rng(seed);
  std::vector<Task> tasks;
  tasks.reserve(task_count);
  std::vector<feature_id> pool(feature_count);
  for (std::size_t t = 0; t < task_count; ++t) {
    for (feature_id x = 0; x < feature_count; ++x) pool[x] = x;
    Task task;
    task.weights.assign(feature_count, 0.0);
    for (std::size_t i = 0; i < required_features; ++i) {
      std::size_t j = i + rng.below(feature_count - i);
      std::swap(pool[i], pool[j]);
      task.weights[pool[i]] = 1.0;
    }
    task.initial_node = static_cast<node_id>(rng.below(node_count));
    tasks.push_back(std::move(task));
  }
  return tasks;
}

// Utility of the all-nodes set: the most a task can ever achieve on this
// table. Callers use it to flag quotas that cannot be met.
inline double max_task_utility(const Task& task, const FeatureTable& ft) {
  node_list all(ft.node_count());
  for (node_id v = 0; v < ft.node_count(); ++v) all[v] = v;
  return task_utility(task, all, ft);
}

}  // namespace netexp
