#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "netexp/features.hpp"
#include "netexp/generators.hpp"
#include "netexp/graph.hpp"
#include "netexp/rng.hpp"

namespace netexp {

// File-level parse/validation failure, pinned to file and line.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& file, std::size_t line,
              const std::string& reason)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + reason),
        file_(file),
        line_(line) {}

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

// A graph, its feature values, the external-label map, and free-form
// key=value metadata (generator name, parameters, seed) that makes the bundle
// regenerable.
struct DatasetBundle {
  Graph graph;
  FeatureTable features;
  std::vector<std::string> labels;  // external label per dense id
  std::vector<std::pair<std::string, std::string>> metadata;

  std::optional<std::string> meta(const std::string& key) const {
    for (const auto& [k, v] : metadata) {
      if (k == key) return v;
    }
    return std::nullopt;
  }
};

namespace detail {

// 17 significant digits: enough for a bit-faithful double round trip.
inline std::string format_double(double x, int digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

// Shortest representation that still round-trips; used for parameter
// metadata, where 0.2 should read back as "0.2".
inline std::string format_double_shortest(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace detail

// Plain-text, line-based serialization:
//   <prefix>.labels    "<dense_id> <label>", defines the node universe
//   <prefix>.edges     "<label> <label>"
//   <prefix>.features  "<label> <feature_id> <value>"
//   <prefix>.meta      "key=value"; must carry node_count and feature_count
inline void save_bundle(const DatasetBundle& bundle,
                        const std::filesystem::path& prefix) {
  const Graph& g = bundle.graph;
  if (bundle.labels.size() != g.node_count()) {
    throw std::invalid_argument("save_bundle: label map size mismatch");
  }
  std::string labels;
  for (node_id v = 0; v < g.node_count(); ++v) {
    labels += std::to_string(v);
    labels += ' ';
    labels += bundle.labels[v];
    labels += '\n';
  }
  std::string edges;
  for (node_id v = 0; v < g.node_count(); ++v) {
    for (node_id w : g.neighbors(v)) {
      if (v < w) {
        edges += bundle.labels[v];
        edges += ' ';
        edges += bundle.labels[w];
        edges += '\n';
      }
    }
  }
  std::string features;
  for (node_id v = 0; v < g.node_count(); ++v) {
    for (const auto& [x, value] : bundle.features.features_of(v)) {
      features += bundle.labels[v];
      features += ' ';
      features += std::to_string(x);
      features += ' ';
      features += detail::format_double(value);
      features += '\n';
    }
  }
  std::string meta;
  bool has_nc = false, has_fc = false;
  for (const auto& [k, v] : bundle.metadata) {
    if (k == "node_count") {
      has_nc = true;
      if (v != std::to_string(g.node_count())) {
        throw std::invalid_argument("save_bundle: node_count metadata mismatch");
      }
    }
    if (k == "feature_count") {
      has_fc = true;
      if (v != std::to_string(bundle.features.feature_count())) {
        throw std::invalid_argument(
            "save_bundle: feature_count metadata mismatch");
      }
    }
  }
  if (!has_nc) meta += "node_count=" + std::to_string(g.node_count()) + '\n';
  if (!has_fc) {
    meta += "feature_count=" + std::to_string(bundle.features.feature_count()) +
            '\n';
  }
  for (const auto& [k, v] : bundle.metadata) {
    meta += k + "=" + v + '\n';
  }
  auto with_ext = [&](const char* ext) {
    std::filesystem::path p = prefix;
    p += ext;
    return p;
  };
  detail::write_file(with_ext(".labels"), labels);
  detail::write_file(with_ext(".edges"), edges);
  detail::write_file(with_ext(".features"), features);
  detail::write_file(with_ext(".meta"), meta);
}

inline DatasetBundle load_bundle(const std::filesystem::path& prefix) {
  auto with_ext = [&](const char* ext) {
    std::filesystem::path p = prefix;
    p += ext;
    return p;
  };

  auto read_lines = [](const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw std::runtime_error("cannot open for reading: " + path.string());
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
  };

  // meta first: it pins the dimensions everything else is validated against
  const auto meta_path = with_ext(".meta");
  std::vector<std::pair<std::string, std::string>> metadata;
  {
    std::size_t no = 0;
    for (const std::string& line : read_lines(meta_path)) {
      ++no;
      if (line.empty()) continue;
      auto eq = line.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw parse_error(meta_path.string(), no, "expected key=value");
      }
      metadata.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
  }
  auto meta_value = [&](const std::string& key) -> std::string {
    for (const auto& [k, v] : metadata) {
      if (k == key) return v;
    }
    throw parse_error(meta_path.string(), 0, "missing required key " + key);
  };
  std::size_t node_count = 0, feature_count = 0;
  try {
    node_count = std::stoull(meta_value("node_count"));
    feature_count = std::stoull(meta_value("feature_count"));
  } catch (const std::logic_error&) {
    throw parse_error(meta_path.string(), 0,
                      "node_count/feature_count not parseable");
  }
  if (node_count == 0 || feature_count == 0) {
    throw parse_error(meta_path.string(), 0, "empty dataset dimensions");
  }

  // labels define the universe and the external-name mapping
  const auto labels_path = with_ext(".labels");
  std::vector<std::string> labels(node_count);
  std::unordered_map<std::string, node_id> label_to_id;
  {
    std::size_t no = 0;
    std::vector<std::uint8_t> seen(node_count, 0);
    for (const std::string& line : read_lines(labels_path)) {
      ++no;
      if (line.empty()) continue;
      auto toks = detail::split_ws(line);
      if (toks.size() != 2) {
        throw parse_error(labels_path.string(), no, "expected '<id> <label>'");
      }
      std::size_t id = 0;
      try {
        id = std::stoull(toks[0]);
      } catch (const std::logic_error&) {
        throw parse_error(labels_path.string(), no, "bad node id " + toks[0]);
      }
      if (id >= node_count) {
        throw parse_error(labels_path.string(), no,
                          "node id out of range: " + toks[0]);
      }
      if (seen[id]) {
        throw parse_error(labels_path.string(), no, "duplicate id " + toks[0]);
      }
      if (label_to_id.count(toks[1])) {
        throw parse_error(labels_path.string(), no,
                          "duplicate label " + toks[1]);
      }
      seen[id] = 1;
      labels[id] = toks[1];
      label_to_id[toks[1]] = static_cast<node_id>(id);
    }
    for (std::size_t id = 0; id < node_count; ++id) {
      if (!seen[id]) {
        throw parse_error(labels_path.string(), 0,
                          "no label for node " + std::to_string(id));
      }
    }
  }
  auto resolve = [&](const std::filesystem::path& path, std::size_t no,
                     const std::string& label) -> node_id {
    auto it = label_to_id.find(label);
    if (it == label_to_id.end()) {
      throw parse_error(path.string(), no, "unknown node label " + label);
    }
    return it->second;
  };

  DatasetBundle bundle{Graph(node_count), FeatureTable(node_count, feature_count),
                       std::move(labels), std::move(metadata)};

  const auto edges_path = with_ext(".edges");
  {
    std::size_t no = 0;
    for (const std::string& line : read_lines(edges_path)) {
      ++no;
      if (line.empty()) continue;
      auto toks = detail::split_ws(line);
      if (toks.size() != 2) {
        throw parse_error(edges_path.string(), no, "expected '<u> <v>'");
      }
      node_id u = resolve(edges_path, no, toks[0]);
      node_id v = resolve(edges_path, no, toks[1]);
      if (u == v) {
        throw parse_error(edges_path.string(), no,
                          "self-loop on node " + toks[0]);
      }
      if (!bundle.graph.add_edge(u, v)) {
        throw parse_error(edges_path.string(), no,
                          "duplicate edge " + toks[0] + " " + toks[1]);
      }
    }
  }

  const auto features_path = with_ext(".features");
  {
    std::size_t no = 0;
    for (const std::string& line : read_lines(features_path)) {
      ++no;
      if (line.empty()) continue;
      auto toks = detail::split_ws(line);
      if (toks.size() != 3) {
        throw parse_error(features_path.string(), no,
                          "expected '<node> <feature> <value>'");
      }
      node_id v = resolve(features_path, no, toks[0]);
      std::size_t x = 0;
      try {
        x = std::stoull(toks[1]);
      } catch (const std::logic_error&) {
        throw parse_error(features_path.string(), no,
                          "bad feature id " + toks[1]);
      }
      if (x >= feature_count) {
        throw parse_error(features_path.string(), no,
                          "feature id out of range: " + toks[1]);
      }
      char* end = nullptr;
      double value = std::strtod(toks[2].c_str(), &end);
      if (end == nullptr || *end != '\0') {
        throw parse_error(features_path.string(), no, "bad value " + toks[2]);
      }
      if (bundle.features.value(v, static_cast<feature_id>(x)) > 0.0) {
        throw parse_error(features_path.string(), no,
                          "duplicate value for node " + toks[0] + " feature " +
                              toks[1]);
      }
      try {
        bundle.features.set(v, static_cast<feature_id>(x), value);
      } catch (const std::invalid_argument& e) {
        throw parse_error(features_path.string(), no, e.what());
      }
    }
  }
  return bundle;
}

namespace detail {

inline std::vector<std::string> identity_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t v = 0; v < n; ++v) labels[v] = std::to_string(v);
  return labels;
}

inline std::string join_ids(const std::vector<feature_id>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ids[i]);
  }
  return out;
}

}  // namespace detail

// Erdős–Rényi graph with sparse uniform feature values: per feature, each
// node is valued with probability p_val; values are uniform in (0,1] and then
// rescaled so the per-feature maximum is exactly 1 (full coverage of a
// feature is achievable by selecting its top node). A feature that samples no
// valued node is resampled once; if still empty it is recorded in metadata as
// coverage-unachievable.
inline DatasetBundle build_er_dataset(std::size_t n, double p_edge,
                                      std::size_t feature_count, double p_val,
                                      std::uint64_t seed) {
  if (feature_count == 0) {
    throw std::invalid_argument("build_er_dataset: feature_count >= 1");
  }
  if (!(p_val >= 0.0 && p_val <= 1.0)) {
    throw std::invalid_argument("build_er_dataset: p_val outside [0,1]");
  }
  DatasetBundle bundle{gen_erdos_renyi(n, p_edge, mix_seed(seed, 0)),
                       FeatureTable(n, feature_count),
                       detail::identity_labels(n),
                       {}};
  std::vector<feature_id> unachievable;
  for (feature_id x = 0; x < feature_count; ++x) {
    Rng rng(mix_seed(seed, 1 + x));
    std::vector<std::pair<node_id, double>> valued;
    for (int attempt = 0; attempt < 2 && valued.empty(); ++attempt) {
      for (node_id v = 0; v < n; ++v) {
        if (rng.flip(p_val)) valued.emplace_back(v, rng.uniform_pos());
      }
    }
    if (valued.empty()) {
      unachievable.push_back(x);
      continue;
    }
    double top = 0.0;
    for (const auto& [v, u] : valued) top = std::max(top, u);
    for (const auto& [v, u] : valued) {
      bundle.features.set(v, x, u / top);
    }
  }
  bundle.metadata = {
      {"node_count", std::to_string(n)},
      {"feature_count", std::to_string(feature_count)},
      {"generator", "er"},
      {"p_edge", detail::format_double_shortest(p_edge)},
      {"p_val", detail::format_double_shortest(p_val)},
      {"seed", std::to_string(seed)},
  };
  if (!unachievable.empty()) {
    bundle.metadata.emplace_back("unachievable_features",
                                 detail::join_ids(unachievable));
  }
  return bundle;
}

// Preferential-attachment overlay dataset; see gen_feature_overlay.
inline DatasetBundle build_pa_overlay_dataset(std::size_t n,
                                              std::size_t feature_count,
                                              double theta, unsigned m,
                                              std::uint64_t seed) {
  FeatureOverlayConfig config(feature_count, n, theta, m);
  OverlayResult overlay = gen_feature_overlay(config, seed);
  DatasetBundle bundle{std::move(overlay.graph), std::move(overlay.features),
                       detail::identity_labels(n),
                       {
                           {"node_count", std::to_string(n)},
                           {"feature_count", std::to_string(feature_count)},
                           {"generator", "pa_overlay"},
                           {"theta", detail::format_double_shortest(theta)},
                           {"m", std::to_string(m)},
                           {"seed", std::to_string(seed)},
                       }};
  if (!overlay.degenerate_features.empty()) {
    bundle.metadata.emplace_back(
        "degenerate_features", detail::join_ids(overlay.degenerate_features));
  }
  return bundle;
}

// Organizational-hierarchy stand-in: a random tree with bounded branching, a
// uniformly chosen expert subset, and per-feature expert scores in (0,1] with
// the per-feature maximum forced to 1. Non-experts are worthless for every
// feature.
inline DatasetBundle build_org_hierarchy_dataset(std::size_t total_nodes,
                                                 std::size_t expert_count,
                                                 std::size_t feature_count,
                                                 unsigned branching,
                                                 std::uint64_t seed) {
  if (expert_count > total_nodes) {
    throw std::invalid_argument(
        "build_org_hierarchy_dataset: more experts than nodes");
  }
  if (branching < 1) {
    throw std::invalid_argument("build_org_hierarchy_dataset: branching >= 1");
  }
  if (feature_count == 0) {
    throw std::invalid_argument("build_org_hierarchy_dataset: features >= 1");
  }
  Graph g(total_nodes);
  Rng rng(mix_seed(seed, 0));
  // Attach each new node to a uniformly random node that still has slots.
  std::vector<node_id> open{0};
  std::vector<unsigned> children(total_nodes, 0);
  for (node_id v = 1; v < total_nodes; ++v) {
    std::size_t i = rng.below(open.size());
    node_id parent = open[i];
    g.add_edge(parent, v);
    if (++children[parent] >= branching) {
      open[i] = open.back();
      open.pop_back();
    }
    open.push_back(v);
  }

  FeatureTable ft(total_nodes, feature_count);
  std::vector<node_id> experts(total_nodes);
  for (node_id v = 0; v < total_nodes; ++v) experts[v] = v;
  for (std::size_t i = 0; i < expert_count; ++i) {
    std::size_t j = i + rng.below(total_nodes - i);
    std::swap(experts[i], experts[j]);
  }
  experts.resize(expert_count);
  for (feature_id x = 0; x < feature_count; ++x) {
    Rng fr(mix_seed(seed, 1 + x));
    std::vector<double> scores(expert_count);
    double top = 0.0;
    for (std::size_t i = 0; i < expert_count; ++i) {
      scores[i] = fr.uniform_pos();
      top = std::max(top, scores[i]);
    }
    for (std::size_t i = 0; i < expert_count; ++i) {
      ft.set(experts[i], x, scores[i] / top);
    }
  }
  return DatasetBundle{std::move(g), std::move(ft),
                       detail::identity_labels(total_nodes),
                       {
                           {"node_count", std::to_string(total_nodes)},
                           {"feature_count", std::to_string(feature_count)},
                           {"generator", "org_hierarchy"},
                           {"experts", std::to_string(expert_count)},
                           {"branching", std::to_string(branching)},
                           {"seed", std::to_string(seed)},
                       }};
}

}  // namespace netexp
