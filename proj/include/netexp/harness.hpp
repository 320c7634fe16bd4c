#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "netexp/datasets.hpp"
#include "netexp/explorer.hpp"
#include "netexp/generators.hpp"
#include "netexp/utility.hpp"

namespace netexp {

// One policy column in an experiment: netexp carries its exploration rate,
// the baselines ignore it.
struct PolicySpec {
  enum class Kind { netexp, random, deg, val } kind = Kind::netexp;
  double epsilon = 0.5;

  static PolicySpec parse(const std::string& text) {
    PolicySpec spec;
    auto colon = text.find(':');
    std::string name = text.substr(0, colon);
    if (name == "netexp") {
      spec.kind = Kind::netexp;
      if (colon != std::string::npos) {
        spec.epsilon = std::stod(text.substr(colon + 1));
      }
    } else if (name == "random") {
      spec.kind = Kind::random;
    } else if (name == "deg") {
      spec.kind = Kind::deg;
    } else if (name == "val") {
      spec.kind = Kind::val;
    } else {
      throw std::invalid_argument("unknown policy: " + text);
    }
    return spec;
  }

  std::string id() const {
    switch (kind) {
      case Kind::netexp: {
        std::string eps = detail::format_double(epsilon, 9);
        return "netexp:" + eps;
      }
      case Kind::random: return "random";
      case Kind::deg: return "deg";
      case Kind::val: return "val";
    }
    return "?";
  }
};

struct ExperimentConfig {
  // dataset: a generator spec or a path to a saved bundle
  std::string dataset = "er";  // er | pa | org | file
  std::string path;            // bundle prefix when dataset=file
  std::size_t n = 1000;
  double p_edge = 0.01;
  std::size_t feature_count = 5;
  double p_val = 0.001;
  double theta = 0.2;
  unsigned m = 2;
  std::size_t experts = 50;
  unsigned branching = 3;
  std::uint64_t dataset_seed = 1;

  std::size_t task_count = 20;
  std::size_t required_features = 3;
  std::uint64_t task_seed = 7;

  std::vector<PolicySpec> policies = {
      PolicySpec{PolicySpec::Kind::netexp, 0.5},
      PolicySpec{PolicySpec::Kind::random, 0.0},
      PolicySpec{PolicySpec::Kind::deg, 0.0},
      PolicySpec{PolicySpec::Kind::val, 0.0},
  };
  std::vector<std::size_t> budgets = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  bool quota_stop = false;  // curves run in budget mode by default
  unsigned l_deg = 1;
  unsigned l_val = 1;
  double beta = 0.05;
  double quota = 1.0;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  unsigned jobs = 1;

  void validate() const {
    if (dataset != "er" && dataset != "pa" && dataset != "org" &&
        dataset != "file") {
      throw std::invalid_argument("config: unknown dataset kind " + dataset);
    }
    if (dataset == "file" && path.empty()) {
      throw std::invalid_argument("config: dataset=file needs path=");
    }
    if (policies.empty()) throw std::invalid_argument("config: no policies");
    if (task_count == 0) throw std::invalid_argument("config: no tasks");
    if (seeds.empty()) throw std::invalid_argument("config: no seeds");
    if (budgets.empty()) throw std::invalid_argument("config: no budgets");
    std::vector<std::uint64_t> s = seeds;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw std::invalid_argument("config: seeds must be distinct");
    }
    if (required_features == 0 || required_features > feature_count) {
      throw std::invalid_argument("config: required features out of range");
    }
  }
};

namespace detail {

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

template <class T, class ParseFn>
std::vector<T> parse_list(const std::string& text, ParseFn&& parse) {
  std::vector<T> out;
  for (const std::string& item : split(text, ',')) {
    std::string t = trim(item);
    if (!t.empty()) out.push_back(parse(t));
  }
  return out;
}

}  // namespace detail

// key=value config text; '#' starts a comment line. Unknown keys are errors.
inline ExperimentConfig parse_config(std::istream& in,
                                     const std::string& origin = "<config>") {
  ExperimentConfig config;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw parse_error(origin, no, "expected key=value");
    }
    std::string key = detail::trim(t.substr(0, eq));
    std::string value = detail::trim(t.substr(eq + 1));
    try {
      if (key == "dataset") config.dataset = value;
      else if (key == "path") config.path = value;
      else if (key == "n") config.n = std::stoull(value);
      else if (key == "p_edge") config.p_edge = std::stod(value);
      else if (key == "features") config.feature_count = std::stoull(value);
      else if (key == "p_val") config.p_val = std::stod(value);
      else if (key == "theta") config.theta = std::stod(value);
      else if (key == "m") config.m = static_cast<unsigned>(std::stoul(value));
      else if (key == "experts") config.experts = std::stoull(value);
      else if (key == "branching")
        config.branching = static_cast<unsigned>(std::stoul(value));
      else if (key == "dataset_seed") config.dataset_seed = std::stoull(value);
      else if (key == "tasks") config.task_count = std::stoull(value);
      else if (key == "required")
        config.required_features = std::stoull(value);
      else if (key == "task_seed") config.task_seed = std::stoull(value);
      else if (key == "policies")
        config.policies = detail::parse_list<PolicySpec>(
            value, [](const std::string& s) { return PolicySpec::parse(s); });
      else if (key == "budgets")
        config.budgets = detail::parse_list<std::size_t>(
            value, [](const std::string& s) { return std::stoull(s); });
      else if (key == "mode") {
        if (value == "quota") config.quota_stop = true;
        else if (value == "budget") config.quota_stop = false;
        else throw std::invalid_argument("mode must be quota or budget");
      } else if (key == "l_deg")
        config.l_deg = static_cast<unsigned>(std::stoul(value));
      else if (key == "l_val")
        config.l_val = static_cast<unsigned>(std::stoul(value));
      else if (key == "beta") config.beta = std::stod(value);
      else if (key == "quota") config.quota = std::stod(value);
      else if (key == "seeds")
        config.seeds = detail::parse_list<std::uint64_t>(
            value, [](const std::string& s) { return std::stoull(s); });
      else if (key == "jobs")
        config.jobs = static_cast<unsigned>(std::stoul(value));
      else
        throw std::invalid_argument("unknown key " + key);
    } catch (const parse_error&) {
      throw;
    } catch (const std::exception& e) {
      throw parse_error(origin, no, std::string(e.what()) + " (key " + key +
                                        ", value '" + value + "')");
    }
  }
  config.validate();
  return config;
}

inline ExperimentConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config: " + path.string());
  }
  return parse_config(in, path.string());
}

inline DatasetBundle materialize_dataset(const ExperimentConfig& config) {
  if (config.dataset == "er") {
    return build_er_dataset(config.n, config.p_edge, config.feature_count,
                            config.p_val, config.dataset_seed);
  }
  if (config.dataset == "pa") {
    return build_pa_overlay_dataset(config.n, config.feature_count,
                                    config.theta, config.m,
                                    config.dataset_seed);
  }
  if (config.dataset == "org") {
    return build_org_hierarchy_dataset(config.n, config.experts,
                                       config.feature_count, config.branching,
                                       config.dataset_seed);
  }
  return load_bundle(config.path);
}

inline std::vector<Task> make_tasks(const ExperimentConfig& config,
                                    const DatasetBundle& bundle) {
  auto tasks = sample_tasks(bundle.features.feature_count(),
                            config.required_features, config.task_count,
                            bundle.graph.node_count(), config.task_seed);
  for (Task& t : tasks) {
    t.quota = config.quota;
    t.beta = config.beta;
  }
  return tasks;
}

struct CurvePoint {
  std::string policy;
  std::size_t budget;
  double mean_utility;
  double stderr_utility;
  double mean_exposed;
  std::size_t runs;
};

struct RunRecord {
  std::string run_id;
  std::string policy;
  std::size_t task_index;
  std::uint64_t seed;
  RunTrace trace;
};

namespace detail {

// Bounded worker pool over an index space; each job writes only its own slot,
// so results are position-stable no matter the completion order.
template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> threads;
  unsigned spawn = std::min<unsigned>(jobs, static_cast<unsigned>(count));
  threads.reserve(spawn);
  for (unsigned t = 0; t < spawn; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
}

// Utility/exposure of a budget-mode trace at the moment |S| last was <= b.
inline double utility_at_budget(const RunTrace& trace, std::size_t b) {
  if (b == 0) return 0.0;
  double u = trace.initial_utility;
  for (const TraceStep& step : trace.steps) {
    if (step.selected_after > b) break;
    u = step.utility_after;
  }
  return u;
}

inline double exposed_at_budget(const RunTrace& trace, std::size_t b) {
  if (b == 0) return 0.0;
  double e = static_cast<double>(trace.initial_exposed);
  for (const TraceStep& step : trace.steps) {
    if (step.selected_after > b) break;
    e = static_cast<double>(step.exposed_after);
  }
  return e;
}

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

inline MeanStderr mean_stderr(const std::vector<double>& xs) {
  MeanStderr out;
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    double var = ss / static_cast<double>(xs.size() - 1);
    out.stderr_ = std::sqrt(var / static_cast<double>(xs.size()));
  }
  return out;
}

inline std::string csv_double(double x) { return format_double(x, 9); }

}  // namespace detail

// Executes one (policy, task, seed) run under the config's stopping mode.
inline RunTrace execute_policy(const DatasetBundle& bundle, const Task& task,
                               const PolicySpec& policy,
                               const ExperimentConfig& config,
                               std::uint64_t seed, std::size_t budget) {
  NetExpParams params;
  params.l_deg = config.l_deg;
  params.l_val = config.l_val;
  params.beta = config.beta;
  params.quota = config.quota;
  params.stop_at_quota = config.quota_stop;
  params.max_selected = budget;
  params.seed = seed;
  switch (policy.kind) {
    case PolicySpec::Kind::netexp:
      params.epsilon = policy.epsilon;
      return run_netexp(bundle.graph, bundle.features, task, params);
    case PolicySpec::Kind::random:
      return run_baseline(BaselineKind::random, bundle.graph, bundle.features,
                          task, params);
    case PolicySpec::Kind::deg:
      return run_baseline(BaselineKind::deg, bundle.graph, bundle.features,
                          task, params);
    case PolicySpec::Kind::val:
      return run_baseline(BaselineKind::val, bundle.graph, bundle.features,
                          task, params);
  }
  throw std::logic_error("execute_policy: bad policy kind");
}

// All (policy, task, seed) runs for a config, scheduled across the worker
// pool, in a deterministic order keyed by (policy, task, seed) position.
inline std::vector<RunRecord> run_all(const ExperimentConfig& config,
                                      const DatasetBundle& bundle,
                                      const std::vector<Task>& tasks,
                                      std::size_t budget) {
  const std::size_t total =
      config.policies.size() * tasks.size() * config.seeds.size();
  std::vector<RunRecord> records(total);
  detail::parallel_for(total, config.jobs, [&](std::size_t i) {
    const std::size_t per_policy = tasks.size() * config.seeds.size();
    const std::size_t p = i / per_policy;
    const std::size_t t = (i % per_policy) / config.seeds.size();
    const std::size_t s = i % config.seeds.size();
    const PolicySpec& policy = config.policies[p];
    std::uint64_t run_seed = mix_seed(config.seeds[s], t);
    RunRecord rec;
    rec.policy = policy.id();
    rec.task_index = t;
    rec.seed = config.seeds[s];
    rec.run_id = rec.policy + "-t" + std::to_string(t) + "-s" +
                 std::to_string(rec.seed);
    rec.trace = execute_policy(bundle, tasks[t], policy, config, run_seed, budget);
    records[i] = std::move(rec);
  });
  return records;
}

namespace detail {

inline void write_run_artifacts(const std::vector<RunRecord>& records,
                                const std::filesystem::path& out_dir) {
  std::string runs_csv =
      "run_id,policy,task,seed,outcome,steps,final_selected,final_utility,"
      "final_exposed\n";
  std::string traces;
  for (const RunRecord& rec : records) {
    const RunTrace& tr = rec.trace;
    runs_csv += rec.run_id + ',' + rec.policy + ',' +
                std::to_string(rec.task_index) + ',' +
                std::to_string(rec.seed) + ',' + to_string(tr.outcome) + ',' +
                std::to_string(tr.steps.size()) + ',' +
                std::to_string(tr.final_selected()) + ',' +
                csv_double(tr.final_utility()) + ',' +
                std::to_string(tr.final_exposed()) + '\n';
    traces += "run " + rec.run_id + '\n';
    traces += "init selected=1 utility=" + format_double(tr.initial_utility) +
              " exposed=" + std::to_string(tr.initial_exposed) + '\n';
    for (const TraceStep& step : tr.steps) {
      traces += "step " + std::to_string(step.iteration) + ' ' +
                to_string(step.action) + " chain=";
      for (std::size_t i = 0; i < step.chain.size(); ++i) {
        if (i) traces += ',';
        traces += std::to_string(step.chain[i]);
      }
      traces += " utility=" + format_double(step.utility_after) +
                " selected=" + std::to_string(step.selected_after) +
                " exposed=" + std::to_string(step.exposed_after) +
                " eps=" + format_double(step.epsilon_in_effect) + '\n';
    }
    traces += "outcome ";
    traces += to_string(tr.outcome);
    traces += '\n';
  }
  std::filesystem::create_directories(out_dir);
  write_file(out_dir / "runs.csv", runs_csv);
  write_file(out_dir / "traces.txt", traces);
}

}  // namespace detail

// Utility-vs-budget curves (and exposed-network curves) for every configured
// policy. Each (policy, task, seed) runs once to the maximum budget; the
// per-budget numbers are read off the trace at the largest |S| <= budget.
// Writes curve.csv, runs.csv, traces.txt when out_dir is given; nothing is
// written unless the whole sweep succeeded.
inline std::vector<CurvePoint> run_utility_curve(
    const ExperimentConfig& config,
    const std::optional<std::filesystem::path>& out_dir = std::nullopt) {
  config.validate();
  DatasetBundle bundle = materialize_dataset(config);
  std::vector<Task> tasks = make_tasks(config, bundle);
  const std::size_t max_budget =
      *std::max_element(config.budgets.begin(), config.budgets.end());
  std::vector<RunRecord> records = run_all(config, bundle, tasks, max_budget);

  std::vector<CurvePoint> points;
  for (const PolicySpec& policy : config.policies) {
    const std::string id = policy.id();
    for (std::size_t budget : config.budgets) {
      std::vector<double> utils, exposed;
      for (const RunRecord& rec : records) {
        if (rec.policy != id) continue;
        utils.push_back(detail::utility_at_budget(rec.trace, budget));
        exposed.push_back(detail::exposed_at_budget(rec.trace, budget));
      }
      auto u = detail::mean_stderr(utils);
      auto e = detail::mean_stderr(exposed);
      points.push_back({id, budget, u.mean, u.stderr_, e.mean, utils.size()});
    }
  }

  if (out_dir) {
    std::string csv = "policy,budget,mean_utility,stderr_utility,mean_exposed,runs\n";
    for (const CurvePoint& p : points) {
      csv += p.policy + ',' + std::to_string(p.budget) + ',' +
             detail::csv_double(p.mean_utility) + ',' +
             detail::csv_double(p.stderr_utility) + ',' +
             detail::csv_double(p.mean_exposed) + ',' +
             std::to_string(p.runs) + '\n';
    }
    std::filesystem::create_directories(*out_dir);
    detail::write_file(*out_dir / "curve.csv", csv);
    detail::write_run_artifacts(records, *out_dir);
  }
  return points;
}

struct EpsilonPoint {
  std::string dataset;
  double epsilon;
  double mean_efficiency;        // mean of f(S)/|S| at the budget
  double normalized_efficiency;  // scaled so the per-dataset max is 1
  std::size_t runs;
};

// Efficiency f(S)/|S| as the exploration rate varies; the list must include
// both endpoints 0 and 1 so the interleaving always gets compared against
// explore-only and exploit-only.
inline std::vector<EpsilonPoint> run_epsilon_sweep(
    const ExperimentConfig& config, const std::vector<double>& epsilons,
    const std::optional<std::filesystem::path>& out_dir = std::nullopt) {
  config.validate();
  if (std::find(epsilons.begin(), epsilons.end(), 0.0) == epsilons.end() ||
      std::find(epsilons.begin(), epsilons.end(), 1.0) == epsilons.end()) {
    throw std::invalid_argument("epsilon sweep must include 0 and 1");
  }
  for (double eps : epsilons) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
      throw std::invalid_argument("epsilon outside [0,1]");
    }
  }
  DatasetBundle bundle = materialize_dataset(config);
  std::vector<Task> tasks = make_tasks(config, bundle);
  const std::size_t budget =
      *std::max_element(config.budgets.begin(), config.budgets.end());

  ExperimentConfig sweep = config;
  sweep.policies.clear();
  for (double eps : epsilons) {
    sweep.policies.push_back(PolicySpec{PolicySpec::Kind::netexp, eps});
  }
  std::vector<RunRecord> records = run_all(sweep, bundle, tasks, budget);

  std::vector<EpsilonPoint> points;
  double top = 0.0;
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    const std::string id = sweep.policies[i].id();
    std::vector<double> eff;
    for (const RunRecord& rec : records) {
      if (rec.policy != id) continue;
      eff.push_back(rec.trace.final_utility() /
                    static_cast<double>(rec.trace.final_selected()));
    }
    auto m = detail::mean_stderr(eff);
    points.push_back({config.dataset, epsilons[i], m.mean, 0.0, eff.size()});
    top = std::max(top, m.mean);
  }
  for (EpsilonPoint& p : points) {
    p.normalized_efficiency = top > 0.0 ? p.mean_efficiency / top : 0.0;
  }

  if (out_dir) {
    std::string csv =
        "dataset,epsilon,mean_efficiency,normalized_efficiency,runs\n";
    for (const EpsilonPoint& p : points) {
      csv += p.dataset + ',' + detail::csv_double(p.epsilon) + ',' +
             detail::csv_double(p.mean_efficiency) + ',' +
             detail::csv_double(p.normalized_efficiency) + ',' +
             std::to_string(p.runs) + '\n';
    }
    std::filesystem::create_directories(*out_dir);
    detail::write_file(*out_dir / "epsilon.csv", csv);
  }
  return points;
}

struct PvalPoint {
  std::string policy;
  double p_val;
  double mean_utility;
  double stderr_utility;
  std::size_t runs;
};

// Utility at a fixed budget as the proportion of valued nodes varies. Only
// meaningful for the er dataset family, whose value density is p_val.
inline std::vector<PvalPoint> run_pval_sweep(
    const ExperimentConfig& config, const std::vector<double>& pvals,
    std::size_t budget,
    const std::optional<std::filesystem::path>& out_dir = std::nullopt) {
  config.validate();
  if (config.dataset != "er") {
    throw std::invalid_argument("pval sweep requires dataset=er");
  }
  if (pvals.empty()) throw std::invalid_argument("pval sweep: empty list");
  if (budget == 0) throw std::invalid_argument("pval sweep: budget must be > 0");

  std::vector<PvalPoint> points;
  for (double p_val : pvals) {
    if (!(p_val >= 0.0 && p_val <= 1.0)) {
      throw std::invalid_argument("p_val outside [0,1]");
    }
    ExperimentConfig step = config;
    step.p_val = p_val;
    step.budgets = {budget};
    DatasetBundle bundle = materialize_dataset(step);
    std::vector<Task> tasks = make_tasks(step, bundle);
    std::vector<RunRecord> records = run_all(step, bundle, tasks, budget);
    for (const PolicySpec& policy : step.policies) {
      const std::string id = policy.id();
      std::vector<double> utils;
      for (const RunRecord& rec : records) {
        if (rec.policy != id) continue;
        utils.push_back(rec.trace.final_utility());
      }
      auto m = detail::mean_stderr(utils);
      points.push_back({id, p_val, m.mean, m.stderr_, utils.size()});
    }
  }

  if (out_dir) {
    std::string csv = "policy,p_val,mean_utility,stderr_utility,runs\n";
    for (const PvalPoint& p : points) {
      csv += p.policy + ',' + detail::csv_double(p.p_val) + ',' +
             detail::csv_double(p.mean_utility) + ',' +
             detail::csv_double(p.stderr_utility) + ',' +
             std::to_string(p.runs) + '\n';
    }
    std::filesystem::create_directories(*out_dir);
    detail::write_file(*out_dir / "pval.csv", csv);
  }
  return points;
}

struct NeedlePoint {
  std::string topology;  // "pa" or "path"
  std::size_t n;
  std::size_t median_selected;
  std::size_t runs;
};

namespace detail {

// Single hidden top-valued node: the unique nonzero value sits on the
// highest-degree node (lowest id on ties). The run must select it to meet the
// quota, so |S| measures how fast the policy can navigate to it.
inline std::size_t needle_run(const Graph& g, std::uint64_t seed) {
  node_id needle = 0;
  for (node_id v = 1; v < g.node_count(); ++v) {
    if (g.degree(v) > g.degree(needle)) needle = v;
  }
  FeatureTable ft(g.node_count(), 1);
  ft.set(needle, 0, 1.0);

  Rng rng(mix_seed(seed, 99));
  node_id start = static_cast<node_id>(rng.below(g.node_count()));
  if (start == needle) {
    start = static_cast<node_id>((needle + 1) % g.node_count());
  }
  Task task;
  task.initial_node = start;
  task.weights = {1.0};
  NetExpParams params;
  params.epsilon = 0.5;
  params.seed = mix_seed(seed, 7);
  params.max_selected = g.node_count();  // safety net, never binding
  RunTrace trace = run_netexp(g, ft, task, params);
  return trace.final_selected();
}

inline std::size_t low_median(std::vector<std::size_t> xs) {
  std::sort(xs.begin(), xs.end());
  return xs[(xs.size() - 1) / 2];
}

}  // namespace detail

// Scaling probe: how many selections the interleaving policy needs to find a
// single hidden top-valued node, on scale-free graphs versus a path control,
// as n grows.
inline std::vector<NeedlePoint> run_needle_scenario(
    const std::vector<std::size_t>& n_list, std::size_t seed_count,
    const std::optional<std::filesystem::path>& out_dir = std::nullopt) {
  if (n_list.empty() || seed_count == 0) {
    throw std::invalid_argument("needle scenario: empty plan");
  }
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] <= n_list[i - 1]) {
      throw std::invalid_argument("needle scenario: n list must increase");
    }
  }
  std::vector<NeedlePoint> points;
  for (const char* topology : {"pa", "path"}) {
    for (std::size_t n : n_list) {
      Graph g = std::string(topology) == "pa"
                    ? gen_preferential_attachment(n, 2, mix_seed(4242, n))
                    : [&] {
                        Graph path(n);
                        for (node_id v = 0; v + 1 < n; ++v) {
                          path.add_edge(v, v + 1);
                        }
                        return path;
                      }();
      std::vector<std::size_t> sizes(seed_count);
      for (std::size_t s = 0; s < seed_count; ++s) {
        sizes[s] = detail::needle_run(g, mix_seed(1000 + s, n));
      }
      points.push_back({topology, n, detail::low_median(sizes), seed_count});
    }
  }
  if (out_dir) {
    std::string csv = "topology,n,median_selected,runs\n";
    for (const NeedlePoint& p : points) {
      csv += p.topology + ',' + std::to_string(p.n) + ',' +
             std::to_string(p.median_selected) + ',' +
             std::to_string(p.runs) + '\n';
    }
    std::filesystem::create_directories(*out_dir);
    detail::write_file(*out_dir / "needle.csv", csv);
  }
  return points;
}

}  // namespace netexp
