// Command-line front end: dataset generation, experiment sweeps, and the
// invariant verification suite. Exit codes: 0 success, 1 usage error,
// 2 validation failure, 3 invariant violation.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netexp/datasets.hpp"
#include "netexp/harness.hpp"
#include "netexp/verify.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_validation = 2;
constexpr int exit_invariant = 3;

netexp::ExperimentConfig load_config(const std::string& path,
                                     const std::vector<std::string>& seed_list,
                                     unsigned jobs) {
  netexp::ExperimentConfig config = netexp::parse_config_file(path);
  if (!seed_list.empty()) {
    config.seeds.clear();
    for (const std::string& s : seed_list) {
      config.seeds.push_back(std::stoull(s));
    }
  }
  if (jobs > 0) config.jobs = jobs;
  config.validate();
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"netexp: information gathering in networks under local visibility"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "build and save a dataset bundle");
  std::string gen_model = "er";
  std::string gen_out;
  std::size_t gen_n = 1000;
  double gen_p_edge = 0.01;
  std::size_t gen_features = 5;
  double gen_p_val = 0.001;
  double gen_theta = 0.2;
  unsigned gen_m = 2;
  std::size_t gen_experts = 50;
  unsigned gen_branching = 3;
  std::uint64_t gen_seed = 1;
  gen->add_option("--model", gen_model, "er | pa | org")->required();
  gen->add_option("--out", gen_out, "output path prefix")->required();
  gen->add_option("--n", gen_n, "node count");
  gen->add_option("--p-edge", gen_p_edge, "er edge probability");
  gen->add_option("--features", gen_features, "feature count");
  gen->add_option("--p-val", gen_p_val, "er valued-node probability");
  gen->add_option("--theta", gen_theta, "pa overlay membership probability");
  gen->add_option("--m", gen_m, "pa attachment links");
  gen->add_option("--experts", gen_experts, "org expert count");
  gen->add_option("--branching", gen_branching, "org tree branching");
  gen->add_option("--seed", gen_seed, "generator seed");

  // run
  auto* run = app.add_subcommand("run", "utility curves for the configured policies");
  std::string run_config, run_out;
  std::vector<std::string> run_seeds;
  unsigned run_jobs = 0;
  run->add_option("--config", run_config, "key=value config file")->required();
  run->add_option("--out", run_out, "output directory")->required();
  run->add_option("--seed-list", run_seeds, "override config seeds")->delimiter(',');
  run->add_option("--jobs", run_jobs, "worker pool size");

  // sweep-epsilon
  auto* sweep_eps = app.add_subcommand("sweep-epsilon", "efficiency across exploration rates");
  std::string eps_config, eps_out;
  std::vector<double> eps_values = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5,
                                    0.6, 0.7, 0.8, 0.9, 1.0};
  std::vector<std::string> eps_seeds;
  unsigned eps_jobs = 0;
  sweep_eps->add_option("--config", eps_config)->required();
  sweep_eps->add_option("--out", eps_out)->required();
  sweep_eps->add_option("--epsilons", eps_values, "must include 0 and 1")->delimiter(',');
  sweep_eps->add_option("--seed-list", eps_seeds)->delimiter(',');
  sweep_eps->add_option("--jobs", eps_jobs);

  // sweep-pval
  auto* sweep_pval = app.add_subcommand("sweep-pval", "utility across valued-node density");
  std::string pval_config, pval_out;
  std::vector<double> pval_values = {0.001, 0.002, 0.005, 0.01, 0.02};
  std::size_t pval_budget = 50;
  std::vector<std::string> pval_seeds;
  unsigned pval_jobs = 0;
  sweep_pval->add_option("--config", pval_config)->required();
  sweep_pval->add_option("--out", pval_out)->required();
  sweep_pval->add_option("--pvals", pval_values)->delimiter(',');
  sweep_pval->add_option("--budget", pval_budget, "fixed selected-set budget");
  sweep_pval->add_option("--seed-list", pval_seeds)->delimiter(',');
  sweep_pval->add_option("--jobs", pval_jobs);

  // needle
  auto* needle = app.add_subcommand("needle", "hidden-node scaling probe");
  std::vector<std::size_t> needle_ns = {1000, 10000};
  std::size_t needle_seeds = 25;
  std::string needle_out;
  needle->add_option("--n-list", needle_ns, "increasing node counts")->delimiter(',');
  needle->add_option("--seeds", needle_seeds, "runs per size");
  needle->add_option("--out", needle_out, "output directory")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  std::string verify_level = "fast";
  verify->add_option("--level", verify_level, "fast | full")
      ->check(CLI::IsMember({"fast", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // help requests exit 0; any real usage problem exits 1
    int code = app.exit(e);
    return code == 0 ? exit_ok : 1;
  }

  try {
    if (gen->parsed()) {
      netexp::DatasetBundle bundle = [&] {
        if (gen_model == "er") {
          return netexp::build_er_dataset(gen_n, gen_p_edge, gen_features,
                                          gen_p_val, gen_seed);
        }
        if (gen_model == "pa") {
          return netexp::build_pa_overlay_dataset(gen_n, gen_features,
                                                  gen_theta, gen_m, gen_seed);
        }
        if (gen_model == "org") {
          return netexp::build_org_hierarchy_dataset(
              gen_n, gen_experts, gen_features, gen_branching, gen_seed);
        }
        throw std::invalid_argument("unknown model: " + gen_model);
      }();
      netexp::save_bundle(bundle, gen_out);
      std::cout << "wrote " << gen_out << ".{edges,features,meta,labels} ("
                << bundle.graph.node_count() << " nodes, "
                << bundle.graph.edge_count() << " edges)\n";
      return exit_ok;
    }

    if (run->parsed()) {
      auto config = load_config(run_config, run_seeds, run_jobs);
      auto points = netexp::run_utility_curve(config, std::filesystem::path(run_out));
      std::cout << "wrote " << run_out << "/curve.csv (" << points.size()
                << " points), runs.csv, traces.txt\n";
      return exit_ok;
    }

    if (sweep_eps->parsed()) {
      auto config = load_config(eps_config, eps_seeds, eps_jobs);
      auto points = netexp::run_epsilon_sweep(config, eps_values,
                                              std::filesystem::path(eps_out));
      std::cout << "wrote " << eps_out << "/epsilon.csv (" << points.size()
                << " rows)\n";
      return exit_ok;
    }

    if (sweep_pval->parsed()) {
      auto config = load_config(pval_config, pval_seeds, pval_jobs);
      auto points = netexp::run_pval_sweep(config, pval_values, pval_budget,
                                           std::filesystem::path(pval_out));
      std::cout << "wrote " << pval_out << "/pval.csv (" << points.size()
                << " rows)\n";
      return exit_ok;
    }

    if (needle->parsed()) {
      auto points = netexp::run_needle_scenario(
          needle_ns, needle_seeds, std::filesystem::path(needle_out));
      std::cout << "wrote " << needle_out << "/needle.csv\n";
      for (const auto& p : points) {
        std::cout << p.topology << " n=" << p.n
                  << " median |S|=" << p.median_selected << "\n";
      }
      return exit_ok;
    }

    if (verify->parsed()) {
      netexp::VerifyLevel level = verify_level == "full"
                                      ? netexp::VerifyLevel::full
                                      : netexp::VerifyLevel::fast;
      bool ok = netexp::run_verify(level, std::cout);
      return ok ? exit_ok : exit_invariant;
    }
  } catch (const netexp::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_validation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_validation;
  }
  return exit_ok;
}
