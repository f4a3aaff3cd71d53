#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "probcsp/calibrate.hpp"
#include "probcsp/format.hpp"
#include "probcsp/generator.hpp"
#include "probcsp/network.hpp"
#include "probcsp/oracle.hpp"
#include "probcsp/probability.hpp"
#include "probcsp/propagation.hpp"
#include "probcsp/rational.hpp"

namespace {

using namespace probcsp;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw document_error(path, "cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw document_error(path, "cannot open for writing");
  out << content;
}

struct loaded_instance {
  constraint_network net;
  support_counts counts;
  removal_profile profile;
};

loaded_instance load_instance(const std::string& network_path, const std::string& events_path) {
  constraint_network net = parse_network(read_file(network_path));
  support_counts counts = support_counts::compute(net);
  removal_profile profile = parse_profile(net, read_file(events_path));
  return {std::move(net), std::move(counts), std::move(profile)};
}

int run_analyze(const std::string& network_path, const std::string& events_path,
                const std::string& out_path) {
  const loaded_instance in = load_instance(network_path, events_path);
  const probability_report report = make_report(in.net, in.counts, in.profile);
  write_output(out_path, report_to_json(in.net, report));
  return 0;
}

int run_propagate(const std::string& network_path, const std::string& events_path,
                  const std::string& trace_path, const std::string& out_path) {
  const loaded_instance in = load_instance(network_path, events_path);
  std::vector<trace_event> trace;
  std::vector<trace_event>* trace_ptr = trace_path.empty() ? nullptr : &trace;
  const propagation_state state = prob_ac(in.net, in.counts, in.profile, trace_ptr);
  if (trace_ptr) write_output(trace_path, trace_to_json_lines(in.net, trace));
  write_output(out_path, state_to_json(in.net, in.counts, state));
  return 0;
}

int run_oracle(const std::string& network_path, const std::string& events_path,
               long long budget_cap, long long mc_samples, std::uint64_t seed) {
  const loaded_instance in = load_instance(network_path, events_path);
  enumeration_budget budget;
  budget.max_total_subsets = budget_cap;
  std::ostringstream out;
  out << "{\n  \"domains\": [\n";
  bigrat total(0);
  for (int i = 0; i < in.net.var_count(); ++i) {
    const bigrat e = oracle_expected_domain(in.net, in.profile, i, budget);
    total += e;
    out << "    {\"var\": \"" << json_escape(in.net.var_name(i)) << "\", \"exact\": \""
        << rat_string(e) << "\", \"e\": " << fmt_g9(to_double(e)) << "}";
    if (i + 1 < in.net.var_count()) out << ",";
    out << "\n";
  }
  const bigrat e_net = oracle_expected_network(in.net, in.profile, budget);
  out << "  ],\n  \"network\": {\"exact\": \"" << rat_string(e_net) << "\", \"e\": "
      << fmt_g9(to_double(e_net)) << "}";
  if (total != e_net) throw std::logic_error("domain sum disagrees with network enumeration");
  if (mc_samples > 0) {
    const monte_carlo_result mc = monte_carlo_expected_network(in.net, in.profile, mc_samples, seed);
    out << ",\n  \"mc\": {\"estimate\": " << fmt_g9(mc.estimate) << ", \"stderr\": "
        << fmt_g9(mc.stderr_) << ", \"samples\": " << mc_samples << ", \"seed\": " << seed << "}";
  }
  out << "\n}\n";
  write_output("", out.str());
  return 0;
}

int run_gen(const generator_config& config, const std::string& out_path) {
  write_output(out_path, network_to_json(generate(config)));
  return 0;
}

int run_calibrate_cmd(const calibration_config& config) {
  write_output("", calibration_to_csv(run_calibrate(config)));
  return 0;
}

int run_ac3(const std::string& network_path) {
  const constraint_network net = parse_network(read_file(network_path));
  const ac3_result fix = ac3(net);
  std::ostringstream out;
  out << "{\n  \"empty_domain\": " << (fix.empty_domain ? "true" : "false")
      << ",\n  \"domains\": {";
  for (int v = 0; v < net.var_count(); ++v) {
    if (v) out << ", ";
    out << "\"" << json_escape(net.var_name(v)) << "\": [";
    for (std::size_t t = 0; t < fix.domains[v].size(); ++t) {
      if (t) out << ", ";
      out << fix.domains[v][t];
    }
    out << "]";
  }
  out << "}\n}\n";
  write_output("", out.str());
  return fix.empty_domain ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arc-inconsistency probabilities for binary constraint networks"};
  app.require_subcommand(1);

  std::string network_path;
  std::string events_path;
  std::string out_path;
  std::string trace_path;

  auto* analyze = app.add_subcommand("analyze", "per-value and per-domain probability report");
  analyze->add_option("--network", network_path, "network document")->required();
  analyze->add_option("--events", events_path, "removal hypothesis document")->required();
  analyze->add_option("--out", out_path, "output path (default stdout)");

  auto* propagate = app.add_subcommand("propagate", "run the hypothesis propagation to fixpoint");
  propagate->add_option("--network", network_path, "network document")->required();
  propagate->add_option("--events", events_path, "removal hypothesis document")->required();
  propagate->add_option("--trace", trace_path, "write a JSON-lines event log here");
  propagate->add_option("--out", out_path, "output path (default stdout)");

  long long budget_cap = enumeration_budget{}.max_total_subsets;
  long long mc_samples = 0;
  std::uint64_t seed = 0;
  auto* oracle = app.add_subcommand("oracle", "exhaustive enumeration cross-check");
  oracle->add_option("--network", network_path, "network document")->required();
  oracle->add_option("--events", events_path, "removal hypothesis document")->required();
  oracle->add_option("--budget", budget_cap, "max joint subsets to enumerate");
  oracle->add_option("--mc-samples", mc_samples, "also run a Monte Carlo estimate");
  oracle->add_option("--seed", seed, "Monte Carlo seed");

  generator_config gen_config;
  auto* gen = app.add_subcommand("gen", "random network generator");
  gen->add_option("--vars", gen_config.vars, "variable count")->required();
  gen->add_option("--dom", gen_config.dom, "uniform domain size")->required();
  gen->add_option("--density", gen_config.density, "fraction of pairs constrained")->required();
  gen->add_option("--tightness", gen_config.tightness, "fraction of tuples forbidden")->required();
  gen->add_option("--seed", gen_config.seed, "generator seed")->required();
  gen->add_option("--out", out_path, "output path (default stdout)");

  calibration_config cal_config;
  auto* calibrate = app.add_subcommand("calibrate", "prediction vs AC-3 reality, CSV per trial");
  calibrate->add_option("--vars", cal_config.gen.vars, "variable count")->required();
  calibrate->add_option("--dom", cal_config.gen.dom, "uniform domain size")->required();
  calibrate->add_option("--density", cal_config.gen.density, "fraction of pairs constrained")
      ->required();
  calibrate->add_option("--tightness", cal_config.gen.tightness, "fraction of tuples forbidden")
      ->required();
  calibrate->add_option("--k", cal_config.k, "removal count per domain")->required();
  calibrate->add_option("--trials", cal_config.trials, "number of trials")->required();
  calibrate->add_option("--seed", cal_config.gen.seed, "base seed")->required();
  calibrate->add_flag("--exhaustive", cal_config.exhaustive,
                      "average over every removal outcome instead of sampling one");

  auto* ac3_cmd = app.add_subcommand("ac3", "classical arc-consistency fixpoint");
  ac3_cmd->add_option("--network", network_path, "network document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (analyze->parsed()) return run_analyze(network_path, events_path, out_path);
    if (propagate->parsed()) return run_propagate(network_path, events_path, trace_path, out_path);
    if (oracle->parsed()) return run_oracle(network_path, events_path, budget_cap, mc_samples, seed);
    if (gen->parsed()) return run_gen(gen_config, out_path);
    if (calibrate->parsed()) return run_calibrate_cmd(cal_config);
    if (ac3_cmd->parsed()) return run_ac3(network_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
