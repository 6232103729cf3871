#include <iostream>

#include <CLI11.hpp>

#include "misfill/cli.hpp"

using namespace misfill;

namespace {

template <typename T, typename Parse>
CLI::Validator enum_check(Parse parse, const std::string& names) {
  return CLI::Validator(
      [parse](std::string& s) { return parse(s) ? std::string{} : "expected one of the listed values"; },
      names);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robots filling a graph with a maximal independent set"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "simulate one graph file");
  std::string graph, protocol, sched, activation;
  std::vector<std::uint64_t> seeds;
  std::optional<std::uint32_t> visibility, max_delay, fairness;
  std::optional<std::uint64_t> max_ticks;
  bool unsafe = false, frames = false;
  std::string out = "out";
  run_cmd->add_option("--graph", graph, "graph file")->required();
  run_cmd->add_option("--protocol", protocol, "ind | multind")
      ->check(enum_check<Protocol>(parse_protocol, "ind|multind"));
  run_cmd->add_option("--sched", sched, "fsync | ssync | async")
      ->check(enum_check<SchedulerKind>(parse_scheduler, "fsync|ssync|async"));
  run_cmd->add_option("--activation", activation, "round-robin | random")
      ->check(enum_check<ActivationKind>(parse_activation, "round-robin|random"));
  run_cmd->add_option("--seed", seeds, "seed; repeat for several runs");
  run_cmd->add_option("--visibility", visibility, "visibility radius");
  run_cmd->add_option("--max-delay", max_delay, "largest ASYNC phase delay");
  run_cmd->add_option("--fairness", fairness, "SSYNC idle rounds before a forced activation");
  run_cmd->add_option("--max-ticks", max_ticks, "tick budget");
  run_cmd->add_flag("--unsafe", unsafe, "allow visibility below the protocol default");
  run_cmd->add_flag("--frames", frames, "write one Graphviz frame per epoch");
  run_cmd->add_option("--out", out, "output directory");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "random graphs over a range of sizes");
  SweepSpec sw;
  std::string sweep_protocol, sweep_sched = "fsync", sweep_out = "sweep";
  sweep_cmd->add_option("--n-min", sw.n_min)->required();
  sweep_cmd->add_option("--n-max", sw.n_max)->required();
  sweep_cmd->add_option("--max-deg", sw.max_deg)->required();
  sweep_cmd->add_option("--doors", sw.doors)->default_val(1);
  sweep_cmd->add_option("--seeds", sw.seeds)->default_val(10);
  sweep_cmd->add_option("--protocol", sweep_protocol)
      ->check(enum_check<Protocol>(parse_protocol, "ind|multind"));
  sweep_cmd->add_option("--sched", sweep_sched)
      ->check(enum_check<SchedulerKind>(parse_scheduler, "fsync|ssync|async"));
  sweep_cmd->add_option("--workers", sw.workers, "0 uses every core");
  sweep_cmd->add_option("--out", sweep_out);

  // replay
  auto* replay_cmd = app.add_subcommand("replay", "re-run a trace and compare");
  std::string trace_file, replay_graph;
  replay_cmd->add_option("--trace", trace_file)->required();
  replay_cmd->add_option("--graph", replay_graph)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  if (*run_cmd) {
    RunSpec spec;
    spec.graph = graph;
    spec.out = out;
    spec.unsafe = unsafe;
    spec.frames = frames;
    spec.policy.activation = ActivationKind::SeededRandom;
    try {
      apply_settings(spec, load_graph_file(graph).settings);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitConfigError;
    }
    if (!protocol.empty()) spec.cfg.protocol = *parse_protocol(protocol);
    if (!sched.empty()) spec.policy.kind = *parse_scheduler(sched);
    if (!activation.empty()) spec.policy.activation = *parse_activation(activation);
    if (!seeds.empty()) spec.seeds = seeds;
    if (visibility) spec.cfg.visibility = *visibility;
    if (max_delay) spec.policy.max_delay = *max_delay;
    if (fairness) spec.policy.fairness_bound = *fairness;
    if (max_ticks) spec.cfg.max_ticks = *max_ticks;
    return cmd_run(spec, std::cerr);
  }
  if (*sweep_cmd) {
    if (!sweep_protocol.empty()) sw.protocol = parse_protocol(sweep_protocol);
    sw.policy.kind = *parse_scheduler(sweep_sched);
    sw.policy.activation = ActivationKind::SeededRandom;
    sw.out = sweep_out;
    return cmd_sweep(sw, std::cerr);
  }
  return cmd_replay(trace_file, replay_graph, std::cerr);
}
