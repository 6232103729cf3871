#include "misfill/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <future>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "misfill/verifier.hpp"

namespace misfill {
namespace fs = std::filesystem;

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end) throw ConfigError("bad value for " + key + ": " + value);
  return out;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << text;
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string failed_names(const std::vector<CheckReport>& reports) {
  std::string out;
  for (const auto& r : reports) {
    if (r.pass()) continue;
    if (!out.empty()) out += ',';
    out += r.name;
  }
  return out.empty() ? "-" : out;
}

std::optional<bool> oracle_match(const DoorGraph& dg, const Outcome& o) {
  if (!o.terminated || dg.graph.size() > kMaxEnumerate) return std::nullopt;
  auto got = o.final_occupied;
  std::sort(got.begin(), got.end());
  const auto all = enumerate_mis(dg.graph);
  return std::binary_search(all.begin(), all.end(), got);
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

void apply_settings(RunSpec& spec,
                    const std::vector<std::pair<std::string, std::string>>& settings) {
  for (const auto& [key, value] : settings) {
    if (key == "protocol") {
      auto p = parse_protocol(value);
      if (!p) throw ConfigError("unknown protocol: " + value);
      spec.cfg.protocol = *p;
    } else if (key == "sched") {
      auto k = parse_scheduler(value);
      if (!k) throw ConfigError("unknown scheduler: " + value);
      spec.policy.kind = *k;
    } else if (key == "activation") {
      auto a = parse_activation(value);
      if (!a) throw ConfigError("unknown activation: " + value);
      spec.policy.activation = *a;
    } else if (key == "seed") {
      spec.seeds = {parse_number<std::uint64_t>(key, value)};
    } else if (key == "visibility") {
      spec.cfg.visibility = parse_number<std::uint32_t>(key, value);
    } else if (key == "max_ticks") {
      spec.cfg.max_ticks = parse_number<std::uint64_t>(key, value);
    } else if (key == "max_delay") {
      spec.policy.max_delay = parse_number<std::uint32_t>(key, value);
    } else if (key == "fairness_bound") {
      spec.policy.fairness_bound = parse_number<std::uint32_t>(key, value);
    } else if (key == "ring_radius") {
      spec.cfg.multind.ring_radius = parse_number<std::uint32_t>(key, value);
    } else {
      throw ConfigError("unknown setting: " + key);
    }
  }
}

void validate(const RunSpec& spec, std::size_t graph_size) {
  SimulationConfig defaults;
  defaults.protocol = spec.cfg.protocol;
  const auto floor = defaults.effective_visibility();
  if (spec.cfg.visibility != 0 && spec.cfg.visibility < floor && !spec.unsafe)
    throw ConfigError("visibility " + std::to_string(spec.cfg.visibility) + " is below " +
                      std::to_string(floor) + " for " + to_string(spec.cfg.protocol) +
                      "; pass --unsafe to run it anyway");
  if (spec.policy.max_delay == 0) throw ConfigError("max_delay must be positive");
  if (spec.policy.fairness_bound == 0) throw ConfigError("fairness_bound must be positive");
  if (spec.policy.activation == ActivationKind::Scripted && spec.policy.rounds.empty() &&
      spec.policy.delays.empty())
    throw ConfigError("scripted activation needs a script");
  if (spec.seeds.empty()) throw ConfigError("no seeds given");
  if (graph_size == 0) throw ConfigError("empty graph");
}

int cmd_run(const RunSpec& spec, std::ostream& log) {
  DoorGraph dg;
  try {
    const auto file = load_graph_file(spec.graph.string());
    if (file.anchors.empty()) throw ConfigError("graph file declares no doors");
    if (spec.cfg.protocol == Protocol::Ind && file.anchors.size() != 1)
      throw ConfigError("ind needs exactly one door, got " + std::to_string(file.anchors.size()));
    dg = attach_doors(file.original, file.anchors);
    validate(spec, dg.graph.size());
    fs::create_directories(spec.out);
  } catch (const GraphError& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const fs::filesystem_error& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfigError;
  }

  std::ostringstream summary;
  summary << "seed\tn\tm\tepochs\tbound\tterminated\tcollisions\tpass\tfailed\n";
  bool ok = true;
  for (auto seed : spec.seeds) {
    auto policy = spec.policy;
    policy.seed = seed;
    const auto outcome = run(dg, policy, spec.cfg);
    const auto reports = check_trace(outcome.trace, dg, spec.cfg.protocol);
    const bool pass = all_pass(reports);
    ok = ok && pass;

    const fs::path dir = spec.seeds.size() == 1 ? spec.out : spec.out / ("seed-" + std::to_string(seed));
    fs::create_directories(dir);
    write_file(dir / "trace.jsonl", to_jsonl(outcome.trace));
    write_file(dir / "report.jsonl", to_jsonl(reports));
    if (spec.frames) {
      fs::create_directories(dir / "frames");
      const auto frames = render_frames(outcome.trace, dg);
      for (std::size_t i = 0; i < frames.size(); ++i)
        write_file(dir / "frames" / ("epoch-" + std::to_string(i) + ".dot"), frames[i]);
    }

    const auto m = outcome.mis_size;
    summary << seed << '\t' << dg.graph.size() << '\t' << m << '\t' << outcome.epochs << '\t'
            << (spec.cfg.protocol == Protocol::Ind ? std::to_string(ind_epoch_bound(m)) : "-")
            << '\t' << yes_no(outcome.terminated) << '\t' << outcome.collision_count << '\t'
            << yes_no(pass) << '\t' << failed_names(reports) << '\n';
    log << "seed " << seed << ": m=" << m << " epochs=" << outcome.epochs
        << " ticks=" << outcome.ticks << (pass ? " pass" : " FAIL " + failed_names(reports))
        << '\n';
  }
  write_file(spec.out / "summary.tsv", summary.str());
  return ok ? kExitOk : kExitCheckFailed;
}

std::vector<VertexId> sweep_anchors(std::size_t n, std::size_t k, std::uint64_t seed) {
  std::vector<VertexId> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<VertexId>(i);
  // Fisher-Yates with modulo reduction so the draw is the same on every stdlib.
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + n);
  for (std::size_t i = 0; i < k && i + 1 < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
    std::swap(order[i], order[j]);
  }
  order.resize(k);
  return order;
}

namespace {

SweepRow sweep_one(const SweepSpec& spec, std::size_t n, std::uint64_t seed) {
  const auto g = random_connected_graph(n, spec.max_deg, seed);
  const auto dg = attach_doors(g, sweep_anchors(n, spec.doors, seed));
  SimulationConfig cfg;
  cfg.protocol = spec.protocol.value_or(spec.doors == 1 ? Protocol::Ind : Protocol::Multind);
  auto policy = spec.policy;
  policy.seed = seed;
  const auto outcome = run(dg, policy, cfg);
  const auto reports = check_trace(outcome.trace, dg, cfg.protocol);

  SweepRow row;
  row.n = n;
  row.seed = seed;
  row.m = outcome.mis_size;
  row.epochs = outcome.epochs;
  row.bound = cfg.protocol == Protocol::Ind ? ind_epoch_bound(row.m) : 0;
  row.terminated = outcome.terminated;
  row.oracle = oracle_match(dg, outcome);
  row.pass = all_pass(reports) && row.oracle.value_or(true);
  row.failed_checks = failed_names(reports);
  if (row.oracle == false)
    row.failed_checks = row.failed_checks == "-" ? "oracle" : row.failed_checks + ",oracle";
  return row;
}

}  // namespace

std::vector<SweepRow> sweep(const SweepSpec& spec) {
  std::vector<std::pair<std::size_t, std::uint64_t>> jobs;
  for (auto n = spec.n_min; n <= spec.n_max; ++n)
    for (std::uint64_t s = 0; s < spec.seeds; ++s) jobs.emplace_back(n, s);

  std::vector<SweepRow> rows(jobs.size());
  unsigned workers = spec.workers ? spec.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, std::max<std::size_t>(1, jobs.size()));
  std::size_t next = 0;
  std::mutex mu;
  std::vector<std::future<void>> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.push_back(std::async(std::launch::async, [&] {
      for (;;) {
        std::size_t i;
        {
          std::lock_guard lock(mu);
          if (next == jobs.size()) return;
          i = next++;
        }
        rows[i] = sweep_one(spec, jobs[i].first, jobs[i].second);
      }
    }));
  }
  for (auto& f : pool) f.get();
  return rows;  // already in (n, seed) order
}

int cmd_sweep(const SweepSpec& spec, std::ostream& log) {
  if (spec.n_min == 0 || spec.n_min > spec.n_max) {
    log << "error: empty range n=" << spec.n_min << ".." << spec.n_max << '\n';
    return kExitConfigError;
  }
  if (spec.seeds == 0 || spec.doors == 0 || spec.doors > spec.n_min || spec.max_deg < 2) {
    log << "error: need seeds >= 1, 1 <= doors <= n-min and max-deg >= 2\n";
    return kExitConfigError;
  }
  if (spec.protocol == Protocol::Ind && spec.doors != 1) {
    log << "error: ind needs exactly one door\n";
    return kExitConfigError;
  }
  try {
    fs::create_directories(spec.out);
  } catch (const fs::filesystem_error& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfigError;
  }

  std::vector<SweepRow> rows;
  try {
    rows = sweep(spec);
  } catch (const GraphError& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfigError;
  }

  std::ostringstream tsv;
  tsv << "n\tseed\tm\tepochs\tbound\tepochs_per_m2\tterminated\toracle\tpass\tfailed\n";
  double worst = 0.0;
  std::size_t failures = 0;
  for (const auto& r : rows) {
    const double ratio = r.m ? double(r.epochs) / double(r.m * r.m) : 0.0;
    worst = std::max(worst, ratio);
    failures += r.pass ? 0 : 1;
    tsv << r.n << '\t' << r.seed << '\t' << r.m << '\t' << r.epochs << '\t'
        << (r.bound ? std::to_string(r.bound) : "-") << '\t' << std::fixed << std::setprecision(4)
        << ratio << '\t' << yes_no(r.terminated) << '\t'
        << (r.oracle ? yes_no(*r.oracle) : "-") << '\t' << yes_no(r.pass) << '\t'
        << r.failed_checks << '\n';
  }
  tsv << "# max epochs/m^2\t" << std::fixed << std::setprecision(4) << worst << '\n';
  write_file(spec.out / "summary.tsv", tsv.str());
  log << rows.size() << " runs, " << failures << " failed, max epochs/m^2 = " << std::fixed
      << std::setprecision(4) << worst << '\n';
  return failures ? kExitCheckFailed : kExitOk;
}

int cmd_replay(const fs::path& trace_path, const fs::path& graph_path, std::ostream& log) {
  Trace trace;
  DoorGraph dg;
  SimulationConfig cfg;
  try {
    trace = parse_jsonl(read_file(trace_path));
    const auto file = load_graph_file(graph_path.string());
    dg = attach_doors(file.original, file.anchors);
    RunSpec spec;
    apply_settings(spec, file.settings);
    cfg = spec.cfg;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  if (trace.header.vertices != dg.graph.size()) {
    log << "error: trace has " << trace.header.vertices << " vertices, graph has "
        << dg.graph.size() << '\n';
    return kExitConfigError;
  }
  cfg.protocol = trace.header.protocol;
  cfg.visibility = trace.header.visibility;
  cfg.max_ticks = trace.header.max_ticks;
  const auto res = replay(trace, dg, cfg);
  if (res.identical) {
    log << "identical (" << trace.events.size() << " events)\n";
    return kExitOk;
  }
  log << "diverged at event " << res.first_divergence.value_or(0) << ": " << res.description << '\n';
  return kExitCheckFailed;
}

}  // namespace misfill
