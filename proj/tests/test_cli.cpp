#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "misfill/cli.hpp"
#include "oracles.hpp"

using namespace misfill;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("misfill-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_graph(const fs::path& dir, const std::string& text) {
  auto p = dir / "g.txt";
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const char* kPath = "graph 3\nedge 0 1 1 1\nedge 1 2 2 1\ndoor 1 1\n";

}  // namespace

TEST_CASE("settings from the graph file") {
  RunSpec spec;
  apply_settings(spec, {{"protocol", "multind"}, {"sched", "async"}, {"seed", "9"},
                        {"visibility", "6"}, {"max_delay", "3"}, {"ring_radius", "2"}});
  CHECK(spec.cfg.protocol == Protocol::Multind);
  CHECK(spec.policy.kind == SchedulerKind::ASync);
  CHECK(spec.seeds == std::vector<std::uint64_t>{9});
  CHECK(spec.cfg.visibility == 6);
  CHECK(spec.policy.max_delay == 3);
  CHECK(spec.cfg.multind.ring_radius == 2);
  CHECK_THROWS_AS(apply_settings(spec, {{"colour", "red"}}), ConfigError);
  CHECK_THROWS_AS(apply_settings(spec, {{"seed", "-1"}}), ConfigError);
  CHECK_THROWS_AS(apply_settings(spec, {{"sched", "sometimes"}}), ConfigError);
}

TEST_CASE("visibility below the protocol default needs the unsafe flag") {
  RunSpec spec;
  spec.cfg.visibility = 2;
  CHECK_THROWS_AS(validate(spec, 5), ConfigError);
  spec.unsafe = true;
  CHECK_NOTHROW(validate(spec, 5));
  spec.cfg.protocol = Protocol::Multind;
  spec.unsafe = false;
  spec.cfg.visibility = 4;
  CHECK_THROWS_AS(validate(spec, 5), ConfigError);
  spec.cfg.visibility = 5;
  CHECK_NOTHROW(validate(spec, 5));
}

TEST_CASE("run writes trace, report, frames and summary") {
  const auto dir = scratch("run");
  RunSpec spec;
  spec.graph = write_graph(dir, kPath);
  spec.out = dir / "out";
  spec.frames = true;
  spec.policy.kind = SchedulerKind::SSync;
  spec.policy.activation = ActivationKind::SeededRandom;
  std::ostringstream log;
  CHECK(cmd_run(spec, log) == kExitOk);
  CHECK(fs::exists(spec.out / "trace.jsonl"));
  CHECK(fs::exists(spec.out / "report.jsonl"));
  CHECK(fs::exists(spec.out / "summary.tsv"));
  CHECK(fs::exists(spec.out / "frames" / "epoch-0.dot"));

  std::ostringstream replay_log;
  CHECK(cmd_replay(spec.out / "trace.jsonl", spec.graph, replay_log) == kExitOk);

  spec.seeds = {1, 2};
  spec.out = dir / "multi";
  CHECK(cmd_run(spec, log) == kExitOk);
  CHECK(fs::exists(spec.out / "seed-1" / "trace.jsonl"));
  CHECK(fs::exists(spec.out / "seed-2" / "trace.jsonl"));
  const auto summary = slurp(spec.out / "summary.tsv");
  CHECK(std::count(summary.begin(), summary.end(), '\n') == 3);
}

TEST_CASE("configuration errors exit with 2") {
  const auto dir = scratch("errors");
  std::ostringstream log;
  RunSpec spec;
  spec.out = dir / "out";
  spec.graph = dir / "missing.txt";
  CHECK(cmd_run(spec, log) == kExitConfigError);
  spec.graph = write_graph(dir, "graph 3\nedge 0 1 1 1\n");  // disconnected
  CHECK(cmd_run(spec, log) == kExitConfigError);
  spec.graph = write_graph(dir, "graph 2\nedge 0 1 1 1\ndoor 1 0\ndoor 2 1\n");
  CHECK(cmd_run(spec, log) == kExitConfigError);  // two doors for IND
  spec.graph = write_graph(dir, kPath);
  spec.cfg.visibility = 1;
  CHECK(cmd_run(spec, log) == kExitConfigError);

  CHECK(cmd_replay(dir / "nope.jsonl", spec.graph, log) == kExitConfigError);
  SweepSpec sw;
  sw.out = dir / "sweep";
  sw.n_min = 6;
  sw.n_max = 5;
  CHECK(cmd_sweep(sw, log) == kExitConfigError);
}

TEST_CASE("a tampered trace replays as a divergence") {
  const auto dir = scratch("tamper");
  RunSpec spec;
  spec.graph = write_graph(dir, kPath);
  spec.out = dir / "out";
  std::ostringstream log;
  REQUIRE(cmd_run(spec, log) == kExitOk);
  auto text = slurp(spec.out / "trace.jsonl");
  const auto pos = text.find("\"Look\"");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 6, "\"Hop\"");
  std::ofstream(dir / "bad.jsonl") << text;
  CHECK(cmd_replay(dir / "bad.jsonl", spec.graph, log) == kExitCheckFailed);
}

TEST_CASE("sweep rows are ordered and anchors are deterministic") {
  SweepSpec sw;
  sw.n_min = 3;
  sw.n_max = 6;
  sw.seeds = 4;
  sw.max_deg = 3;
  sw.workers = 3;
  const auto rows = sweep(sw);
  REQUIRE(rows.size() == 16);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].n == 3 + i / 4);
    CHECK(rows[i].seed == i % 4);
    CHECK(rows[i].pass);
    CHECK(rows[i].oracle == true);
    CHECK(rows[i].epochs <= rows[i].bound);
  }
  for (std::size_t n = 1; n < 12; ++n)
    for (std::size_t k = 1; k <= n; ++k) {
      const auto a = sweep_anchors(n, k, 5);
      CHECK(a == sweep_anchors(n, k, 5));
      CHECK(std::set<VertexId>(a.begin(), a.end()).size() == k);
      CHECK(std::all_of(a.begin(), a.end(), [&](VertexId v) { return v < n; }));
    }
}
