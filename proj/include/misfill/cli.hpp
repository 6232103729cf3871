#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "misfill/engine.hpp"

namespace misfill {

/// Exit statuses shared by every command.
enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitConfigError = 2 };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunSpec {
  std::filesystem::path graph;
  SimulationConfig cfg;
  SchedulerPolicy policy;
  std::vector<std::uint64_t> seeds{0};
  bool unsafe = false;  // allow visibility below the protocol default
  bool frames = false;
  std::filesystem::path out;
};

/// Applies `set key value` lines from a graph file. Keys: protocol, sched,
/// activation, seed, visibility, max_ticks, max_delay, fairness_bound,
/// ring_radius. Unknown keys and bad values raise ConfigError.
void apply_settings(RunSpec& spec, const std::vector<std::pair<std::string, std::string>>& settings);

/// Raises ConfigError when the run cannot go ahead as configured.
void validate(const RunSpec& spec, std::size_t graph_size);

int cmd_run(const RunSpec& spec, std::ostream& log);

struct SweepSpec {
  std::size_t n_min = 3;
  std::size_t n_max = 12;
  std::size_t max_deg = 4;
  std::size_t doors = 1;
  std::size_t seeds = 10;
  std::optional<Protocol> protocol;  // defaults to IND for one door, MULTIND otherwise
  SchedulerPolicy policy;
  std::filesystem::path out;
  unsigned workers = 0;  // 0 picks the hardware concurrency
};

struct SweepRow {
  std::size_t n = 0;  // vertices of the original graph
  std::uint64_t seed = 0;
  std::size_t m = 0;
  std::size_t epochs = 0;
  std::size_t bound = 0;
  bool terminated = false;
  std::optional<bool> oracle;  // final set is one of enumerate_mis; absent above the limit
  bool pass = false;
  std::string failed_checks;
};

/// Deterministic distinct anchors for a sweep instance.
std::vector<VertexId> sweep_anchors(std::size_t n, std::size_t k, std::uint64_t seed);

std::vector<SweepRow> sweep(const SweepSpec& spec);
int cmd_sweep(const SweepSpec& spec, std::ostream& log);

int cmd_replay(const std::filesystem::path& trace, const std::filesystem::path& graph,
               std::ostream& log);

}  // namespace misfill
