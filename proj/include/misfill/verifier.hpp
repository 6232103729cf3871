#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "misfill/engine.hpp"
#include "misfill/graph.hpp"

namespace misfill {

bool is_independent(const PortGraph& g, const std::vector<VertexId>& s);
bool is_maximal_independent(const PortGraph& g, const std::vector<VertexId>& s);

class GraphTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

constexpr std::size_t kMaxEnumerate = 20;

/// Every maximal independent set, each sorted, in lexicographic order.
/// Throws GraphTooLarge above kMaxEnumerate vertices.
std::vector<std::vector<VertexId>> enumerate_mis(const PortGraph& g);

/// Robots of one door that have not finished, from the door end to the
/// leader, with the vertices between consecutive members where known.
struct Chain {
  std::size_t door_rank = 0;
  std::vector<std::uint32_t> robots;
  std::vector<VertexId> path;                  // door end first
  std::vector<std::size_t> occupied_indices;  // indices into path holding robots
  bool packed = false;
};

/// Chains as they stand after every event with tick <= `tick`.
std::vector<Chain> reconstruct_chains(const Trace& trace, const DoorGraph& dg, std::uint64_t tick);

enum class CheckStatus { Pass, Fail, Warn, NotEvaluated };
std::string to_string(CheckStatus s);

struct Violation {
  std::uint64_t tick = 0;
  std::string description;
};

struct CheckReport {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::optional<Violation> first_violation;
  std::string detail;  // measured quantity, e.g. "epochs=31 bound=52"

  bool pass() const noexcept { return status != CheckStatus::Fail; }
};

std::vector<CheckReport> check_trace(const Trace& trace, const DoorGraph& dg, Protocol protocol);

/// Same line-per-record JSON layout as traces.
std::string to_jsonl(const std::vector<CheckReport>& reports);

/// Epoch budget for a single-door run that places m robots.
std::size_t ind_epoch_bound(std::size_t m);

bool all_pass(const std::vector<CheckReport>& reports);

}  // namespace misfill
