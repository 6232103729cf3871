#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "misfill/graph.hpp"

namespace misfill {

enum class ColorKind : std::uint8_t { On, Dir, Conf, ConfC, Conf2, Conf3, Wait, Mov, Off };

/// A robot's light. `arg` carries the port for DIR and the door rank for WAIT.
struct Color {
  ColorKind kind = ColorKind::On;
  std::uint32_t arg = 0;

  static constexpr Color on() { return {ColorKind::On, 0}; }
  static constexpr Color dir(Port p) { return {ColorKind::Dir, p}; }
  static constexpr Color conf() { return {ColorKind::Conf, 0}; }
  static constexpr Color confc() { return {ColorKind::ConfC, 0}; }
  static constexpr Color conf2() { return {ColorKind::Conf2, 0}; }
  static constexpr Color conf3() { return {ColorKind::Conf3, 0}; }
  static constexpr Color wait(std::uint32_t rank = 1) { return {ColorKind::Wait, rank}; }
  static constexpr Color mov() { return {ColorKind::Mov, 0}; }
  static constexpr Color off() { return {ColorKind::Off, 0}; }

  bool is(ColorKind k) const noexcept { return kind == k; }
  bool operator==(const Color&) const = default;
};

/// `ON`, `DIR:<p>`, `CONF`, `CONFC`, `CONF2`, `CONF3`, `WAIT:<rank>`, `MOV`, `OFF`.
std::string to_string(Color c);
std::optional<Color> parse_color(const std::string& s);

/// Every color a robot may display for max degree `delta` and `k` doors.
/// A single door uses one WAIT color, so the count is delta+8 for k=1 and
/// delta+k+7 otherwise.
std::vector<Color> palette(std::size_t delta, std::size_t k);

/// WAIT(j) dominates WAIT(i) iff j < i. Any other pair is incomparable.
bool dominates(Color a, Color b);

enum class RobotState : std::uint8_t { None, Leader, Follower, Finished };

std::string to_string(RobotState s);
std::optional<RobotState> parse_state(const std::string& s);

/// Two consecutive ports: `one` at the current vertex, `two` at the vertex reached.
struct TwoHopPath {
  Port one = 0;
  Port two = 0;
  bool operator==(const TwoHopPath&) const = default;
  auto operator<=>(const TwoHopPath&) const = default;
};

std::string to_string(const TwoHopPath& p);

/// Directions received from the predecessor; `one` arrives before `two`.
struct PartialPath {
  std::optional<Port> one;
  std::optional<Port> two;
  bool empty() const noexcept { return !one && !two; }
  bool complete() const noexcept { return one && two; }
  TwoHopPath path() const { return {*one, *two}; }
  bool operator==(const PartialPath&) const = default;
};

/// The last two-hop move: forward ports taken, and the ports leading back
/// (arrival port at the destination, then arrival port at the intermediate).
struct Entry {
  TwoHopPath forward;
  TwoHopPath back;
  bool operator==(const Entry&) const = default;
};

/// Persistent robot memory. Robots are anonymous: relations to other robots
/// are kept as relative port paths, never identities.
struct RobotVars {
  RobotState state = RobotState::None;
  Color color = Color::on();
  std::optional<TwoHopPath> target;
  PartialPath next_target;
  std::optional<Entry> entry;
  bool has_successor = false;
  std::uint32_t door_rank = 1;
  /// Path to the predecessor's vertex while a follower.
  std::optional<TwoHopPath> predecessor;
  /// Set on the very first robot a door produces.
  bool first_at_door = false;

  bool operator==(const RobotVars&) const = default;
};

/// Fresh robot placed on a door.
RobotVars spawn_vars(std::uint32_t door_rank, bool first_at_door);

/// Where the successor sits relative to this robot, if it has one.
std::optional<TwoHopPath> successor_position(const RobotVars& vars);

}  // namespace misfill
