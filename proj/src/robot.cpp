#include "misfill/robot.hpp"

#include <charconv>

namespace misfill {

std::string to_string(Color c) {
  switch (c.kind) {
    case ColorKind::On: return "ON";
    case ColorKind::Dir: return "DIR:" + std::to_string(c.arg);
    case ColorKind::Conf: return "CONF";
    case ColorKind::ConfC: return "CONFC";
    case ColorKind::Conf2: return "CONF2";
    case ColorKind::Conf3: return "CONF3";
    case ColorKind::Wait: return "WAIT:" + std::to_string(c.arg);
    case ColorKind::Mov: return "MOV";
    case ColorKind::Off: return "OFF";
  }
  return "?";
}

namespace {

std::optional<std::uint32_t> parse_positive(std::string_view s) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || v == 0) return std::nullopt;
  return v;
}

}  // namespace

std::optional<Color> parse_color(const std::string& s) {
  if (s == "ON") return Color::on();
  if (s == "CONF") return Color::conf();
  if (s == "CONFC") return Color::confc();
  if (s == "CONF2") return Color::conf2();
  if (s == "CONF3") return Color::conf3();
  if (s == "MOV") return Color::mov();
  if (s == "OFF") return Color::off();
  std::string_view sv(s);
  if (sv.starts_with("DIR:")) {
    if (auto p = parse_positive(sv.substr(4))) return Color::dir(*p);
  } else if (sv.starts_with("WAIT:")) {
    if (auto r = parse_positive(sv.substr(5))) return Color::wait(*r);
  }
  return std::nullopt;
}

std::vector<Color> palette(std::size_t delta, std::size_t k) {
  std::vector<Color> out{Color::on(),    Color::conf(),  Color::confc(), Color::conf2(),
                         Color::conf3(), Color::mov(),   Color::off()};
  for (std::size_t p = 1; p <= delta; ++p) out.push_back(Color::dir(static_cast<Port>(p)));
  for (std::size_t r = 1; r <= std::max<std::size_t>(k, 1); ++r)
    out.push_back(Color::wait(static_cast<std::uint32_t>(r)));
  return out;
}

bool dominates(Color a, Color b) {
  return a.is(ColorKind::Wait) && b.is(ColorKind::Wait) && a.arg < b.arg;
}

std::string to_string(RobotState s) {
  switch (s) {
    case RobotState::None: return "None";
    case RobotState::Leader: return "Leader";
    case RobotState::Follower: return "Follower";
    case RobotState::Finished: return "Finished";
  }
  return "?";
}

std::optional<RobotState> parse_state(const std::string& s) {
  if (s == "None") return RobotState::None;
  if (s == "Leader") return RobotState::Leader;
  if (s == "Follower") return RobotState::Follower;
  if (s == "Finished") return RobotState::Finished;
  return std::nullopt;
}

std::string to_string(const TwoHopPath& p) {
  return std::to_string(p.one) + "," + std::to_string(p.two);
}

RobotVars spawn_vars(std::uint32_t door_rank, bool first_at_door) {
  RobotVars v;
  v.door_rank = door_rank;
  v.first_at_door = first_at_door;
  return v;
}

std::optional<TwoHopPath> successor_position(const RobotVars& vars) {
  if (!vars.entry || !vars.has_successor) return std::nullopt;
  return vars.entry->back;
}

}  // namespace misfill
