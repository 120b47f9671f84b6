#include "aswb/logic.hpp"

#include <algorithm>
#include <stdexcept>

namespace aswb {

LogicLevel logic_not(LogicLevel a) {
  switch (a) {
    case LogicLevel::L0: return LogicLevel::L1;
    case LogicLevel::L1: return LogicLevel::L0;
    default: return LogicLevel::LX;
  }
}

LogicLevel logic_and(LogicLevel a, LogicLevel b) {
  if (a == LogicLevel::L0 || b == LogicLevel::L0) return LogicLevel::L0;
  if (a == LogicLevel::L1 && b == LogicLevel::L1) return LogicLevel::L1;
  return LogicLevel::LX;
}

LogicLevel logic_or(LogicLevel a, LogicLevel b) {
  if (a == LogicLevel::L1 || b == LogicLevel::L1) return LogicLevel::L1;
  if (a == LogicLevel::L0 && b == LogicLevel::L0) return LogicLevel::L0;
  return LogicLevel::LX;
}

char level_char(LogicLevel a) {
  switch (a) {
    case LogicLevel::L0: return '0';
    case LogicLevel::L1: return '1';
    default: return 'x';
  }
}

LogicLevel level_from_char(char c) {
  switch (c) {
    case '0': return LogicLevel::L0;
    case '1': return LogicLevel::L1;
    case 'x':
    case 'X': return LogicLevel::LX;
    default: throw std::invalid_argument(std::string("not a logic level: '") + c + "'");
  }
}

void check_well_formed(const Waveform& w) {
  LogicLevel prev = w.initial;
  Tick prev_tick = 0;
  bool first = true;
  for (const Change& c : w.changes) {
    if (!first && c.tick <= prev_tick)
      throw std::invalid_argument("waveform " + w.net + ": change ticks not strictly increasing");
    if (c.level == prev)
      throw std::invalid_argument("waveform " + w.net + ": change to identical level");
    prev = c.level;
    prev_tick = c.tick;
    first = false;
  }
}

LogicLevel value_at(const Waveform& w, Tick t) {
  // Last change with tick <= t wins; a change takes effect at its own tick.
  auto it = std::upper_bound(w.changes.begin(), w.changes.end(), t,
                             [](Tick v, const Change& c) { return v < c.tick; });
  if (it == w.changes.begin()) return w.initial;
  return std::prev(it)->level;
}

std::vector<Edge> edges(const Waveform& w) {
  check_well_formed(w);
  std::vector<Edge> out;
  out.reserve(w.changes.size());
  LogicLevel prev = w.initial;
  for (const Change& c : w.changes) {
    out.push_back({c.tick, prev, c.level});
    prev = c.level;
  }
  return out;
}

std::vector<Pulse> measure_pulses(const Waveform& w, LogicLevel polarity, Tick horizon) {
  if (polarity == LogicLevel::LX)
    throw std::invalid_argument("pulse polarity must be L0 or L1");
  check_well_formed(w);

  std::vector<Pulse> out;
  bool active = false;
  Tick start = 0;
  for (const Change& c : w.changes) {
    if (c.tick >= horizon) break;
    if (c.level == polarity && !active) {
      active = true;
      start = c.tick;
    } else if (c.level != polarity && active) {
      out.push_back({start, c.tick, polarity, false});
      active = false;
    }
  }
  if (active) out.push_back({start, horizon, polarity, true});
  return out;
}

}  // namespace aswb
