#pragma once
// Three-valued logic levels, discrete simulation time, waveforms and pulse
// measurement. Everything here is a value type plus pure functions.

#include <cstdint>
#include <string>
#include <vector>

namespace aswb {

// Kleene strong three-valued logic. L0 dominates AND, L1 dominates OR,
// so an unknown can still be forced by a known controlling input.
enum class LogicLevel : std::uint8_t { L0 = 0, L1 = 1, LX = 2 };

LogicLevel logic_not(LogicLevel a);
LogicLevel logic_and(LogicLevel a, LogicLevel b);
LogicLevel logic_or(LogicLevel a, LogicLevel b);

char level_char(LogicLevel a);        // '0', '1', 'x'
LogicLevel level_from_char(char c);   // throws std::invalid_argument otherwise

// Simulation time is a non-negative tick count. The physical duration of a
// tick (the timescale) lives in the simulator configuration.
using Tick = std::uint64_t;

struct Change {
  Tick tick = 0;
  LogicLevel level = LogicLevel::LX;
  bool operator==(const Change&) const = default;
};

// Piecewise-constant signal history for one net. Change ticks are strictly
// increasing and every change actually changes the level; a change takes
// effect at its own tick.
struct Waveform {
  std::string net;
  LogicLevel initial = LogicLevel::LX;
  std::vector<Change> changes;

  bool operator==(const Waveform&) const = default;
};

// Throws std::invalid_argument when the waveform breaks the invariants
// above (non-increasing ticks or a change to the same level).
void check_well_formed(const Waveform& w);

LogicLevel value_at(const Waveform& w, Tick t);

struct Edge {
  Tick tick = 0;
  LogicLevel from = LogicLevel::LX;
  LogicLevel to = LogicLevel::LX;
  bool operator==(const Edge&) const = default;
};

std::vector<Edge> edges(const Waveform& w);

// A maximal interval [start, end) at the requested polarity. An interval
// still at that polarity when the horizon is reached is reported open with
// end == horizon.
struct Pulse {
  Tick start = 0;
  Tick end = 0;
  LogicLevel polarity = LogicLevel::L1;
  bool open = false;

  Tick width() const { return end - start; }
  bool operator==(const Pulse&) const = default;
};

// Pulses of the given polarity, ordered by start tick. An interval only
// counts as a pulse when a change starts it, so a net resting at the
// polarity from tick 0 is not itself a pulse. Polarity must be L0 or L1.
std::vector<Pulse> measure_pulses(const Waveform& w, LogicLevel polarity, Tick horizon);

}  // namespace aswb
