#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "aswb/logic.hpp"

using namespace aswb;

namespace {

const LogicLevel kLevels[] = {LogicLevel::L0, LogicLevel::L1, LogicLevel::LX};

Waveform wave(LogicLevel initial, std::vector<Change> changes) {
  Waveform w;
  w.net = "w";
  w.initial = initial;
  w.changes = std::move(changes);
  return w;
}

// Reference pulse measurement by scanning every tick up to the horizon.
std::vector<Pulse> scan_pulses(const Waveform& w, LogicLevel polarity, Tick horizon) {
  std::vector<Pulse> out;
  bool in_pulse = false;
  Pulse current;
  for (Tick t = 0; t < horizon; ++t) {
    bool at = value_at(w, t) == polarity;
    bool started_here = false;
    for (const auto& c : w.changes) started_here |= (c.tick == t && c.level == polarity);
    if (!in_pulse && at && started_here) {
      in_pulse = true;
      current = Pulse{t, 0, polarity, false};
    } else if (in_pulse && !at) {
      current.end = t;
      out.push_back(current);
      in_pulse = false;
    }
  }
  if (in_pulse) {
    current.end = horizon;
    current.open = true;
    out.push_back(current);
  }
  return out;
}

}  // namespace

TEST_CASE("negation truth table") {
  CHECK(logic_not(LogicLevel::L0) == LogicLevel::L1);
  CHECK(logic_not(LogicLevel::L1) == LogicLevel::L0);
  CHECK(logic_not(LogicLevel::LX) == LogicLevel::LX);
}

TEST_CASE("conjunction: a controlling 0 beats an unknown") {
  for (LogicLevel a : kLevels) {
    CHECK(logic_and(LogicLevel::L0, a) == LogicLevel::L0);
    CHECK(logic_and(a, LogicLevel::L0) == LogicLevel::L0);
    CHECK(logic_and(LogicLevel::L1, a) == a);
    CHECK(logic_and(a, LogicLevel::L1) == a);
  }
  CHECK(logic_and(LogicLevel::LX, LogicLevel::LX) == LogicLevel::LX);
}

TEST_CASE("disjunction: a controlling 1 beats an unknown") {
  for (LogicLevel a : kLevels) {
    CHECK(logic_or(LogicLevel::L1, a) == LogicLevel::L1);
    CHECK(logic_or(a, LogicLevel::L1) == LogicLevel::L1);
    CHECK(logic_or(LogicLevel::L0, a) == a);
    CHECK(logic_or(a, LogicLevel::L0) == a);
  }
  CHECK(logic_or(LogicLevel::LX, LogicLevel::LX) == LogicLevel::LX);
}

TEST_CASE("de morgan and involution hold over all level pairs") {
  for (LogicLevel a : kLevels) {
    CHECK(logic_not(logic_not(a)) == a);
    for (LogicLevel b : kLevels) {
      CHECK(logic_not(logic_and(a, b)) == logic_or(logic_not(a), logic_not(b)));
      CHECK(logic_not(logic_or(a, b)) == logic_and(logic_not(a), logic_not(b)));
      CHECK(logic_and(a, b) == logic_and(b, a));
      CHECK(logic_or(a, b) == logic_or(b, a));
    }
  }
}

TEST_CASE("level characters round-trip") {
  CHECK(level_char(LogicLevel::L0) == '0');
  CHECK(level_char(LogicLevel::L1) == '1');
  CHECK(level_char(LogicLevel::LX) == 'x');
  for (LogicLevel a : kLevels) CHECK(level_from_char(level_char(a)) == a);
  CHECK_THROWS_AS(level_from_char('2'), std::invalid_argument);
}

TEST_CASE("well-formedness rejects out-of-order and redundant changes") {
  CHECK_NOTHROW(check_well_formed(wave(LogicLevel::L0, {{5, LogicLevel::L1}, {9, LogicLevel::L0}})));
  CHECK_THROWS_AS(check_well_formed(wave(LogicLevel::L0, {{5, LogicLevel::L1}, {5, LogicLevel::L0}})),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_well_formed(wave(LogicLevel::L0, {{9, LogicLevel::L1}, {5, LogicLevel::L0}})),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_well_formed(wave(LogicLevel::L0, {{5, LogicLevel::L0}})),
                  std::invalid_argument);
}

TEST_CASE("value_at applies a change at its own tick") {
  Waveform w = wave(LogicLevel::L0, {{10, LogicLevel::L1}, {20, LogicLevel::L0}});
  CHECK(value_at(w, 0) == LogicLevel::L0);
  CHECK(value_at(w, 9) == LogicLevel::L0);
  CHECK(value_at(w, 10) == LogicLevel::L1);
  CHECK(value_at(w, 19) == LogicLevel::L1);
  CHECK(value_at(w, 20) == LogicLevel::L0);
  CHECK(value_at(w, 1000) == LogicLevel::L0);
}

TEST_CASE("edges report the level on both sides") {
  Waveform w = wave(LogicLevel::LX, {{3, LogicLevel::L1}, {7, LogicLevel::L0}});
  auto e = edges(w);
  REQUIRE(e.size() == 2);
  CHECK(e[0] == Edge{3, LogicLevel::LX, LogicLevel::L1});
  CHECK(e[1] == Edge{7, LogicLevel::L1, LogicLevel::L0});
}

TEST_CASE("a constant waveform has no pulses") {
  Waveform w = wave(LogicLevel::L0, {});
  CHECK(measure_pulses(w, LogicLevel::L1, 100).empty());
  Waveform high = wave(LogicLevel::L1, {});
  CHECK(measure_pulses(high, LogicLevel::L1, 100).empty());
}

TEST_CASE("one closed pulse") {
  Waveform w = wave(LogicLevel::L0, {{101, LogicLevel::L1}, {103, LogicLevel::L0}});
  auto p = measure_pulses(w, LogicLevel::L1, 300);
  REQUIRE(p.size() == 1);
  CHECK(p[0] == Pulse{101, 103, LogicLevel::L1, false});
  CHECK(p[0].width() == 2);
}

TEST_CASE("a rise without a fall stays open at the horizon") {
  Waveform w = wave(LogicLevel::L0, {{5, LogicLevel::L1}});
  auto p = measure_pulses(w, LogicLevel::L1, 20);
  REQUIRE(p.size() == 1);
  CHECK(p[0] == Pulse{5, 20, LogicLevel::L1, true});
}

TEST_CASE("low-polarity pulses of the same waveform") {
  Waveform w = wave(LogicLevel::L1, {{10, LogicLevel::L0}, {14, LogicLevel::L1}});
  auto p = measure_pulses(w, LogicLevel::L0, 30);
  REQUIRE(p.size() == 1);
  CHECK(p[0] == Pulse{10, 14, LogicLevel::L0, false});
  // The rise at 14 starts a high pulse even though the net also began high:
  // only the change-started interval counts.
  auto hi = measure_pulses(w, LogicLevel::L1, 30);
  REQUIRE(hi.size() == 1);
  CHECK(hi[0] == Pulse{14, 30, LogicLevel::L1, true});
}

TEST_CASE("changes at or past the horizon do not count") {
  Waveform w = wave(LogicLevel::L0, {{10, LogicLevel::L1}, {20, LogicLevel::L0}, {25, LogicLevel::L1}});
  auto p = measure_pulses(w, LogicLevel::L1, 20);
  REQUIRE(p.size() == 1);
  CHECK(p[0] == Pulse{10, 20, LogicLevel::L1, true});
  p = measure_pulses(w, LogicLevel::L1, 25);
  REQUIRE(p.size() == 1);
  CHECK(p[0] == Pulse{10, 20, LogicLevel::L1, false});
}

TEST_CASE("an unknown interval interrupts a pulse") {
  Waveform w =
      wave(LogicLevel::L0, {{10, LogicLevel::L1}, {12, LogicLevel::LX}, {14, LogicLevel::L1}, {16, LogicLevel::L0}});
  auto p = measure_pulses(w, LogicLevel::L1, 30);
  REQUIRE(p.size() == 2);
  CHECK(p[0] == Pulse{10, 12, LogicLevel::L1, false});
  CHECK(p[1] == Pulse{14, 16, LogicLevel::L1, false});
}

TEST_CASE("pulse measurement rejects unknown polarity") {
  Waveform w = wave(LogicLevel::L0, {});
  CHECK_THROWS_AS(measure_pulses(w, LogicLevel::LX, 10), std::invalid_argument);
}

TEST_CASE("pulse measurement agrees with a per-tick scan on random waveforms") {
  std::mt19937 rng(20260818);
  std::uniform_int_distribution<int> level_pick(0, 2);
  std::uniform_int_distribution<Tick> gap(1, 9);
  for (int round = 0; round < 200; ++round) {
    Waveform w = wave(kLevels[level_pick(rng)], {});
    Tick t = gap(rng);
    while (w.changes.size() < 12 && t < 60) {
      LogicLevel prev = w.changes.empty() ? w.initial : w.changes.back().level;
      LogicLevel next = prev;
      while (next == prev) next = kLevels[level_pick(rng)];
      w.changes.push_back({t, next});
      t += gap(rng);
    }
    check_well_formed(w);
    Tick horizon = 50;
    for (LogicLevel polarity : {LogicLevel::L0, LogicLevel::L1}) {
      auto fast = measure_pulses(w, polarity, horizon);
      auto slow = scan_pulses(w, polarity, horizon);
      REQUIRE(fast.size() == slow.size());
      for (std::size_t i = 0; i < fast.size(); ++i) {
        CAPTURE(round);
        CHECK(fast[i].start == slow[i].start);
        CHECK(fast[i].end == slow[i].end);
        CHECK(fast[i].open == slow[i].open);
        CHECK(fast[i].polarity == polarity);
      }
    }
  }
}
