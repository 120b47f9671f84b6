#pragma once
// Event-driven simulation with inertial delays, fundamental-mode
// monitoring, and conformance of traces against a flow table.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "aswb/flow_table.hpp"
#include "aswb/logic.hpp"
#include "aswb/netlist.hpp"

namespace aswb {

struct StimulusNet {
  LogicLevel initial = LogicLevel::LX;
  std::vector<Change> changes;  // strictly increasing ticks, before horizon
};

struct Stimulus {
  std::map<std::string, StimulusNet> nets;
  Tick horizon = 0;
};

struct SimConfig {
  double timescale = 1e-9;            // seconds per tick
  std::size_t event_budget = 1000000;  // events allowed between stimulus times
  bool settle = true;
};

struct TraceSet {
  std::map<std::string, Waveform> waves;
  Tick horizon = 0;
  std::map<std::string, std::size_t> event_counts;

  const Waveform& wave(const std::string& net) const;
};

struct FmViolation {
  Tick tick = 0;
  std::string net;
  bool operator==(const FmViolation&) const = default;
};

struct FundamentalModeReport {
  std::vector<FmViolation> violations;
  bool clean() const { return violations.empty(); }
};

class OscillationError : public std::runtime_error {
 public:
  OscillationError(Tick tick, std::size_t budget);
  Tick tick;
  std::size_t budget;
};

struct SimResult {
  TraceSet traces;
  FundamentalModeReport fm;
  std::vector<std::string> warnings;
};

// Runs the netlist against the stimulus. All nets start at LX; when
// settling is enabled the initial stimulus levels propagate to quiescence
// before tick 0, and those transitions never appear in the traces. Each
// component reacts to an input change by scheduling its recomputed output
// after its delay; a newly scheduled event replaces any pending event on
// the same net (inertial behaviour: only the latest value survives).
// Same-tick events run in insertion order. Throws OscillationError when
// the event budget runs out between stimulus times.
SimResult run_simulation(const Netlist& n, const Stimulus& s, const SimConfig& cfg = {});

TraceSet simulate(const Netlist& n, const Stimulus& s, const SimConfig& cfg = {});

// Every stimulus change applied while internal events were still pending.
FundamentalModeReport check_fundamental_mode(const Netlist& n, const Stimulus& s,
                                             const SimConfig& cfg = {});

struct ConformanceEntry {
  Tick tick = 0;
  std::string state;
  bool operator==(const ConformanceEntry&) const = default;
};

struct ConformanceReport {
  std::vector<ConformanceEntry> states;  // decoded stable-state sequence
  std::vector<std::string> violations;
  bool clean() const { return violations.empty(); }
};

// Reads the state bits out of a trace, decodes them against the encoding,
// and checks the visited states, transitions and sampled outputs against
// the table. Sampling happens at quiescent intervals only (those ending at
// an input change or at the horizon), so transient output glitches between
// internal events are not violations. `binding` maps table variables to
// net names when they differ.
ConformanceReport conformance(const TraceSet& trace, const FlowTable& t, const StateEncoding& e,
                              const std::map<std::string, std::string>& binding = {});

}  // namespace aswb
