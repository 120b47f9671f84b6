#pragma once
// Gate-level netlists with per-component delays, compilation of equation
// sets into delayed feedback circuits, and the RC one-shot component.

#include <optional>
#include <string>
#include <vector>

#include "aswb/bool_synth.hpp"
#include "aswb/logic.hpp"

namespace aswb {

enum class ComponentKind { Inv, And, Or, Nand, Nor, Buf, Sop, Monostable, Source };

std::string kind_name(ComponentKind k);
std::optional<ComponentKind> kind_from_name(const std::string& name);

enum class TriggerEdge { Rising, Falling };

// One-shot parameters. The output pulse lasts round(k * R * C / timescale)
// ticks; the trigger-to-output delay is the component delay.
struct MonostableParams {
  double r_ohms = 1000.0;
  double c_farads = 1e-9;
  double k = 1.1;
  bool retriggerable = false;
  TriggerEdge trigger = TriggerEdge::Rising;
};

// Pulse width in ticks for a given timescale (seconds per tick). Throws
// std::invalid_argument("pulse narrower than timescale") when the product
// rounds below one half tick.
Tick monostable_width(const MonostableParams& p, double timescale);

struct Component {
  int id = 0;
  ComponentKind kind = ComponentKind::Buf;
  std::vector<std::string> inputs;
  std::string output;
  Tick delay = 1;
  std::optional<SopFunction> fn;          // Sop only; variables name nets
  std::optional<LogicLevel> level;        // Source only
  std::optional<MonostableParams> mono;   // Monostable only
};

struct Netlist {
  std::vector<Component> components;
  std::vector<std::string> inputs;      // nets the environment may drive
  std::vector<std::string> state_nets;  // feedback nets
  std::vector<std::string> outputs;

  std::vector<std::string> nets() const;  // sorted, unique
  const Component* driver_of(const std::string& net) const;
  // Declared inputs that no component drives; these must come from stimulus.
  std::vector<std::string> stimulus_nets() const;
};

struct GateDelays {
  Tick sop = 2;  // excitation stage
  Tick buf = 1;  // output stage
};

// One component per excitation (driving its feedback net directly) and one
// delay-`buf` stage per output: a BUF when the output function is a single
// positive literal, otherwise a compound SOP stage. Constant functions
// become SOURCE components.
Netlist equations_to_netlist(const EquationSet& eqs, const GateDelays& delays = {});

// Adds a one-shot triggered by `trigger` and driving `out`, which must be a
// fresh net or a declared input nothing drives yet.
Netlist attach_monostable(Netlist n, const std::string& trigger, const std::string& out,
                          const MonostableParams& p, Tick delay = 1);

struct NetlistValidation {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

NetlistValidation validate_netlist(const Netlist& n);

}  // namespace aswb
