#pragma once
// Text formats: flow tables, stimulus files, equation files, netlist
// documents, VCD dumps and ASCII timing diagrams.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aswb/flow_table.hpp"
#include "aswb/netlist.hpp"
#include "aswb/sim.hpp"

namespace aswb {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line;
  std::size_t column;
  std::string message;
};

// --- flow table files -------------------------------------------------
//
//   # comment
//   inputs H M
//   outputs Z
//   encoding 1=00 2=01 3=11 4=10
//   row 1 : 00 -> 2 / 0 ; 01 -> - ; 11 -> - ; 10 -> 1 / 0
//
// Rows declare the states in order. Every row lists each input combination
// exactly once; "-" is a don't-care next state, and the optional "/ bits"
// part gives one 0/1/- per declared output.

struct FlowTableDoc {
  FlowTable table;
  std::optional<StateEncoding> encoding;
};

FlowTableDoc parse_flow_table(const std::string& text);
std::string serialize_flow_table(const FlowTableDoc& doc);

// --- stimulus files ---------------------------------------------------
//
//   net H init 1
//   at 100 H 0
//   horizon 400

Stimulus parse_stimulus(const std::string& text);
std::string serialize_stimulus(const Stimulus& s);

// --- equation files ---------------------------------------------------
//
//   vars y1 y0 H M
//   Y1 = !H & y1 + M & y0
//
// Sum-of-products only; "0" and "1" are the constants. "¬" is accepted as
// a synonym for "!".

struct EquationDoc {
  std::vector<std::string> vars;
  std::vector<std::pair<std::string, SopFunction>> entries;
};

EquationDoc parse_equations(const std::string& text);
std::string render_equations(const EquationDoc& doc);
EquationDoc to_doc(const EquationSet& eqs);

// --- netlist documents (JSON) ------------------------------------------

std::string netlist_to_json(const Netlist& n);
Netlist netlist_from_json(const std::string& text);

// --- VCD ----------------------------------------------------------------
// Minimal IEEE-1364-style subset: $timescale, $var wire 1 <id> <name> $end,
// $dumpvars with the settled levels, then #<tick> blocks of 0/1/x<id>
// lines. A trailing #<horizon> closes the dump.

std::string write_vcd(const TraceSet& trace, const std::string& timescale = "1ns");
TraceSet read_vcd(const std::string& text);

// "1ns", "10us", ... -> seconds; and back. Throws on anything else.
double parse_timescale(const std::string& text);

// --- ASCII timing diagrams ----------------------------------------------
// One row per net. Unicode uses an overline for high; the plain variant
// sticks to '-'. A column containing a change renders '|'.

std::string render_ascii(const TraceSet& trace, std::size_t width = 80, bool unicode = true);

}  // namespace aswb
