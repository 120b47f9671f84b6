#pragma once
// Flow tables for fundamental-mode sequential circuits: validation, state
// encodings, excitation matrices and race analysis.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aswb/bool_synth.hpp"

namespace aswb {

// One table cell: next state (nullopt = don't care) and one bit per output
// variable (nullopt = don't care).
struct FlowCell {
  std::optional<std::string> next;
  std::vector<std::optional<int>> outputs;
};

// States are symbolic names; rows follow the declared state order, columns
// the input combination read as a bit string with inputs[0] most
// significant.
struct FlowTable {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<std::string> states;
  std::vector<std::vector<FlowCell>> cells;  // [state index][combo]

  std::size_t input_combos() const { return std::size_t{1} << inputs.size(); }
  std::optional<std::size_t> state_index(const std::string& name) const;
  const FlowCell& cell(std::size_t state, std::size_t combo) const { return cells[state][combo]; }
};

struct TableValidation {
  std::vector<std::string> problems;
  std::size_t specified_cells = 0;
  std::size_t dc_cells = 0;
  bool ok() const { return problems.empty(); }
};

TableValidation validate(const FlowTable& t);

// Injective assignment of a fixed-width bit vector (most significant bit
// first) to every state.
struct StateEncoding {
  std::map<std::string, std::vector<int>> bits;

  std::size_t width() const;
  std::uint32_t value_of(const std::string& state) const;
  std::optional<std::string> state_of(std::uint32_t value) const;
};

// State bit net names by encoding width: "y" when one bit, else
// "y<w-1>".."y0". Excitation names are the same with an uppercase Y.
std::vector<std::string> state_bit_names(std::size_t width);
std::string excitation_name(const std::string& state_bit);

// Incompletely specified truth tables for every excitation bit and output,
// over the variable order (state bits, then inputs). Assignments that are
// no encoded state, and cells the table leaves open, are don't-cares.
struct ExcitationMatrix {
  std::vector<std::string> variables;
  std::vector<std::string> state_bits;
  std::vector<std::string> excitation_names;
  std::vector<std::string> output_names;
  std::vector<CareFunction> excitations;
  std::vector<CareFunction> outputs;

  const CareFunction* column(const std::string& name) const;
};

// Requires a table that passes validate() and an encoding covering every
// state; throws std::invalid_argument otherwise.
ExcitationMatrix excitation_matrix(const FlowTable& t, const StateEncoding& e);

// A transition whose encoded Hamming distance exceeds 1. It is critical
// when some intermediate one-step encoding is itself a state whose cell
// under the same inputs settles somewhere else than the intended
// transition does.
struct RaceEntry {
  std::string state;
  std::size_t combo = 0;
  std::string next;
  int distance = 0;
  bool critical = false;
};

struct RaceReport {
  std::vector<RaceEntry> entries;
  bool empty() const { return entries.empty(); }
};

RaceReport race_check(const FlowTable& t, const StateEncoding& e);

// Follows next-state entries under a fixed input combination until a stable
// state is reached. nullopt when the chain leaves the specified cells or
// loops without stabilizing.
std::optional<std::string> stable_destination(const FlowTable& t, const std::string& from,
                                              std::size_t combo);

std::string combo_bits(std::size_t combo, std::size_t input_count);

}  // namespace aswb
