#include "aswb/flow_table.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

namespace aswb {

std::optional<std::size_t> FlowTable::state_index(const std::string& name) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == name) return i;
  return std::nullopt;
}

std::string combo_bits(std::size_t combo, std::size_t input_count) {
  std::string s(input_count, '0');
  for (std::size_t i = 0; i < input_count; ++i)
    if (combo & (std::size_t{1} << (input_count - 1 - i))) s[i] = '1';
  return s;
}

TableValidation validate(const FlowTable& t) {
  TableValidation v;
  auto problem = [&](std::string msg) { v.problems.push_back(std::move(msg)); };

  std::set<std::string> seen;
  for (const std::string& s : t.states)
    if (!seen.insert(s).second) problem("duplicate state " + s);
  std::set<std::string> vars;
  for (const std::string& i : t.inputs)
    if (!vars.insert(i).second) problem("duplicate input " + i);
  for (const std::string& o : t.outputs)
    if (!vars.insert(o).second) problem("duplicate output " + o);
  if (t.states.empty()) problem("no states");
  if (t.inputs.empty()) problem("no inputs");

  if (t.cells.size() != t.states.size()) {
    problem("row count does not match state count");
    return v;
  }

  std::size_t combos = t.input_combos();
  for (std::size_t si = 0; si < t.states.size(); ++si) {
    if (t.cells[si].size() != combos) {
      problem("state " + t.states[si] + ": expected " + std::to_string(combos) + " cells");
      continue;
    }
    bool stable = false;
    for (std::size_t c = 0; c < combos; ++c) {
      const FlowCell& cell = t.cells[si][c];
      if (cell.outputs.size() != t.outputs.size())
        problem("state " + t.states[si] + " combo " + combo_bits(c, t.inputs.size()) +
                ": output bits do not match output count");
      if (cell.next) {
        ++v.specified_cells;
        if (!t.state_index(*cell.next))
          problem("unknown next state " + *cell.next + " in cell (" + t.states[si] + ", " +
                  combo_bits(c, t.inputs.size()) + ")");
        if (*cell.next == t.states[si]) stable = true;
      } else {
        ++v.dc_cells;
      }
    }
    if (!stable) problem("no stable cell for state " + t.states[si]);
  }
  return v;
}

std::size_t StateEncoding::width() const {
  return bits.empty() ? 0 : bits.begin()->second.size();
}

std::uint32_t StateEncoding::value_of(const std::string& state) const {
  auto it = bits.find(state);
  if (it == bits.end()) throw std::invalid_argument("encoding misses state " + state);
  std::uint32_t v = 0;
  for (int b : it->second) v = (v << 1) | static_cast<std::uint32_t>(b);
  return v;
}

std::optional<std::string> StateEncoding::state_of(std::uint32_t value) const {
  for (const auto& [name, vec] : bits) {
    std::uint32_t v = 0;
    for (int b : vec) v = (v << 1) | static_cast<std::uint32_t>(b);
    if (v == value) return name;
  }
  return std::nullopt;
}

std::vector<std::string> state_bit_names(std::size_t width) {
  if (width == 1) return {"y"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < width; ++i)
    names.push_back("y" + std::to_string(width - 1 - i));
  return names;
}

std::string excitation_name(const std::string& state_bit) {
  return "Y" + state_bit.substr(1);
}

const CareFunction* ExcitationMatrix::column(const std::string& name) const {
  for (std::size_t i = 0; i < excitation_names.size(); ++i)
    if (excitation_names[i] == name) return &excitations[i];
  for (std::size_t j = 0; j < output_names.size(); ++j)
    if (output_names[j] == name) return &outputs[j];
  return nullptr;
}

namespace {

void check_encoding(const FlowTable& t, const StateEncoding& e) {
  std::size_t w = e.width();
  if (w == 0) throw std::invalid_argument("empty state encoding");
  std::size_t needed = 1;
  while ((std::size_t{1} << needed) < t.states.size()) ++needed;
  if (w < needed)
    throw std::invalid_argument("encoding width " + std::to_string(w) + " cannot hold " +
                                std::to_string(t.states.size()) + " states");
  std::set<std::uint32_t> used;
  for (const std::string& s : t.states) {
    auto it = e.bits.find(s);
    if (it == e.bits.end()) throw std::invalid_argument("encoding misses state " + s);
    if (it->second.size() != w)
      throw std::invalid_argument("encoding width not uniform at state " + s);
    if (!used.insert(e.value_of(s)).second)
      throw std::invalid_argument("encoding not injective at state " + s);
  }
}

}  // namespace

ExcitationMatrix excitation_matrix(const FlowTable& t, const StateEncoding& e) {
  TableValidation v = validate(t);
  if (!v.ok()) throw std::invalid_argument("invalid flow table: " + v.problems.front());
  check_encoding(t, e);

  std::size_t w = e.width();
  std::size_t k = t.inputs.size();

  ExcitationMatrix m;
  m.state_bits = state_bit_names(w);
  m.variables = m.state_bits;
  m.variables.insert(m.variables.end(), t.inputs.begin(), t.inputs.end());
  for (const std::string& bit : m.state_bits)
    m.excitation_names.push_back(excitation_name(bit));
  m.output_names = t.outputs;

  for (std::size_t i = 0; i < w; ++i)
    m.excitations.push_back(CareFunction::all_dc(m.variables));
  for (std::size_t j = 0; j < t.outputs.size(); ++j)
    m.outputs.push_back(CareFunction::all_dc(m.variables));

  for (std::size_t si = 0; si < t.states.size(); ++si) {
    std::uint32_t enc = e.value_of(t.states[si]);
    for (std::size_t c = 0; c < t.input_combos(); ++c) {
      std::size_t idx = (std::size_t{enc} << k) | c;
      const FlowCell& cell = t.cells[si][c];
      if (cell.next) {
        std::uint32_t next_enc = e.value_of(*cell.next);
        for (std::size_t i = 0; i < w; ++i) {
          int bit = (next_enc >> (w - 1 - i)) & 1u;
          m.excitations[i].values[idx] = bit ? TruthValue::T : TruthValue::F;
        }
      }
      for (std::size_t j = 0; j < t.outputs.size(); ++j)
        if (cell.outputs[j])
          m.outputs[j].values[idx] = *cell.outputs[j] ? TruthValue::T : TruthValue::F;
    }
  }
  return m;
}

std::optional<std::string> stable_destination(const FlowTable& t, const std::string& from,
                                              std::size_t combo) {
  std::set<std::string> visited;
  std::string at = from;
  while (visited.insert(at).second) {
    auto si = t.state_index(at);
    if (!si) return std::nullopt;
    const FlowCell& cell = t.cells[*si][combo];
    if (!cell.next) return std::nullopt;
    if (*cell.next == at) return at;
    at = *cell.next;
  }
  return std::nullopt;  // cycled without stabilizing
}

RaceReport race_check(const FlowTable& t, const StateEncoding& e) {
  TableValidation v = validate(t);
  if (!v.ok()) throw std::invalid_argument("invalid flow table: " + v.problems.front());
  check_encoding(t, e);

  std::size_t w = e.width();
  RaceReport report;
  for (std::size_t si = 0; si < t.states.size(); ++si) {
    for (std::size_t c = 0; c < t.input_combos(); ++c) {
      const FlowCell& cell = t.cells[si][c];
      if (!cell.next || *cell.next == t.states[si]) continue;
      std::uint32_t from = e.value_of(t.states[si]);
      std::uint32_t to = e.value_of(*cell.next);
      std::uint32_t diff = from ^ to;
      int distance = std::popcount(diff);
      if (distance < 2) continue;

      // The race can resolve through any single-bit step off `from`. When
      // that step lands on a real state, follow the table from there; a
      // different final stable state (or no provable destination) makes the
      // race critical.
      std::optional<std::string> intended = stable_destination(t, *cell.next, c);
      bool critical = false;
      for (std::size_t b = 0; b < w; ++b) {
        std::uint32_t bit = std::uint32_t{1} << b;
        if (!(diff & bit)) continue;
        auto via = e.state_of(from ^ bit);
        if (!via) continue;  // unassigned encoding cannot occur as a state
        std::optional<std::string> reached = stable_destination(t, *via, c);
        if (!reached || !intended || *reached != *intended) critical = true;
      }
      report.entries.push_back({t.states[si], c, *cell.next, distance, critical});
    }
  }
  return report;
}

}  // namespace aswb
