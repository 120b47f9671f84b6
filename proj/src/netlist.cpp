#include "aswb/netlist.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace aswb {

std::string kind_name(ComponentKind k) {
  switch (k) {
    case ComponentKind::Inv: return "inv";
    case ComponentKind::And: return "and";
    case ComponentKind::Or: return "or";
    case ComponentKind::Nand: return "nand";
    case ComponentKind::Nor: return "nor";
    case ComponentKind::Buf: return "buf";
    case ComponentKind::Sop: return "sop";
    case ComponentKind::Monostable: return "monostable";
    case ComponentKind::Source: return "source";
  }
  return "?";
}

std::optional<ComponentKind> kind_from_name(const std::string& name) {
  static const std::map<std::string, ComponentKind> table = {
      {"inv", ComponentKind::Inv},   {"and", ComponentKind::And},
      {"or", ComponentKind::Or},     {"nand", ComponentKind::Nand},
      {"nor", ComponentKind::Nor},   {"buf", ComponentKind::Buf},
      {"sop", ComponentKind::Sop},   {"monostable", ComponentKind::Monostable},
      {"source", ComponentKind::Source}};
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

Tick monostable_width(const MonostableParams& p, double timescale) {
  if (timescale <= 0) throw std::invalid_argument("timescale must be positive");
  double ticks = p.k * p.r_ohms * p.c_farads / timescale;
  if (ticks < 0.5) throw std::invalid_argument("pulse narrower than timescale");
  long long rounded = std::llround(ticks);
  return rounded < 1 ? Tick{1} : static_cast<Tick>(rounded);
}

std::vector<std::string> Netlist::nets() const {
  std::set<std::string> all(inputs.begin(), inputs.end());
  for (const Component& c : components) {
    all.insert(c.output);
    all.insert(c.inputs.begin(), c.inputs.end());
  }
  return {all.begin(), all.end()};
}

const Component* Netlist::driver_of(const std::string& net) const {
  for (const Component& c : components)
    if (c.output == net) return &c;
  return nullptr;
}

std::vector<std::string> Netlist::stimulus_nets() const {
  std::vector<std::string> out;
  for (const std::string& net : inputs)
    if (!driver_of(net)) out.push_back(net);
  return out;
}

namespace {

// Support of a term list, as (net name, position in fn.vars) pairs in
// variable order.
std::vector<std::string> support_nets(const SopFunction& fn) {
  std::vector<std::string> nets;
  std::size_t n = fn.vars.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t bit = std::uint32_t{1} << (n - 1 - i);
    for (const SopTerm& t : fn.terms) {
      if (t.mask & bit) {
        nets.push_back(fn.vars[i]);
        break;
      }
    }
  }
  return nets;
}

bool is_positive_literal(const SopFunction& fn) {
  if (fn.terms.size() != 1) return false;
  const SopTerm& t = fn.terms[0];
  return t.literal_count() == 1 && t.value == t.mask;
}

Component make_stage(int id, const NamedFunction& nf, Tick delay) {
  Component c;
  c.id = id;
  c.delay = delay;
  c.output = nf.target;
  if (nf.fn.is_const_zero() || nf.fn.is_const_one()) {
    c.kind = ComponentKind::Source;
    c.level = nf.fn.is_const_one() ? LogicLevel::L1 : LogicLevel::L0;
    return c;
  }
  c.inputs = support_nets(nf.fn);
  if (is_positive_literal(nf.fn)) {
    c.kind = ComponentKind::Buf;
    return c;
  }
  c.kind = ComponentKind::Sop;
  c.fn = nf.fn;
  return c;
}

}  // namespace

Netlist equations_to_netlist(const EquationSet& eqs, const GateDelays& delays) {
  std::set<std::string> declared(eqs.vars.begin(), eqs.vars.end());
  std::set<std::string> state;
  for (const NamedFunction& nf : eqs.excitations) {
    if (!declared.count(nf.target))
      throw std::invalid_argument("excitation " + nf.name + " drives undeclared variable " +
                                  nf.target);
    state.insert(nf.target);
  }
  for (const NamedFunction& nf : eqs.excitations)
    for (const std::string& v : support_nets(nf.fn))
      if (!declared.count(v))
        throw std::invalid_argument(nf.name + " references undeclared variable " + v);
  for (const NamedFunction& nf : eqs.outputs)
    for (const std::string& v : support_nets(nf.fn))
      if (!declared.count(v))
        throw std::invalid_argument(nf.name + " references undeclared variable " + v);

  Netlist n;
  for (const std::string& v : eqs.vars)
    if (!state.count(v)) n.inputs.push_back(v);
  int id = 0;
  for (const NamedFunction& nf : eqs.excitations) {
    n.components.push_back(make_stage(id++, nf, delays.sop));
    n.state_nets.push_back(nf.target);
  }
  for (const NamedFunction& nf : eqs.outputs) {
    n.components.push_back(make_stage(id++, nf, delays.buf));
    n.outputs.push_back(nf.target);
  }
  return n;
}

Netlist attach_monostable(Netlist n, const std::string& trigger, const std::string& out,
                          const MonostableParams& p, Tick delay) {
  std::vector<std::string> nets = n.nets();
  if (!std::binary_search(nets.begin(), nets.end(), trigger))
    throw std::invalid_argument("monostable trigger net " + trigger + " does not exist");
  if (n.driver_of(out))
    throw std::invalid_argument("monostable output net " + out + " already has a driver");
  Component c;
  c.id = n.components.empty() ? 0 : n.components.back().id + 1;
  c.kind = ComponentKind::Monostable;
  c.inputs = {trigger};
  c.output = out;
  c.delay = delay;
  c.mono = p;
  n.components.push_back(std::move(c));
  return n;
}

NetlistValidation validate_netlist(const Netlist& n) {
  NetlistValidation v;
  auto problem = [&](std::string msg) { v.problems.push_back(std::move(msg)); };

  std::set<int> ids;
  std::map<std::string, int> drivers;
  for (const Component& c : n.components) {
    if (!ids.insert(c.id).second) problem("duplicate component id " + std::to_string(c.id));
    if (c.delay < 1)
      problem("component " + std::to_string(c.id) + ": delay below 1 tick");
    if (++drivers[c.output] == 2) problem("multiple drivers: " + c.output);

    std::size_t arity = c.inputs.size();
    switch (c.kind) {
      case ComponentKind::Inv:
      case ComponentKind::Buf:
      case ComponentKind::Monostable:
        if (arity != 1) problem("component " + std::to_string(c.id) + ": needs exactly 1 input");
        break;
      case ComponentKind::And:
      case ComponentKind::Or:
      case ComponentKind::Nand:
      case ComponentKind::Nor:
        if (arity < 2) problem("component " + std::to_string(c.id) + ": needs at least 2 inputs");
        break;
      case ComponentKind::Sop:
        if (!c.fn) problem("component " + std::to_string(c.id) + ": sop stage without a function");
        break;
      case ComponentKind::Source:
        if (arity != 0) problem("component " + std::to_string(c.id) + ": source takes no inputs");
        if (!c.level) problem("component " + std::to_string(c.id) + ": source without a level");
        break;
    }
    if (c.kind == ComponentKind::Monostable && !c.mono)
      problem("component " + std::to_string(c.id) + ": one-shot without parameters");
    if (c.kind == ComponentKind::Sop && c.fn) {
      std::set<std::string> wired(c.inputs.begin(), c.inputs.end());
      for (const std::string& net : support_nets(*c.fn))
        if (!wired.count(net))
          problem("component " + std::to_string(c.id) + ": function reads unwired net " + net);
    }
  }

  std::set<std::string> declared_inputs(n.inputs.begin(), n.inputs.end());
  for (const Component& c : n.components)
    for (const std::string& net : c.inputs)
      if (!drivers.count(net) && !declared_inputs.count(net))
        problem("undriven net " + net + " (input of component " + std::to_string(c.id) + ")");

  for (const std::string& net : n.outputs)
    if (!drivers.count(net) && !declared_inputs.count(net)) problem("undriven net " + net);
  for (const std::string& net : n.state_nets)
    if (!drivers.count(net)) problem("undriven net " + net);
  return v;
}

}  // namespace aswb
