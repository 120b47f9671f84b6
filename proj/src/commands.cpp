#include "aswb/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "aswb/bool_synth.hpp"
#include "aswb/flow_table.hpp"
#include "aswb/formats.hpp"
#include "aswb/netlist.hpp"
#include "aswb/sim.hpp"

namespace fs = std::filesystem;

namespace aswb {
namespace {

std::string tag(bool color) {
  return color ? "\x1b[31merror:\x1b[0m " : "error: ";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string join(const std::vector<std::string>& v, const std::string& sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

const char* plural(std::size_t n) { return n == 1 ? "" : "s"; }

// Parses and validates; returns 0 or the exit code already reported to err.
int load_table(const std::string& path, bool color, std::ostream& err, FlowTableDoc& doc) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    err << tag(color) << e.what() << "\n";
    return 1;
  }
  try {
    doc = parse_flow_table(text);
  } catch (const ParseError& e) {
    err << tag(color) << path << ": " << e.what() << "\n";
    return 1;
  }
  TableValidation v = validate(doc.table);
  if (!v.ok()) {
    for (const auto& p : v.problems) err << tag(color) << path << ": " << p << "\n";
    return 2;
  }
  return 0;
}

std::string race_text(const FlowTable& t, const RaceReport& r) {
  std::ostringstream out;
  if (r.empty()) {
    out << "race report: clean\n";
    return out.str();
  }
  std::size_t critical =
      std::count_if(r.entries.begin(), r.entries.end(), [](const RaceEntry& e) { return e.critical; });
  out << "race report: " << r.entries.size() << " multi-bit transition" << plural(r.entries.size())
      << ", " << critical << " critical\n";
  for (const auto& e : r.entries) {
    out << "  " << e.state << " -> " << e.next << " under " << combo_bits(e.combo, t.inputs.size())
        << " : distance " << e.distance << ", " << (e.critical ? "critical" : "noncritical") << "\n";
  }
  return out.str();
}

void print_pulses(std::ostream& out, const std::string& net, const std::vector<Pulse>& pulses) {
  out << net << ": " << pulses.size() << " pulse" << plural(pulses.size()) << "\n";
  for (const auto& p : pulses) {
    out << "  start=" << p.start << " end=" << p.end << " width=" << p.width();
    if (p.open) out << " open";
    out << "\n";
  }
}

std::string render_assignment(const std::vector<std::string>& vars, const Assignment& a) {
  std::ostringstream out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) out << " ";
    out << vars[i] << "=" << a.at(vars[i]);
  }
  return out.str();
}

}  // namespace

MonoSpec parse_mono_spec(const std::string& text) {
  auto bad = [&]() -> std::invalid_argument {
    return std::invalid_argument("--mono wants NET=R,C[,k], got \"" + text + "\"");
  };
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw bad();
  MonoSpec spec;
  spec.trigger = text.substr(0, eq);
  std::vector<std::string> fields;
  std::string rest = text.substr(eq + 1);
  std::size_t pos = 0;
  while (true) {
    auto comma = rest.find(',', pos);
    fields.push_back(rest.substr(pos, comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (fields.size() < 2 || fields.size() > 3) throw bad();
  auto number = [&](const std::string& field) {
    std::size_t used = 0;
    double value = 0;
    try {
      value = std::stod(field, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != field.size() || !(value > 0)) throw bad();
    return value;
  };
  spec.r_ohms = number(fields[0]);
  spec.c_farads = number(fields[1]);
  if (fields.size() == 3) spec.k = number(fields[2]);
  return spec;
}

int run_synth(const SynthOptions& o, std::ostream& out, std::ostream& err) {
  FlowTableDoc doc;
  if (int rc = load_table(o.table_path, o.color, err, doc)) return rc;
  if (!doc.encoding) {
    err << tag(o.color) << o.table_path << ": no encoding directive, cannot synthesize\n";
    return 2;
  }
  ExcitationMatrix m;
  try {
    m = excitation_matrix(doc.table, *doc.encoding);
  } catch (const std::invalid_argument& e) {
    err << tag(o.color) << o.table_path << ": " << e.what() << "\n";
    return 2;
  }
  EquationSet eqs = synthesize(m);
  Netlist nl = equations_to_netlist(eqs, GateDelays{o.sop_delay, o.buf_delay});
  RaceReport races = race_check(doc.table, *doc.encoding);

  std::string eqn_text = render_equations(to_doc(eqs));
  std::string races_text = race_text(doc.table, races);
  std::string netlist_text = netlist_to_json(nl);
  netlist_text.push_back('\n');

  fs::path dir(o.out_dir);
  std::string stem = fs::path(o.table_path).stem().string();
  try {
    fs::create_directories(dir);
    write_file(dir / (stem + ".eqn"), eqn_text);
    write_file(dir / (stem + ".netlist.json"), netlist_text);
    write_file(dir / (stem + ".race.txt"), races_text);
  } catch (const std::exception& e) {
    err << tag(o.color) << e.what() << "\n";
    return 1;
  }

  out << eqn_text << "\n" << races_text;
  for (const char* suffix : {".eqn", ".netlist.json", ".race.txt"})
    err << "wrote " << (dir / (stem + suffix)).string() << "\n";
  return 0;
}

int run_sim(const SimOptions& o, std::ostream& out, std::ostream& err) {
  Netlist nl;
  try {
    nl = netlist_from_json(read_file(o.netlist_path));
  } catch (const std::exception& e) {
    err << tag(o.color) << o.netlist_path << ": " << e.what() << "\n";
    return 1;
  }
  Stimulus stim;
  try {
    stim = parse_stimulus(read_file(o.stimulus_path));
  } catch (const ParseError& e) {
    err << tag(o.color) << o.stimulus_path << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << tag(o.color) << e.what() << "\n";
    return 1;
  }

  if (o.until) {
    stim.horizon = *o.until;
    for (auto& [net, sn] : stim.nets)
      std::erase_if(sn.changes, [&](const Change& c) { return c.tick >= *o.until; });
  }

  std::string mono_out;
  if (o.mono) {
    MonoSpec spec;
    try {
      spec = parse_mono_spec(*o.mono);
    } catch (const std::invalid_argument& e) {
      err << tag(o.color) << e.what() << "\n";
      return 1;
    }
    // The one-shot drives the unique input the stimulus leaves free, or a
    // fresh net when there is none.
    std::vector<std::string> candidates;
    for (const auto& net : nl.stimulus_nets())
      if (!stim.nets.count(net)) candidates.push_back(net);
    if (candidates.size() == 1) {
      mono_out = candidates[0];
    } else if (candidates.empty()) {
      mono_out = "mono";
      auto nets = nl.nets();
      int serial = 1;
      while (std::binary_search(nets.begin(), nets.end(), mono_out))
        mono_out = "mono" + std::to_string(serial++);
    } else {
      err << tag(o.color) << "one-shot output is ambiguous; unstimulated inputs: " << join(candidates)
          << "\n";
      return 2;
    }
    MonostableParams params;
    params.r_ohms = spec.r_ohms;
    params.c_farads = spec.c_farads;
    params.k = spec.k;
    try {
      nl = attach_monostable(std::move(nl), spec.trigger, mono_out, params);
    } catch (const std::invalid_argument& e) {
      err << tag(o.color) << e.what() << "\n";
      return 2;
    }
  }

  NetlistValidation v = validate_netlist(nl);
  if (!v.ok()) {
    for (const auto& p : v.problems) err << tag(o.color) << o.netlist_path << ": " << p << "\n";
    return 2;
  }
  auto free_nets = nl.stimulus_nets();
  for (const auto& [net, sn] : stim.nets) {
    if (std::find(free_nets.begin(), free_nets.end(), net) == free_nets.end()) {
      err << tag(o.color) << "stimulus net " << net << " is not an undriven input of the netlist\n";
      return 2;
    }
  }

  SimConfig cfg;
  SimResult r;
  try {
    r = run_simulation(nl, stim, cfg);
  } catch (const OscillationError& e) {
    err << tag(o.color) << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << tag(o.color) << e.what() << "\n";
    return 2;
  }
  for (const auto& w : r.warnings) err << "warning: " << w << "\n";

  std::vector<std::string> report_nets = nl.outputs;
  if (!mono_out.empty() &&
      std::find(report_nets.begin(), report_nets.end(), mono_out) == report_nets.end())
    report_nets.push_back(mono_out);
  for (const auto& net : report_nets)
    print_pulses(out, net, measure_pulses(r.traces.wave(net), LogicLevel::L1, r.traces.horizon));

  if (o.vcd_path) {
    try {
      write_file(*o.vcd_path, write_vcd(r.traces, "1ns"));
    } catch (const std::exception& e) {
      err << tag(o.color) << e.what() << "\n";
      return 1;
    }
  }
  if (o.ascii) out << "\n" << render_ascii(r.traces, 80, !o.plain);

  if (o.check_fm) {
    if (r.fm.clean()) {
      out << "fundamental mode: clean\n";
    } else {
      out << "fundamental mode: " << r.fm.violations.size() << " violation"
          << plural(r.fm.violations.size()) << "\n";
      for (const auto& fv : r.fm.violations)
        out << "  input " << fv.net << " changed at " << fv.tick
            << " with internal events pending\n";
    }
  }

  if (o.conform_table) {
    FlowTableDoc doc;
    if (int rc = load_table(*o.conform_table, o.color, err, doc)) return rc;
    if (!doc.encoding) {
      err << tag(o.color) << *o.conform_table << ": no encoding directive\n";
      return 2;
    }
    ConformanceReport cr;
    try {
      cr = conformance(r.traces, doc.table, *doc.encoding);
    } catch (const std::invalid_argument& e) {
      err << tag(o.color) << e.what() << "\n";
      return 2;
    }
    out << "state sequence:";
    if (cr.states.empty()) out << " (none)";
    for (std::size_t i = 0; i < cr.states.size(); ++i)
      out << (i ? " -> " : " ") << cr.states[i].state;
    out << "\n";
    for (const auto& entry : cr.states) out << "  at " << entry.tick << " state " << entry.state << "\n";
    if (cr.clean()) {
      out << "conformance: clean\n";
    } else {
      out << "conformance: " << cr.violations.size() << " violation" << plural(cr.violations.size())
          << "\n";
      for (const auto& viol : cr.violations) out << "  " << viol << "\n";
      return 4;
    }
  }
  return 0;
}

int run_check(const CheckOptions& o, std::ostream& out, std::ostream& err) {
  FlowTableDoc doc;
  if (int rc = load_table(o.table_path, o.color, err, doc)) return rc;
  if (!doc.encoding) {
    err << tag(o.color) << o.table_path << ": no encoding directive, cannot derive the care set\n";
    return 2;
  }
  ExcitationMatrix m;
  try {
    m = excitation_matrix(doc.table, *doc.encoding);
  } catch (const std::invalid_argument& e) {
    err << tag(o.color) << o.table_path << ": " << e.what() << "\n";
    return 2;
  }

  auto load_equations = [&](const std::string& path, EquationDoc& eqn) -> int {
    try {
      eqn = parse_equations(read_file(path));
    } catch (const ParseError& e) {
      err << tag(o.color) << path << ": " << e.what() << "\n";
      return 1;
    } catch (const std::exception& e) {
      err << tag(o.color) << e.what() << "\n";
      return 1;
    }
    if (eqn.vars != m.variables) {
      err << tag(o.color) << path << ": variables (" << join(eqn.vars)
          << ") do not match the table's (" << join(m.variables) << ")\n";
      return 2;
    }
    return 0;
  };

  EquationDoc a;
  if (int rc = load_equations(o.eqn_a, a)) return rc;
  EquationDoc b;
  std::string b_label = "table";
  if (o.eqn_b) {
    if (int rc = load_equations(*o.eqn_b, b)) return rc;
    b_label = "B";
  } else {
    b = to_doc(synthesize(m));
  }

  auto find = [](const EquationDoc& d, const std::string& name) -> const SopFunction* {
    for (const auto& [n, fn] : d.entries)
      if (n == name) return &fn;
    return nullptr;
  };

  bool name_problem = false;
  for (const auto& [name, fn] : a.entries) {
    if (!m.column(name)) {
      err << tag(o.color) << "function " << name << " is not defined by " << o.table_path << "\n";
      name_problem = true;
    } else if (!find(b, name)) {
      err << tag(o.color) << "function " << name << " is missing from "
          << (o.eqn_b ? *o.eqn_b : "the synthesized reference") << "\n";
      name_problem = true;
    }
  }
  if (name_problem) return 2;

  bool all_equal = true;
  for (const auto& [name, fn] : a.entries) {
    const SopFunction* ref = find(b, name);
    const CareFunction* care = m.column(name);
    auto cexs = counterexamples(fn, *ref, *care);
    if (cexs.empty()) {
      out << name << ": equal\n";
      continue;
    }
    all_equal = false;
    out << name << ": not equal\n";
    for (const auto& cex : cexs)
      out << "  " << render_assignment(m.variables, cex) << " : A=" << evaluate(fn, cex) << " "
          << b_label << "=" << evaluate(*ref, cex) << "\n";
  }
  return all_equal ? 0 : 5;
}

}  // namespace aswb
