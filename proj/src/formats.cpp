#include "aswb/formats.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace aswb {

namespace {

std::string at(std::size_t line, std::size_t column, const std::string& message) {
  return "line " + std::to_string(line) + ", col " + std::to_string(column) + ": " + message;
}

}  // namespace

ParseError::ParseError(std::size_t l, std::size_t c, const std::string& msg)
    : std::runtime_error(at(l, c, msg)), line(l), column(c), message(msg) {}

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

// Lines of whitespace-separated tokens; "#" starts a comment. Punctuation
// ":", ";", "->", "/", "=" are split off so grammars can be written loosely.
struct Lines {
  std::vector<std::pair<std::size_t, std::vector<Token>>> rows;
};

bool is_punct_start(char c) {
  return c == ':' || c == ';' || c == '/' || c == '=' || c == '&' || c == '+';
}

Lines tokenize(const std::string& text) {
  Lines out;
  std::size_t line_no = 0;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    ++line_no;
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      char c = line[i];
      if (c == '#') break;
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      std::size_t start = i;
      if (is_punct_start(c)) {
        tokens.push_back({std::string(1, c), start + 1});
        ++i;
        continue;
      }
      if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
        tokens.push_back({"->", start + 1});
        i += 2;
        continue;
      }
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
             !is_punct_start(line[i]) &&
             !(line[i] == '-' && i + 1 < line.size() && line[i + 1] == '>'))
        ++i;
      tokens.push_back({line.substr(start, i - start), start + 1});
    }
    if (!tokens.empty()) out.rows.push_back({line_no, std::move(tokens)});
  }
  return out;
}

bool is_bits(const std::string& s, std::size_t width, bool allow_dc) {
  if (s.size() != width) return false;
  for (char c : s)
    if (c != '0' && c != '1' && !(allow_dc && c == '-')) return false;
  return true;
}

std::size_t bits_value(const std::string& s) {
  std::size_t v = 0;
  for (char c : s) v = (v << 1) | (c == '1' ? 1u : 0u);
  return v;
}

}  // namespace

FlowTableDoc parse_flow_table(const std::string& text) {
  Lines lines = tokenize(text);
  FlowTableDoc doc;
  FlowTable& t = doc.table;

  // First pass: declarations and state names, so rows can reference states
  // declared after them.
  std::vector<std::pair<std::size_t, std::vector<Token>>> row_lines;
  std::vector<std::pair<std::size_t, std::vector<Token>>> encoding_lines;
  for (auto& [line_no, tokens] : lines.rows) {
    const std::string& head = tokens[0].text;
    if (head == "inputs" || head == "outputs") {
      if (tokens.size() < 2) throw ParseError(line_no, tokens[0].column, "empty " + head + " list");
      auto& dst = head == "inputs" ? t.inputs : t.outputs;
      if (!dst.empty()) throw ParseError(line_no, tokens[0].column, "duplicate " + head + " line");
      for (std::size_t i = 1; i < tokens.size(); ++i) dst.push_back(tokens[i].text);
    } else if (head == "encoding") {
      encoding_lines.push_back({line_no, tokens});
    } else if (head == "row") {
      if (tokens.size() < 2) throw ParseError(line_no, tokens[0].column, "row without a state name");
      t.states.push_back(tokens[1].text);
      row_lines.push_back({line_no, tokens});
    } else {
      throw ParseError(line_no, tokens[0].column, "unknown directive " + head);
    }
  }
  if (t.inputs.empty()) throw ParseError(1, 1, "missing inputs line");
  if (t.outputs.empty()) throw ParseError(1, 1, "missing outputs line");
  if (row_lines.empty()) throw ParseError(1, 1, "no rows");
  {
    std::set<std::string> seen;
    for (std::size_t r = 0; r < row_lines.size(); ++r)
      if (!seen.insert(t.states[r]).second)
        throw ParseError(row_lines[r].first, row_lines[r].second[1].column,
                         "duplicate row for state " + t.states[r]);
  }

  std::size_t k = t.inputs.size();
  std::size_t combos = t.input_combos();
  t.cells.assign(t.states.size(), std::vector<FlowCell>(combos));

  for (std::size_t r = 0; r < row_lines.size(); ++r) {
    auto& [line_no, tokens] = row_lines[r];
    std::size_t i = 2;
    if (i >= tokens.size() || tokens[i].text != ":")
      throw ParseError(line_no, i < tokens.size() ? tokens[i].column : 1, "expected ':'");
    ++i;
    std::vector<bool> filled(combos, false);
    std::vector<std::optional<int>> empty_outputs(t.outputs.size());
    while (i < tokens.size()) {
      if (!is_bits(tokens[i].text, k, false))
        throw ParseError(line_no, tokens[i].column,
                         "expected an input combination of width " + std::to_string(k));
      std::size_t combo = bits_value(tokens[i].text);
      if (filled[combo])
        throw ParseError(line_no, tokens[i].column, "combination listed twice");
      filled[combo] = true;
      ++i;
      if (i >= tokens.size() || tokens[i].text != "->")
        throw ParseError(line_no, i < tokens.size() ? tokens[i].column : 1, "expected '->'");
      ++i;
      if (i >= tokens.size())
        throw ParseError(line_no, tokens[i - 1].column, "missing next state");
      FlowCell cell;
      cell.outputs = empty_outputs;
      if (tokens[i].text != "-") {
        if (!std::count(t.states.begin(), t.states.end(), tokens[i].text))
          throw ParseError(line_no, tokens[i].column, "unknown state " + tokens[i].text);
        cell.next = tokens[i].text;
      }
      ++i;
      if (i < tokens.size() && tokens[i].text == "/") {
        ++i;
        if (i >= tokens.size() || !is_bits(tokens[i].text, t.outputs.size(), true))
          throw ParseError(line_no, i < tokens.size() ? tokens[i].column : 1,
                           "expected " + std::to_string(t.outputs.size()) + " output bits");
        for (std::size_t j = 0; j < t.outputs.size(); ++j)
          if (tokens[i].text[j] != '-') cell.outputs[j] = tokens[i].text[j] - '0';
        ++i;
      }
      t.cells[r][combo] = std::move(cell);
      if (i < tokens.size()) {
        if (tokens[i].text != ";")
          throw ParseError(line_no, tokens[i].column, "expected ';'");
        ++i;
      }
    }
    for (std::size_t c = 0; c < combos; ++c)
      if (!filled[c])
        throw ParseError(line_no, tokens[0].column,
                         "missing combination " + combo_bits(c, k) + " for state " + t.states[r]);
  }

  if (!encoding_lines.empty()) {
    StateEncoding enc;
    for (auto& [line_no, tokens] : encoding_lines) {
      for (std::size_t i = 1; i < tokens.size();) {
        const std::string& name = tokens[i].text;
        if (!std::count(t.states.begin(), t.states.end(), name))
          throw ParseError(line_no, tokens[i].column, "unknown state " + name);
        if (i + 2 >= tokens.size() || tokens[i + 1].text != "=")
          throw ParseError(line_no, tokens[i].column, "expected <state>=<bits>");
        const std::string& bits = tokens[i + 2].text;
        if (!is_bits(bits, bits.size(), false) || bits.empty())
          throw ParseError(line_no, tokens[i + 2].column, "bad encoding bits " + bits);
        std::vector<int> vec;
        for (char c : bits) vec.push_back(c - '0');
        if (!enc.bits.emplace(name, std::move(vec)).second)
          throw ParseError(line_no, tokens[i].column, "state " + name + " encoded twice");
        i += 3;
      }
    }
    doc.encoding = std::move(enc);
  }
  return doc;
}

std::string serialize_flow_table(const FlowTableDoc& doc) {
  const FlowTable& t = doc.table;
  std::ostringstream out;
  out << "inputs";
  for (const std::string& i : t.inputs) out << " " << i;
  out << "\noutputs";
  for (const std::string& o : t.outputs) out << " " << o;
  out << "\n";
  if (doc.encoding) {
    out << "encoding";
    for (const std::string& s : t.states) {
      out << " " << s << "=";
      for (int b : doc.encoding->bits.at(s)) out << b;
    }
    out << "\n";
  }
  for (std::size_t r = 0; r < t.states.size(); ++r) {
    out << "row " << t.states[r] << " :";
    for (std::size_t c = 0; c < t.input_combos(); ++c) {
      const FlowCell& cell = t.cells[r][c];
      out << (c ? " ; " : " ") << combo_bits(c, t.inputs.size()) << " -> "
          << (cell.next ? *cell.next : "-");
      bool any = std::any_of(cell.outputs.begin(), cell.outputs.end(),
                             [](const std::optional<int>& b) { return b.has_value(); });
      if (any) {
        out << " / ";
        for (const std::optional<int>& b : cell.outputs) out << (b ? char('0' + *b) : '-');
      }
    }
    out << "\n";
  }
  return out.str();
}

Stimulus parse_stimulus(const std::string& text) {
  Lines lines = tokenize(text);
  Stimulus s;
  bool have_horizon = false;
  for (auto& [line_no, tokens] : lines.rows) {
    const std::string& head = tokens[0].text;
    if (head == "net") {
      if (tokens.size() != 4 || tokens[2].text != "init")
        throw ParseError(line_no, tokens[0].column, "expected: net <name> init <level>");
      StimulusNet sn;
      sn.initial = level_from_char(tokens[3].text.size() == 1 ? tokens[3].text[0] : '?');
      if (!s.nets.emplace(tokens[1].text, std::move(sn)).second)
        throw ParseError(line_no, tokens[1].column, "net " + tokens[1].text + " declared twice");
    } else if (head == "at") {
      if (tokens.size() != 4)
        throw ParseError(line_no, tokens[0].column, "expected: at <tick> <net> <level>");
      auto it = s.nets.find(tokens[2].text);
      if (it == s.nets.end())
        throw ParseError(line_no, tokens[2].column, "undeclared net " + tokens[2].text);
      Tick tick = 0;
      try {
        tick = std::stoull(tokens[1].text);
      } catch (...) {
        throw ParseError(line_no, tokens[1].column, "bad tick " + tokens[1].text);
      }
      LogicLevel lvl = level_from_char(tokens[3].text.size() == 1 ? tokens[3].text[0] : '?');
      if (!it->second.changes.empty() && it->second.changes.back().tick >= tick)
        throw ParseError(line_no, tokens[1].column, "ticks must be strictly increasing");
      it->second.changes.push_back({tick, lvl});
    } else if (head == "horizon") {
      if (tokens.size() != 2)
        throw ParseError(line_no, tokens[0].column, "expected: horizon <tick>");
      try {
        s.horizon = std::stoull(tokens[1].text);
      } catch (...) {
        throw ParseError(line_no, tokens[1].column, "bad tick " + tokens[1].text);
      }
      have_horizon = true;
    } else {
      throw ParseError(line_no, tokens[0].column, "unknown directive " + head);
    }
  }
  if (!have_horizon) throw ParseError(1, 1, "missing horizon line");
  for (const auto& [net, sn] : s.nets)
    if (!sn.changes.empty() && sn.changes.back().tick >= s.horizon)
      throw ParseError(1, 1, "net " + net + " changes at or past the horizon");
  return s;
}

std::string serialize_stimulus(const Stimulus& s) {
  std::ostringstream out;
  for (const auto& [net, sn] : s.nets)
    out << "net " << net << " init " << level_char(sn.initial) << "\n";
  std::vector<std::pair<Tick, std::string>> rows;
  for (const auto& [net, sn] : s.nets)
    for (const Change& c : sn.changes)
      rows.push_back({c.tick, "at " + std::to_string(c.tick) + " " + net + " " +
                                  level_char(c.level)});
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [tick, row] : rows) out << row << "\n";
  out << "horizon " << s.horizon << "\n";
  return out.str();
}

namespace {

// One "name = expr" line into terms. The variable universe comes from the
// vars line so every function in the file shares one order.
SopFunction parse_expression(const std::vector<Token>& tokens, std::size_t from,
                             std::size_t line_no, const std::vector<std::string>& vars) {
  SopFunction fn;
  fn.vars = vars;
  std::size_t n = vars.size();
  auto var_bit = [&](const std::string& name) -> std::optional<std::uint32_t> {
    for (std::size_t i = 0; i < n; ++i)
      if (vars[i] == name) return std::uint32_t{1} << (n - 1 - i);
    return std::nullopt;
  };

  if (from + 1 == tokens.size() && (tokens[from].text == "0" || tokens[from].text == "1")) {
    if (tokens[from].text == "1") fn.terms.push_back({0, 0});
    return fn;
  }

  SopTerm term;
  bool expect_literal = true;
  auto flush = [&](std::size_t col) {
    if (expect_literal) throw ParseError(line_no, col, "dangling operator");
    fn.terms.push_back(term);
    term = {};
  };
  for (std::size_t i = from; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i].text;
    if (tok == "+") {
      flush(tokens[i].column);
      expect_literal = true;
    } else if (tok == "&") {
      if (expect_literal) throw ParseError(line_no, tokens[i].column, "dangling '&'");
      expect_literal = true;
    } else {
      if (!expect_literal)
        throw ParseError(line_no, tokens[i].column, "missing operator before " + tok);
      bool neg = false;
      std::string name = tok;
      while (!name.empty() && (name[0] == '!' || name.rfind("\xc2\xac", 0) == 0)) {
        neg = !neg;
        name = name[0] == '!' ? name.substr(1) : name.substr(2);
      }
      if (name.empty()) throw ParseError(line_no, tokens[i].column, "negation without a variable");
      auto bit = var_bit(name);
      if (!bit) throw ParseError(line_no, tokens[i].column, "unknown variable " + name);
      if (term.mask & *bit)
        throw ParseError(line_no, tokens[i].column, "variable " + name + " repeated in a term");
      term.mask |= *bit;
      if (!neg) term.value |= *bit;
      expect_literal = false;
    }
  }
  flush(tokens.empty() ? 1 : tokens.back().column);
  return fn;
}

}  // namespace

EquationDoc parse_equations(const std::string& text) {
  Lines lines = tokenize(text);
  EquationDoc doc;
  std::set<std::string> names;
  for (auto& [line_no, tokens] : lines.rows) {
    if (tokens[0].text == "vars") {
      if (!doc.vars.empty()) throw ParseError(line_no, tokens[0].column, "duplicate vars line");
      if (tokens.size() < 2) throw ParseError(line_no, tokens[0].column, "empty vars line");
      for (std::size_t i = 1; i < tokens.size(); ++i) doc.vars.push_back(tokens[i].text);
      continue;
    }
    if (doc.vars.empty())
      throw ParseError(line_no, tokens[0].column, "vars line must come first");
    if (tokens.size() < 3 || tokens[1].text != "=")
      throw ParseError(line_no, tokens[0].column, "expected: <name> = <expression>");
    if (!names.insert(tokens[0].text).second)
      throw ParseError(line_no, tokens[0].column, "function " + tokens[0].text + " defined twice");
    doc.entries.push_back(
        {tokens[0].text, parse_expression(tokens, 2, line_no, doc.vars)});
  }
  if (doc.vars.empty()) throw ParseError(1, 1, "missing vars line");
  return doc;
}

std::string render_equations(const EquationDoc& doc) {
  std::ostringstream out;
  out << "vars";
  for (const std::string& v : doc.vars) out << " " << v;
  out << "\n";
  for (const auto& [name, fn] : doc.entries) out << name << " = " << render_function(fn) << "\n";
  return out.str();
}

EquationDoc to_doc(const EquationSet& eqs) {
  EquationDoc doc;
  doc.vars = eqs.vars;
  for (const NamedFunction& nf : eqs.excitations) doc.entries.push_back({nf.name, nf.fn});
  for (const NamedFunction& nf : eqs.outputs) doc.entries.push_back({nf.name, nf.fn});
  return doc;
}

// --- netlist JSON --------------------------------------------------------

std::string netlist_to_json(const Netlist& n) {
  nlohmann::ordered_json doc;
  doc["format"] = "aswb-netlist";
  doc["inputs"] = n.inputs;
  doc["state_nets"] = n.state_nets;
  doc["outputs"] = n.outputs;
  doc["components"] = nlohmann::ordered_json::array();
  for (const Component& c : n.components) {
    nlohmann::ordered_json jc;
    jc["id"] = c.id;
    jc["kind"] = kind_name(c.kind);
    jc["inputs"] = c.inputs;
    jc["output"] = c.output;
    jc["delay"] = c.delay;
    if (c.fn) {
      jc["function"] = {{"vars", c.fn->vars}, {"expr", render_function(*c.fn)}};
    }
    if (c.level) jc["level"] = std::string(1, level_char(*c.level));
    if (c.mono) {
      jc["monostable"] = {{"r_ohms", c.mono->r_ohms},
                          {"c_farads", c.mono->c_farads},
                          {"k", c.mono->k},
                          {"retriggerable", c.mono->retriggerable},
                          {"trigger", c.mono->trigger == TriggerEdge::Rising ? "rising" : "falling"}};
    }
    doc["components"].push_back(std::move(jc));
  }
  return doc.dump(2) + "\n";
}

Netlist netlist_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(1, 1, std::string("bad JSON: ") + e.what());
  }
  try {
    Netlist n;
    n.inputs = doc.value("inputs", std::vector<std::string>{});
    n.state_nets = doc.value("state_nets", std::vector<std::string>{});
    n.outputs = doc.value("outputs", std::vector<std::string>{});
    for (const auto& jc : doc.at("components")) {
      Component c;
      c.id = jc.at("id").get<int>();
      auto kind = kind_from_name(jc.at("kind").get<std::string>());
      if (!kind) throw ParseError(1, 1, "unknown component kind " + jc.at("kind").get<std::string>());
      c.kind = *kind;
      c.inputs = jc.value("inputs", std::vector<std::string>{});
      c.output = jc.at("output").get<std::string>();
      c.delay = jc.value("delay", Tick{1});
      if (jc.contains("function")) {
        std::vector<std::string> vars = jc.at("function").at("vars").get<std::vector<std::string>>();
        std::string expr = jc.at("function").at("expr").get<std::string>();
        std::string file = "vars";
        for (const std::string& v : vars) file += " " + v;
        file += "\nf = " + expr + "\n";
        c.fn = parse_equations(file).entries.at(0).second;
      }
      if (jc.contains("level")) {
        std::string lvl = jc.at("level").get<std::string>();
        c.level = level_from_char(lvl.size() == 1 ? lvl[0] : '?');
      }
      if (jc.contains("monostable")) {
        const auto& jm = jc.at("monostable");
        MonostableParams p;
        p.r_ohms = jm.at("r_ohms").get<double>();
        p.c_farads = jm.at("c_farads").get<double>();
        p.k = jm.value("k", 1.1);
        p.retriggerable = jm.value("retriggerable", false);
        p.trigger = jm.value("trigger", std::string("rising")) == "falling" ? TriggerEdge::Falling
                                                                            : TriggerEdge::Rising;
        c.mono = p;
      }
      n.components.push_back(std::move(c));
    }
    return n;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(1, 1, std::string("bad netlist document: ") + e.what());
  }
}

// --- VCD ------------------------------------------------------------------

namespace {

std::string vcd_id(std::size_t i) {
  std::string id;
  do {
    id += static_cast<char>(33 + i % 94);
    i /= 94;
  } while (i);
  return id;
}

}  // namespace

std::string write_vcd(const TraceSet& trace, const std::string& timescale) {
  std::ostringstream out;
  out << "$timescale " << timescale << " $end\n";
  std::vector<const Waveform*> waves;
  for (const auto& [net, wave] : trace.waves) waves.push_back(&wave);
  for (std::size_t i = 0; i < waves.size(); ++i)
    out << "$var wire 1 " << vcd_id(i) << " " << waves[i]->net << " $end\n";
  out << "$enddefinitions $end\n";
  out << "$dumpvars\n";
  for (std::size_t i = 0; i < waves.size(); ++i)
    out << level_char(waves[i]->initial) << vcd_id(i) << "\n";
  out << "$end\n";

  std::map<Tick, std::vector<std::pair<std::size_t, LogicLevel>>> by_tick;
  for (std::size_t i = 0; i < waves.size(); ++i)
    for (const Change& c : waves[i]->changes) by_tick[c.tick].push_back({i, c.level});
  Tick last = 0;
  bool any = false;
  for (const auto& [tick, changes] : by_tick) {
    out << "#" << tick << "\n";
    for (const auto& [i, level] : changes) out << level_char(level) << vcd_id(i) << "\n";
    last = tick;
    any = true;
  }
  if (!any || last != trace.horizon) out << "#" << trace.horizon << "\n";
  return out.str();
}

TraceSet read_vcd(const std::string& text) {
  TraceSet trace;
  std::map<std::string, std::string> id_to_net;
  std::istringstream stream(text);
  std::string line;
  std::size_t line_no = 0;
  bool in_dumpvars = false;
  Tick now = 0;
  bool seen_tick = false;
  std::map<std::string, Waveform*> by_id;
  while (std::getline(stream, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "$timescale" || word == "$enddefinitions" || word == "$end" ||
        word == "$scope" || word == "$upscope")
      continue;
    if (word == "$var") {
      std::string type, width, id, name;
      ls >> type >> width >> id >> name;
      if (name.empty()) throw ParseError(line_no, 1, "bad $var line");
      id_to_net[id] = name;
      Waveform& w = trace.waves[name];
      w.net = name;
      by_id[id] = &w;
      continue;
    }
    if (word == "$dumpvars") {
      in_dumpvars = true;
      continue;
    }
    if (word[0] == '#') {
      in_dumpvars = false;
      now = std::stoull(word.substr(1));
      trace.horizon = now;
      seen_tick = true;
      continue;
    }
    if (word[0] == '0' || word[0] == '1' || word[0] == 'x') {
      LogicLevel lvl = level_from_char(word[0]);
      std::string id = word.substr(1);
      auto it = by_id.find(id);
      if (it == by_id.end()) throw ParseError(line_no, 1, "unknown VCD id " + id);
      if (in_dumpvars && !seen_tick)
        it->second->initial = lvl;
      else
        it->second->changes.push_back({now, lvl});
      continue;
    }
    throw ParseError(line_no, 1, "unexpected VCD line: " + line);
  }
  for (auto& [net, wave] : trace.waves) trace.event_counts[net] = wave.changes.size();
  return trace;
}

double parse_timescale(const std::string& text) {
  static const std::map<std::string, double> units = {{"s", 1.0},   {"ms", 1e-3}, {"us", 1e-6},
                                                      {"ns", 1e-9}, {"ps", 1e-12}, {"fs", 1e-15}};
  std::size_t i = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == 0) throw std::invalid_argument("bad timescale " + text);
  long long mag = std::stoll(text.substr(0, i));
  if (mag != 1 && mag != 10 && mag != 100)
    throw std::invalid_argument("timescale magnitude must be 1, 10 or 100");
  auto it = units.find(text.substr(i));
  if (it == units.end()) throw std::invalid_argument("bad timescale unit in " + text);
  return static_cast<double>(mag) * it->second;
}

// --- ASCII diagram ---------------------------------------------------------

std::string render_ascii(const TraceSet& trace, std::size_t width, bool unicode) {
  if (width == 0) width = 1;
  Tick step = (trace.horizon + width - 1) / width;
  if (step == 0) step = 1;
  std::size_t cols = static_cast<std::size_t>((trace.horizon + step - 1) / step);

  std::size_t name_width = 0;
  for (const auto& [net, wave] : trace.waves) name_width = std::max(name_width, net.size());

  const char* high = unicode ? "\xe2\x80\xbe" : "-";
  std::ostringstream out;
  for (const auto& [net, wave] : trace.waves) {
    out << std::string(name_width - net.size(), ' ') << net << " ";
    for (std::size_t c = 0; c < cols; ++c) {
      Tick lo = step * c;
      Tick hi = std::min<Tick>(lo + step, trace.horizon);
      bool changed = std::any_of(wave.changes.begin(), wave.changes.end(), [&](const Change& ch) {
        return ch.tick > lo && ch.tick < hi;
      });
      if (c > 0) {
        // A change on the column boundary belongs to the glyph switch itself.
        changed = changed || std::any_of(wave.changes.begin(), wave.changes.end(),
                                         [&](const Change& ch) { return ch.tick == lo; });
      }
      LogicLevel lvl = value_at(wave, lo);
      if (changed)
        out << "|";
      else if (lvl == LogicLevel::L1)
        out << high;
      else if (lvl == LogicLevel::L0)
        out << "_";
      else
        out << "x";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace aswb
