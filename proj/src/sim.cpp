#include "aswb/sim.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace aswb {

const Waveform& TraceSet::wave(const std::string& net) const {
  auto it = waves.find(net);
  if (it == waves.end()) throw std::invalid_argument("no trace for net " + net);
  return it->second;
}

OscillationError::OscillationError(Tick t, std::size_t b)
    : std::runtime_error("oscillation at tick " + std::to_string(t) + ": event budget " +
                         std::to_string(b) + " exhausted"),
      tick(t),
      budget(b) {}

namespace {

struct QueuedEvent {
  Tick tick;
  std::uint64_t seq;
  int net;
  LogicLevel level;
  bool stimulus;
};

struct LaterEvent {
  bool operator()(const QueuedEvent& a, const QueuedEvent& b) const {
    return a.tick != b.tick ? a.tick > b.tick : a.seq > b.seq;
  }
};

struct MonoRuntime {
  enum class Phase { Idle, WaitRise, High } phase = Phase::Idle;
  Tick width = 0;
  Tick fall_at = 0;
};

class Engine {
 public:
  Engine(const Netlist& nl, const Stimulus& stim, const SimConfig& cfg)
      : nl_(nl), stim_(stim), cfg_(cfg) {
    NetlistValidation v = validate_netlist(nl);
    if (!v.ok()) throw std::invalid_argument("invalid netlist: " + v.problems.front());
    check_stimulus();
    index_nets();
    index_components();
  }

  SimResult run() {
    settle();
    main_phase();
    return finish();
  }

 private:
  struct Pending {
    bool valid = false;
    std::uint64_t seq = 0;
    LogicLevel level = LogicLevel::LX;
    Tick tick = 0;
  };

  const Netlist& nl_;
  const Stimulus& stim_;
  const SimConfig& cfg_;

  std::vector<std::string> net_names_;
  std::map<std::string, int> net_id_;
  std::vector<LogicLevel> level_;
  std::vector<Pending> pending_;
  std::vector<const Component*> comps_;          // ascending id
  std::vector<std::vector<int>> fanout_;         // net -> component positions
  std::vector<int> driver_comp_;                 // net -> component position or -1
  std::vector<std::vector<int>> sop_var_nets_;   // per component, fn.vars resolved
  std::vector<MonoRuntime> mono_;
  std::priority_queue<QueuedEvent, std::vector<QueuedEvent>, LaterEvent> queue_;
  std::uint64_t seq_ = 0;
  std::size_t since_stimulus_ = 0;
  bool settling_ = false;

  std::vector<Waveform> waves_;
  SimResult result_;

  void check_stimulus() {
    std::vector<std::string> required = nl_.stimulus_nets();
    std::set<std::string> given;
    for (const auto& [net, sn] : stim_.nets) {
      given.insert(net);
      Tick prev = 0;
      bool first = true;
      for (const Change& c : sn.changes) {
        if (c.level == LogicLevel::LX)
          throw std::invalid_argument("stimulus drives " + net + " to x");
        if (!first && c.tick <= prev)
          throw std::invalid_argument("stimulus for " + net + ": ticks not strictly increasing");
        if (c.tick >= stim_.horizon)
          throw std::invalid_argument("stimulus for " + net + " changes at or past the horizon");
        prev = c.tick;
        first = false;
      }
      if (sn.initial == LogicLevel::LX)
        throw std::invalid_argument("stimulus for " + net + " has no defined initial level");
    }
    for (const std::string& net : required)
      if (!given.count(net))
        throw std::invalid_argument("stimulus misses input net " + net);
    for (const std::string& net : given)
      if (std::find(required.begin(), required.end(), net) == required.end())
        throw std::invalid_argument("stimulus drives non-input net " + net);
  }

  void index_nets() {
    net_names_ = nl_.nets();
    for (std::size_t i = 0; i < net_names_.size(); ++i)
      net_id_[net_names_[i]] = static_cast<int>(i);
    level_.assign(net_names_.size(), LogicLevel::LX);
    pending_.assign(net_names_.size(), {});
    waves_.resize(net_names_.size());
    for (std::size_t i = 0; i < net_names_.size(); ++i) waves_[i].net = net_names_[i];
  }

  void index_components() {
    for (const Component& c : nl_.components) comps_.push_back(&c);
    std::sort(comps_.begin(), comps_.end(),
              [](const Component* a, const Component* b) { return a->id < b->id; });
    fanout_.assign(net_names_.size(), {});
    driver_comp_.assign(net_names_.size(), -1);
    mono_.resize(comps_.size());
    sop_var_nets_.resize(comps_.size());
    for (std::size_t ci = 0; ci < comps_.size(); ++ci) {
      const Component* c = comps_[ci];
      driver_comp_[net_id_.at(c->output)] = static_cast<int>(ci);
      std::set<int> seen;
      for (const std::string& in : c->inputs)
        if (seen.insert(net_id_.at(in)).second)
          fanout_[net_id_.at(in)].push_back(static_cast<int>(ci));
      if (c->kind == ComponentKind::Sop) {
        for (const std::string& v : c->fn->vars) {
          auto it = net_id_.find(v);
          sop_var_nets_[ci].push_back(it == net_id_.end() ? -1 : it->second);
        }
      }
      if (c->kind == ComponentKind::Monostable)
        mono_[ci].width = monostable_width(*c->mono, cfg_.timescale);
    }
  }

  LogicLevel eval_sop(std::size_t ci) {
    const SopFunction& fn = *comps_[ci]->fn;
    std::size_t n = fn.vars.size();
    LogicLevel acc = LogicLevel::L0;
    for (const SopTerm& t : fn.terms) {
      LogicLevel term = LogicLevel::L1;
      for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t bit = std::uint32_t{1} << (n - 1 - i);
        if (!(t.mask & bit)) continue;
        LogicLevel lit = level_[sop_var_nets_[ci][i]];
        if (!(t.value & bit)) lit = logic_not(lit);
        term = logic_and(term, lit);
      }
      acc = logic_or(acc, term);
    }
    return acc;
  }

  LogicLevel eval(std::size_t ci) {
    const Component* c = comps_[ci];
    auto in = [&](std::size_t i) { return level_[net_id_.at(c->inputs[i])]; };
    switch (c->kind) {
      case ComponentKind::Inv: return logic_not(in(0));
      case ComponentKind::Buf: return in(0);
      case ComponentKind::And:
      case ComponentKind::Nand: {
        LogicLevel acc = LogicLevel::L1;
        for (std::size_t i = 0; i < c->inputs.size(); ++i) acc = logic_and(acc, in(i));
        return c->kind == ComponentKind::Nand ? logic_not(acc) : acc;
      }
      case ComponentKind::Or:
      case ComponentKind::Nor: {
        LogicLevel acc = LogicLevel::L0;
        for (std::size_t i = 0; i < c->inputs.size(); ++i) acc = logic_or(acc, in(i));
        return c->kind == ComponentKind::Nor ? logic_not(acc) : acc;
      }
      case ComponentKind::Sop: return eval_sop(ci);
      case ComponentKind::Source: return *c->level;
      case ComponentKind::Monostable: return level_[net_id_.at(c->output)];
    }
    return LogicLevel::LX;
  }

  void schedule(int net, LogicLevel v, Tick due) {
    Pending& p = pending_[net];
    if (!p.valid && v == level_[net]) return;  // nothing to cancel, nothing to change
    p = {true, seq_++, v, due};
    queue_.push({due, p.seq, net, v, false});
  }

  void drive_component(std::size_t ci, Tick now) {
    const Component* c = comps_[ci];
    schedule(net_id_.at(c->output), eval(ci), now + c->delay);
  }

  void mono_trigger_edge(std::size_t ci, LogicLevel from, LogicLevel to, Tick now) {
    const Component* c = comps_[ci];
    MonoRuntime& m = mono_[ci];
    bool fired = c->mono->trigger == TriggerEdge::Rising
                     ? (from == LogicLevel::L0 && to == LogicLevel::L1)
                     : (from == LogicLevel::L1 && to == LogicLevel::L0);
    if (!fired) return;  // an LX edge is no trigger
    int out = net_id_.at(c->output);
    if (m.phase == MonoRuntime::Phase::Idle) {
      m.phase = MonoRuntime::Phase::WaitRise;
      m.fall_at = now + c->delay + m.width;
      schedule(out, LogicLevel::L1, now + c->delay);
    } else if (c->mono->retriggerable) {
      m.fall_at = now + c->delay + m.width;
      if (m.phase == MonoRuntime::Phase::High) schedule(out, LogicLevel::L0, m.fall_at);
    }
    // a non-retriggerable one-shot ignores edges during an active pulse
  }

  void mono_output_committed(std::size_t ci, LogicLevel v) {
    MonoRuntime& m = mono_[ci];
    if (v == LogicLevel::L1) {
      m.phase = MonoRuntime::Phase::High;
      schedule(net_id_.at(comps_[ci]->output), LogicLevel::L0, m.fall_at);
    } else {
      m.phase = MonoRuntime::Phase::Idle;
    }
  }

  void commit(int net, LogicLevel v, Tick now, bool record) {
    LogicLevel old = level_[net];
    if (v == old) return;
    level_[net] = v;
    if (record) waves_[net].changes.push_back({now, v});
    int drv = driver_comp_[net];
    if (drv >= 0 && comps_[drv]->kind == ComponentKind::Monostable && !settling_)
      mono_output_committed(drv, v);
    for (int ci : fanout_[net]) {
      if (comps_[ci]->kind == ComponentKind::Monostable) {
        if (!settling_) mono_trigger_edge(ci, old, v, now);
      } else {
        drive_component(ci, now);
      }
    }
  }

  void settle() {
    for (const auto& [net, sn] : stim_.nets) level_[net_id_.at(net)] = sn.initial;
    if (!cfg_.settle) {
      for (std::size_t i = 0; i < waves_.size(); ++i) waves_[i].initial = level_[i];
      return;
    }
    settling_ = true;
    // Every component evaluates once; a one-shot rests at L0 and ignores
    // whatever happens on its trigger before tick 0.
    for (std::size_t ci = 0; ci < comps_.size(); ++ci) {
      if (comps_[ci]->kind == ComponentKind::Monostable)
        schedule(net_id_.at(comps_[ci]->output), LogicLevel::L0, comps_[ci]->delay);
      else
        drive_component(ci, 0);
    }
    std::size_t used = 0;
    while (!queue_.empty()) {
      QueuedEvent ev = queue_.top();
      queue_.pop();
      Pending& p = pending_[ev.net];
      if (!p.valid || p.seq != ev.seq) continue;
      p.valid = false;
      if (++used > cfg_.event_budget) throw OscillationError(0, cfg_.event_budget);
      commit(ev.net, ev.level, ev.tick, false);
    }
    settling_ = false;
    seq_ = 0;
    for (std::size_t i = 0; i < waves_.size(); ++i) waves_[i].initial = level_[i];
    for (const std::string& net : nl_.state_nets)
      if (level_[net_id_.at(net)] == LogicLevel::LX)
        result_.warnings.push_back("unresolved initialization: net " + net +
                                   " is x after settle");
  }

  bool internal_event_pending() const {
    for (const Pending& p : pending_)
      if (p.valid) return true;
    return false;
  }

  void main_phase() {
    for (const auto& [net, sn] : stim_.nets)
      for (const Change& c : sn.changes)
        queue_.push({c.tick, seq_++, net_id_.at(net), c.level, true});

    since_stimulus_ = 0;
    while (!queue_.empty()) {
      QueuedEvent ev = queue_.top();
      if (ev.tick > stim_.horizon) break;
      queue_.pop();
      if (ev.stimulus) {
        if (internal_event_pending())
          result_.fm.violations.push_back({ev.tick, net_names_[ev.net]});
        since_stimulus_ = 0;
        commit(ev.net, ev.level, ev.tick, true);
      } else {
        Pending& p = pending_[ev.net];
        if (!p.valid || p.seq != ev.seq) continue;
        p.valid = false;
        if (++since_stimulus_ > cfg_.event_budget)
          throw OscillationError(ev.tick, cfg_.event_budget);
        commit(ev.net, ev.level, ev.tick, true);
      }
    }
  }

  SimResult finish() {
    result_.traces.horizon = stim_.horizon;
    for (std::size_t i = 0; i < waves_.size(); ++i) {
      result_.traces.event_counts[net_names_[i]] = waves_[i].changes.size();
      result_.traces.waves[net_names_[i]] = std::move(waves_[i]);
    }
    return std::move(result_);
  }
};

}  // namespace

SimResult run_simulation(const Netlist& n, const Stimulus& s, const SimConfig& cfg) {
  return Engine(n, s, cfg).run();
}

TraceSet simulate(const Netlist& n, const Stimulus& s, const SimConfig& cfg) {
  return run_simulation(n, s, cfg).traces;
}

FundamentalModeReport check_fundamental_mode(const Netlist& n, const Stimulus& s,
                                             const SimConfig& cfg) {
  return run_simulation(n, s, cfg).fm;
}

namespace {

std::string bound(const std::map<std::string, std::string>& binding, const std::string& var) {
  auto it = binding.find(var);
  return it == binding.end() ? var : it->second;
}

std::string assignment_text(const std::vector<std::string>& inputs,
                            const std::vector<LogicLevel>& levels) {
  std::string s;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (i) s += " ";
    s += inputs[i] + "=" + level_char(levels[i]);
  }
  return s;
}

}  // namespace

ConformanceReport conformance(const TraceSet& trace, const FlowTable& t, const StateEncoding& e,
                              const std::map<std::string, std::string>& binding) {
  TableValidation tv = validate(t);
  if (!tv.ok()) throw std::invalid_argument("invalid flow table: " + tv.problems.front());

  std::size_t w = e.width();
  std::vector<std::string> bit_vars = state_bit_names(w);
  std::vector<const Waveform*> state_waves, input_waves, output_waves;
  auto resolve = [&](const std::string& var) -> const Waveform* {
    const std::string net = bound(binding, var);
    auto it = trace.waves.find(net);
    if (it == trace.waves.end())
      throw std::invalid_argument("unbound variable " + var + " (no trace for net " + net + ")");
    return &it->second;
  };
  for (const std::string& v : bit_vars) state_waves.push_back(resolve(v));
  for (const std::string& v : t.inputs) input_waves.push_back(resolve(v));
  for (const std::string& v : t.outputs) output_waves.push_back(resolve(v));

  // Interval starts: tick 0 plus every change tick on any net.
  std::set<Tick> tick_set{0};
  std::set<Tick> input_ticks;
  for (const auto& [net, wave] : trace.waves)
    for (const Change& c : wave.changes)
      if (c.tick < trace.horizon) tick_set.insert(c.tick);
  for (const Waveform* iw : input_waves)
    for (const Change& c : iw->changes) input_ticks.insert(c.tick);
  std::vector<Tick> starts(tick_set.begin(), tick_set.end());

  ConformanceReport report;

  auto decode_at = [&](Tick tick) -> std::optional<std::string> {
    std::uint32_t enc = 0;
    for (const Waveform* sw : state_waves) {
      LogicLevel lvl = value_at(*sw, tick);
      if (lvl == LogicLevel::LX) return std::nullopt;
      enc = (enc << 1) | (lvl == LogicLevel::L1 ? 1u : 0u);
    }
    return e.state_of(enc);
  };
  auto combo_at = [&](Tick tick) -> std::optional<std::size_t> {
    std::size_t combo = 0;
    for (const Waveform* iw : input_waves) {
      LogicLevel lvl = value_at(*iw, tick);
      if (lvl == LogicLevel::LX) return std::nullopt;
      combo = (combo << 1) | (lvl == LogicLevel::L1 ? 1u : 0u);
    }
    return combo;
  };

  // Pass 1: decoded state runs.
  bool have_state = false;
  bool unknown_run = false;
  std::string current;
  for (Tick start : starts) {
    std::optional<std::string> decoded = decode_at(start);
    if (!decoded) {
      if (!unknown_run)
        report.violations.push_back("unknown state encoding at tick " + std::to_string(start));
      unknown_run = true;
      have_state = false;
      continue;
    }
    unknown_run = false;
    if (have_state && *decoded == current) continue;
    if (have_state) {
      // Transition current -> decoded at `start`, caused by the inputs in
      // force just before the state bits moved.
      Tick before = start == 0 ? 0 : start - 1;
      std::optional<std::size_t> combo = combo_at(before);
      if (!combo) {
        report.violations.push_back("inputs unknown before transition at tick " +
                                    std::to_string(start));
      } else {
        // The new state must lie on the settling path the table prescribes
        // from the old state under those inputs.
        bool on_path = false;
        std::set<std::string> visited;
        std::string at = current;
        while (visited.insert(at).second) {
          auto si = t.state_index(at);
          if (!si) break;
          const FlowCell& cell = t.cells[*si][*combo];
          if (!cell.next || *cell.next == at) break;
          at = *cell.next;
          if (at == *decoded) on_path = true;
        }
        if (!on_path)
          report.violations.push_back("wrong successor at tick " + std::to_string(start) + ": " +
                                      current + " -> " + *decoded + " under inputs " +
                                      combo_bits(*combo, t.inputs.size()));
      }
    }
    current = *decoded;
    have_state = true;
    report.states.push_back({start, current});
  }

  // Pass 2: quiescent samples. An interval is sampled when it ends at an
  // input change or at the horizon; intervals cut short by internal events
  // are still in flight.
  for (std::size_t i = 0; i < starts.size(); ++i) {
    Tick begin = starts[i];
    bool last = i + 1 == starts.size();
    Tick end = last ? trace.horizon : starts[i + 1];
    if (end <= begin) continue;
    if (!last && !input_ticks.count(end)) continue;

    std::optional<std::string> decoded = decode_at(begin);
    std::optional<std::size_t> combo = combo_at(begin);
    if (!decoded || !combo) continue;  // already reported in pass 1
    std::size_t si = *t.state_index(*decoded);
    const FlowCell& cell = t.cells[si][*combo];
    if (!cell.next) continue;  // the table says nothing about this corner
    if (*cell.next != *decoded) {
      report.violations.push_back("unstable at sampling: state " + *decoded + " under inputs " +
                                  combo_bits(*combo, t.inputs.size()) + " at tick " +
                                  std::to_string(begin));
      continue;
    }
    for (std::size_t j = 0; j < t.outputs.size(); ++j) {
      if (!cell.outputs[j]) continue;
      LogicLevel seen = value_at(*output_waves[j], begin);
      LogicLevel want = *cell.outputs[j] ? LogicLevel::L1 : LogicLevel::L0;
      if (seen != want) {
        std::vector<LogicLevel> lv{seen};
        report.violations.push_back("output mismatch at tick " + std::to_string(begin) + ": " +
                                    assignment_text({t.outputs[j]}, lv) + " but the table wants " +
                                    level_char(want) + " in state " + *decoded);
      }
    }
  }
  return report;
}

}  // namespace aswb
