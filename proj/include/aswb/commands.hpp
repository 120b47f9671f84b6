#pragma once
// Command implementations behind the CLI front end. Each run_* function
// writes data to `out`, diagnostics to `err`, and returns the process exit
// code: 0 success, 1 parse or I/O error, 2 validation failure,
// 3 oscillation, 4 conformance violations, 5 inequivalence.

#include <iosfwd>
#include <optional>
#include <string>

#include "aswb/logic.hpp"

namespace aswb {

struct SynthOptions {
  std::string table_path;
  std::string out_dir = ".";
  Tick sop_delay = 2;
  Tick buf_delay = 1;
  bool color = false;
};

// "--mono NET=R,C[,k]" payload.
struct MonoSpec {
  std::string trigger;
  double r_ohms = 0.0;
  double c_farads = 0.0;
  double k = 1.1;
};

// Throws std::invalid_argument on malformed text.
MonoSpec parse_mono_spec(const std::string& text);

struct SimOptions {
  std::string netlist_path;
  std::string stimulus_path;
  std::optional<Tick> until;
  std::optional<std::string> vcd_path;
  bool ascii = false;
  bool plain = false;
  std::optional<std::string> mono;
  bool check_fm = false;
  std::optional<std::string> conform_table;
  bool color = false;
};

struct CheckOptions {
  std::string eqn_a;
  std::optional<std::string> eqn_b;  // omitted: compare against the table's own synthesis
  std::string table_path;
  bool color = false;
};

int run_synth(const SynthOptions& o, std::ostream& out, std::ostream& err);
int run_sim(const SimOptions& o, std::ostream& out, std::ostream& err);
int run_check(const CheckOptions& o, std::ostream& out, std::ostream& err);

}  // namespace aswb
