#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <string>
#include <unistd.h>
#include <vector>

#include "aswb/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"workbench for fundamental-mode asynchronous sequential circuits"};
  app.require_subcommand(1);
  bool color = ::isatty(2) != 0 && std::getenv("NO_COLOR") == nullptr;

  aswb::SynthOptions synth;
  synth.color = color;
  auto* synth_cmd =
      app.add_subcommand("synth", "synthesize equations, a netlist and a race report from a flow table");
  synth_cmd->add_option("table", synth.table_path, "flow table file")->required();
  synth_cmd->add_option("-o,--out-dir", synth.out_dir, "directory for the generated files");
  synth_cmd->add_option("--sop-delay", synth.sop_delay, "excitation stage delay in ticks");
  synth_cmd->add_option("--buf-delay", synth.buf_delay, "output stage delay in ticks");

  aswb::SimOptions sim;
  sim.color = color;
  auto* sim_cmd = app.add_subcommand("sim", "simulate a netlist against a stimulus");
  sim_cmd->add_option("netlist", sim.netlist_path, "netlist JSON file")->required();
  sim_cmd->add_option("stimulus", sim.stimulus_path, "stimulus file")->required();
  sim_cmd->add_option("--until", sim.until, "override the horizon");
  sim_cmd->add_option("--vcd", sim.vcd_path, "write a VCD dump to this file");
  sim_cmd->add_flag("--ascii", sim.ascii, "print a timing diagram");
  sim_cmd->add_flag("--plain", sim.plain, "diagram without unicode glyphs");
  sim_cmd->add_option("--mono", sim.mono, "attach a one-shot: NET=R,C[,k]");
  sim_cmd->add_flag("--check-fm", sim.check_fm, "report inputs that changed while events were pending");
  sim_cmd->add_option("--conform", sim.conform_table, "check the trace against this flow table");

  aswb::CheckOptions check;
  check.color = color;
  std::vector<std::string> check_files;
  auto* check_cmd =
      app.add_subcommand("check", "compare equation files on a flow table's care set");
  check_cmd->add_option("files", check_files, "A.eqn [B.eqn] TABLE.ft")->expected(2, 3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (synth_cmd->parsed()) return aswb::run_synth(synth, std::cout, std::cerr);
  if (sim_cmd->parsed()) return aswb::run_sim(sim, std::cout, std::cerr);
  if (check_cmd->parsed()) {
    check.eqn_a = check_files.front();
    check.table_path = check_files.back();
    if (check_files.size() == 3) check.eqn_b = check_files[1];
    return aswb::run_check(check, std::cout, std::cerr);
  }
  return 1;
}
