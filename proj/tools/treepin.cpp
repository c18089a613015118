// treepin: command-line front end for tree-PIN key agreement analysis.

#include <iostream>

#include <CLI11.hpp>

#include "treepin/commands.hpp"
#include "treepin/errors.hpp"
#include "treepin/model.hpp"

namespace {

int emit(const treepin::CommandResult& res, const std::string& json_path) {
  std::cout << res.report.text();
  if (!json_path.empty()) treepin::write_text_file(json_path, res.report.json());
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace treepin;
  CLI::App app{"Secret key agreement on tree-PIN sources with a linear wiretapper"};
  app.require_subcommand(1);
  std::string json_path;
  app.add_option("--json", json_path, "Also write the report as JSON to this path");

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded random instance");
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--vertices", gen.vertices)->check(CLI::Range(2, 64));
  gen_cmd->add_option("--max-mult", gen.max_mult)->check(CLI::Range(1, 16));
  gen_cmd->add_option("--q", gen.q);
  gen_cmd->add_option("--nw", gen.nw);
  gen_cmd->add_option("--out", gen.out)->required();

  std::string analyze_in;
  auto* analyze_cmd = app.add_subcommand("analyze", "Capacity and leakage rates of an instance");
  analyze_cmd->add_option("--in", analyze_in)->required();

  ReduceOptions red;
  auto* reduce_cmd = app.add_subcommand("reduce", "Remove wiretap common functions until irreducible");
  reduce_cmd->add_option("--in", red.in)->required();
  reduce_cmd->add_option("--out", red.out);
  reduce_cmd->add_option("--trace", red.trace, "Write the reduction trace report to this path");

  SynthOptions syn;
  auto* synth_cmd = app.add_subcommand("synth", "Synthesize a linear non-interactive scheme");
  synth_cmd->add_option("--in", syn.in)->required();
  synth_cmd->add_option("--method", syn.method)->check(CLI::IsMember({"random", "explicit-unit"}));
  synth_cmd->add_option("--seed", syn.seed);
  synth_cmd->add_option("--max-attempts", syn.max_attempts);
  synth_cmd->add_option("--out", syn.out)->required();

  std::string verify_in;
  std::string verify_scheme_path;
  auto* verify_cmd = app.add_subcommand("verify", "Check omniscience, alignment, leakage and key secrecy");
  verify_cmd->add_option("--in", verify_in)->required();
  verify_cmd->add_option("--scheme", verify_scheme_path)->required();

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run a scheme on sampled source blocks");
  sim_cmd->add_option("--in", sim.in)->required();
  sim_cmd->add_option("--scheme", sim.scheme)->required();
  sim_cmd->add_option("--seed", sim.seed);
  sim_cmd->add_option("--trials", sim.trials);
  sim_cmd->add_option("--trace", sim.trace, "Write one line per trial to this path");

  OracleOptions orc;
  auto* oracle_cmd = app.add_subcommand("oracle-check", "Compare rank formulas with exhaustive enumeration");
  oracle_cmd->add_option("--in", orc.in)->required();
  oracle_cmd->add_option("--scheme", orc.scheme);
  oracle_cmd->add_option("--budget", orc.budget, "Maximum number of enumerated base vectors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*gen_cmd) return emit(cmd_gen(gen), json_path);
    if (*analyze_cmd) return emit(cmd_analyze(analyze_in), json_path);
    if (*reduce_cmd) return emit(cmd_reduce(red), json_path);
    if (*synth_cmd) return emit(cmd_synth(syn), json_path);
    if (*verify_cmd) return emit(cmd_verify(verify_in, verify_scheme_path), json_path);
    if (*sim_cmd) return emit(cmd_simulate(sim), json_path);
    if (*oracle_cmd) return emit(cmd_oracle_check(orc), json_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitValidation;
}
