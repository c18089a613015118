#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "treepin/capacity.hpp"
#include "treepin/oracle.hpp"
#include "treepin/reduce.hpp"
#include "treepin/report.hpp"
#include "treepin/simulate.hpp"
#include "treepin/verify.hpp"

namespace treepin {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitCheckFailed = 2,
  kExitOracleBudget = 3,
};

struct CommandResult {
  int exit_code = kExitOk;
  Report report;
};

struct GenOptions {
  std::uint64_t seed = 1;
  int vertices = 4;
  std::size_t max_mult = 2;
  std::uint32_t q = 2;
  std::size_t nw = 1;
  std::string out;
};

struct ReduceOptions {
  std::string in;
  std::string out;
  std::string trace;  // optional path for the step-by-step trace report
};

struct SynthOptions {
  std::string in;
  std::string method = "random";
  std::uint64_t seed = 1;
  std::size_t max_attempts = 64;
  std::string out;
};

struct SimulateOptions {
  std::string in;
  std::string scheme;
  std::uint64_t seed = 1;
  std::size_t trials = 32;
  std::string trace;  // optional path for per-trial lines
};

struct OracleOptions {
  std::string in;
  std::string scheme;  // optional
  std::uint64_t budget = kOracleBudget;
};

Report capacity_report(const CapacityReport& rep);
Report reduction_report(const ReductionTrace& trace);
Report verification_report(const VerificationReport& rep);
Report simulation_report(const SimReport& rep);
Report instance_oracle_report(const InstanceOracleReport& rep);
void append_scheme_oracle_report(Report& out, const SchemeOracleReport& rep);

CommandResult cmd_gen(const GenOptions& opt);
CommandResult cmd_analyze(const std::string& in);
CommandResult cmd_reduce(const ReduceOptions& opt);
CommandResult cmd_synth(const SynthOptions& opt);
CommandResult cmd_verify(const std::string& in, const std::string& scheme);
CommandResult cmd_simulate(const SimulateOptions& opt);
CommandResult cmd_oracle_check(const OracleOptions& opt);

/// Maps library exceptions to exit codes: budget 3, simulation or
/// verification inconsistencies 2, everything else 1.
int exit_code_for(const std::exception& e);

}  // namespace treepin
