#include "treepin/commands.hpp"

#include <sstream>

#include "treepin/errors.hpp"
#include "treepin/linalg.hpp"

namespace treepin {

namespace {

std::string matrix_text(const FMatrix& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) out += ';';
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ' ';
      out += m.field().format(m(r, c));
    }
  }
  return out;
}

std::string node_list(const std::vector<int>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? "," : "") + std::to_string(ids[i]);
  return out;
}

CommScheme read_scheme_file(const std::string& path) { return load_scheme(read_text_file(path)); }

void check_scheme_matches(const CommScheme& scheme, const Instance& instance) {
  if (scheme.field->q() != instance.source.q()) throw ValidationError("scheme and instance use different q");
  if (scheme.transmit.rows() != instance.source.total_dim()) {
    throw ValidationError("scheme has " + std::to_string(scheme.transmit.rows()) + " rows, instance has D = " +
                          std::to_string(instance.source.total_dim()));
  }
}

}  // namespace

Report capacity_report(const CapacityReport& rep) {
  Report out;
  out.set("q", rep.q);
  out.set("total_dim", rep.total_dim);
  out.set("nw", rep.wiretap_dim);
  out.set("min_multiplicity", rep.min_multiplicity);
  out.set("irreducible", rep.irreducible);
  out.set("cs_bits", rep.cs_bits());
  out.set("cw_bits", rep.cw_bits());
  out.set("rl_bits", rep.rl_bits());
  out.set("rco_bits", rep.rco_bits());
  out.set("cs_dim", rep.cs_dim);
  out.set("cw_dim", rep.cw_dim);
  out.set("rl_dim", rep.rl_dim);
  out.set("rco_dim", rep.rco_dim);
  for (const auto& e : rep.edges) {
    const std::string p = "edge." + std::to_string(e.edge_id) + ".";
    out.set(p + "multiplicity", e.multiplicity);
    out.set(p + "mcf_dim", e.mcf_dim);
    out.set(p + "residual_dim", e.residual());
  }
  out.set("argmin_edges", node_list(rep.argmin_edges));
  return out;
}

Report reduction_report(const ReductionTrace& trace) {
  Report out;
  out.set("steps", trace.steps.size());
  out.set("original_total_dim", trace.original.source.total_dim());
  out.set("original_nw", trace.original.wiretapper.nw());
  out.set("reduced_total_dim", trace.reduced.source.total_dim());
  out.set("reduced_nw", trace.reduced.wiretapper.nw());
  out.set("cw_dim_before", cw_dim(trace.original));
  out.set("cw_dim_after", cw_dim(trace.reduced));
  out.set("rl_dim_before", rl_dim(trace.original));
  out.set("rl_dim_after", rl_dim(trace.reduced));
  out.set("irreducible", is_irreducible(trace.reduced));
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const auto& s = trace.steps[k];
    const std::string p = "step." + std::to_string(k) + ".";
    out.set(p + "edge", s.edge_id);
    out.set(p + "removed", s.removed);
    out.set(p + "new_multiplicity", s.new_multiplicity);
    out.set(p + "new_nw", s.new_wiretap.cols());
    out.set(p + "mcf_block", matrix_text(s.mcf_block));
    out.set(p + "completion", matrix_text(s.completion));
  }
  return out;
}

Report verification_report(const VerificationReport& rep) {
  Report out;
  out.set("q", rep.q);
  out.set("extension_degree", rep.extension_degree);
  out.set("total_dim", rep.total_dim);
  out.set("nw", rep.wiretap_dim);
  out.set("shape_ok", rep.shape_ok);
  out.set("message_cols", rep.message_cols);
  out.set("rank_f", rep.rank_f);
  out.set("non_interactive", rep.non_interactive);
  for (std::size_t i = 0; i < rep.omniscience.size(); ++i) {
    out.set("omniscience.node." + std::to_string(i), static_cast<bool>(rep.omniscience[i]));
  }
  out.set("omniscience_all", rep.omniscience_all());
  out.set("alignment", rep.alignment);
  out.set("leakage_dim", rep.leakage_dim);
  out.set("leakage_bits", rep.to_bits(rep.leakage_dim));
  out.set("rl_bits", rep.to_bits(rep.rl_dim));
  out.set("leakage_optimal", rep.leakage_dim == rep.rl_dim);
  out.set("key_dim", rep.key_dim);
  out.set("key_rate_bits", rep.to_bits(rep.key_dim));
  out.set("cw_bits", rep.to_bits(rep.cw_dim));
  out.set("key_rate_optimal", rep.key_dim == rep.cw_dim);
  out.set("key_secrecy", rep.key_secrecy);
  out.set("leakage_lower_bound", rep.leakage_lower_bound);
  out.set("leakage_upper_bound", rep.leakage_upper_bound);
  out.set("all_pass", rep.all_pass());
  return out;
}

Report simulation_report(const SimReport& rep) {
  Report out;
  out.set("trials", rep.trials);
  out.set("extension_degree", rep.extension_degree);
  out.set("decode_rate", rep.decode_rate());
  out.set("key_agreement_rate", rep.key_agreement_rate());
  out.set("key_dim", rep.key_dim);
  out.set("alignment", rep.alignment);
  out.set("wiretap_recovery_rate", rep.alignment ? rep.wiretap_recovery_rate() : 0.0);
  out.set("uncertainty_dim", rep.uncertainty_dim);
  out.set("uncertainty_bits", rep.uncertainty_bits());
  if (rep.uncertainty_count) {
    out.set("uncertainty_count", *rep.uncertainty_count);
  } else {
    out.set("uncertainty_count", "skipped");
  }
  return out;
}

Report instance_oracle_report(const InstanceOracleReport& rep) {
  auto opt = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string("nonuniform"); };
  Report out;
  out.set("rank_w", rep.rank_w);
  out.set("oracle_w_dim", opt(rep.oracle_w_dim));
  for (const auto& e : rep.edges) {
    const std::string p = "edge." + std::to_string(e.edge_id) + ".";
    out.set(p + "linear_mcf_dim", e.linear_mcf_dim);
    out.set(p + "oracle_mcf_dim", opt(e.oracle_mcf_dim));
    out.set(p + "functional_match", e.functional_match);
  }
  out.set("cw_dim", rep.cw_dim);
  out.set("oracle_cw_dim", opt(rep.oracle_cw_dim));
  out.set("rl_dim", rep.rl_dim);
  out.set("oracle_rl_dim", opt(rep.oracle_rl_dim));
  out.set("rco_dim", rep.rco_dim);
  out.set("oracle_rco_dim", opt(rep.oracle_rco_dim));
  out.set("instance_agree", rep.agree());
  return out;
}

void append_scheme_oracle_report(Report& out, const SchemeOracleReport& rep) {
  out.set("scheme.extension_degree", rep.extension_degree);
  out.set("scheme.leakage_dim", rep.rank_leakage_dim);
  out.set("scheme.oracle_leakage_dim",
          rep.oracle_leakage_dim ? std::to_string(*rep.oracle_leakage_dim) : std::string("nonuniform"));
  out.set("scheme.oracle_leakage_bits", rep.oracle_leakage_bits_per_realization);
  for (std::size_t i = 0; i < rep.oracle_omniscience.size(); ++i) {
    const std::string p = "scheme.omniscience.node." + std::to_string(i);
    out.set(p, static_cast<bool>(rep.rank_omniscience[i]));
    out.set(p + ".oracle", static_cast<bool>(rep.oracle_omniscience[i]));
  }
  out.set("scheme.alignment", rep.rank_alignment);
  out.set("scheme.oracle_alignment", rep.oracle_alignment);
  out.set("scheme_agree", rep.agree());
}

CommandResult cmd_gen(const GenOptions& opt) {
  if (opt.out.empty()) throw ValidationError("gen needs --out");
  const Instance inst = random_instance(opt.seed, opt.vertices, opt.max_mult, opt.q, opt.nw);
  const std::string text = save_instance(inst);
  CommandResult res;
  res.report.set("seed", opt.seed);
  res.report.set("vertices", inst.source.vertex_count());
  res.report.set("total_dim", inst.source.total_dim());
  res.report.set("nw", inst.wiretapper.nw());
  res.report.set("irreducible", is_irreducible(inst));
  write_text_file(opt.out, text);
  res.report.set("out", opt.out);
  return res;
}

CommandResult cmd_analyze(const std::string& in) {
  return {kExitOk, capacity_report(analyze(read_instance_file(in)))};
}

CommandResult cmd_reduce(const ReduceOptions& opt) {
  const auto trace = reduce_full(read_instance_file(opt.in));
  CommandResult res{kExitOk, reduction_report(trace)};
  if (!opt.out.empty()) {
    write_text_file(opt.out, save_instance(trace.reduced));
    res.report.set("out", opt.out);
  }
  if (!opt.trace.empty()) write_text_file(opt.trace, res.report.text());
  return res;
}

CommandResult cmd_synth(const SynthOptions& opt) {
  if (opt.out.empty()) throw ValidationError("synth needs --out");
  const Instance inst = read_instance_file(opt.in);
  CommScheme scheme;
  if (opt.method == "random") {
    scheme = synth_random(inst, opt.seed, opt.max_attempts);
  } else if (opt.method == "explicit-unit") {
    scheme = synth_explicit_unit(inst);
  } else {
    throw ValidationError("unknown method '" + opt.method + "' (expected random or explicit-unit)");
  }
  CommandResult res;
  res.report.set("method", scheme.method);
  res.report.set("extension_degree", scheme.extension_degree());
  res.report.set("root", scheme.root);
  res.report.set("s", scheme.s);
  res.report.set("message_cols", scheme.transmit.cols());
  const std::string text = save_scheme(scheme);
  write_text_file(opt.out, text);
  res.report.set("out", opt.out);
  return res;
}

CommandResult cmd_verify(const std::string& in, const std::string& scheme_path) {
  const Instance inst = read_instance_file(in);
  const CommScheme scheme = read_scheme_file(scheme_path);
  check_scheme_matches(scheme, inst);
  const auto rep = verify_scheme(scheme, inst);
  return {rep.all_pass() ? kExitOk : kExitCheckFailed, verification_report(rep)};
}

CommandResult cmd_simulate(const SimulateOptions& opt) {
  const Instance inst = read_instance_file(opt.in);
  const CommScheme scheme = read_scheme_file(opt.scheme);
  check_scheme_matches(scheme, inst);
  const auto rep = run_protocol(scheme, inst, opt.seed, opt.trials, !opt.trace.empty());
  if (!opt.trace.empty()) {
    std::string text;
    for (const auto& line : rep.trace) text += line + "\n";
    write_text_file(opt.trace, text);
  }
  const bool ok = rep.decode_successes == rep.trials && rep.key_agreements == rep.trials &&
                  (!rep.alignment || rep.wiretap_recoveries == rep.trials);
  return {ok ? kExitOk : kExitCheckFailed, simulation_report(rep)};
}

CommandResult cmd_oracle_check(const OracleOptions& opt) {
  const Instance inst = read_instance_file(opt.in);
  const auto irep = oracle_check_instance(inst, opt.budget);
  CommandResult res{kExitOk, instance_oracle_report(irep)};
  bool agree = irep.agree();
  if (!opt.scheme.empty()) {
    const CommScheme scheme = read_scheme_file(opt.scheme);
    check_scheme_matches(scheme, inst);
    const auto srep = oracle_check_scheme(scheme, inst, opt.budget);
    append_scheme_oracle_report(res.report, srep);
    agree = agree && srep.agree();
  }
  res.report.set("agree", agree);
  res.exit_code = agree ? kExitOk : kExitCheckFailed;
  return res;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const OracleBudgetError*>(&e)) return kExitOracleBudget;
  if (dynamic_cast<const SimulationError*>(&e)) return kExitCheckFailed;
  return kExitValidation;
}

}  // namespace treepin
