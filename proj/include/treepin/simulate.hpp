#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treepin/model.hpp"
#include "treepin/scheme.hpp"

namespace treepin {

/// 1 x D row of i.i.d. uniform F_{q^n} symbols; each symbol stands for n
/// realizations of one base coordinate.
FMatrix sample_block(std::uint64_t seed, std::size_t dim, const FieldPtr& field);

/// Seed of trial t, derived from the run seed by splitmix64 mixing.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

struct SimReport {
  std::size_t trials = 0;
  std::size_t decode_successes = 0;  // trials in which every node decoded X^n exactly
  std::size_t key_agreements = 0;    // trials in which every node's key equals X^n M_K
  bool alignment = false;
  std::size_t wiretap_recoveries = 0;  // trials where Z_w^n was rebuilt from messages alone
  std::size_t key_dim = 0;
  std::uint32_t q = 2;
  unsigned extension_degree = 1;
  // Wiretapper's residual uncertainty about X^n given (F, Z_w), in units of
  // n log2 q bits: D - rank([F | W]).
  std::size_t uncertainty_dim = 0;
  // Size of the consistent set counted by enumeration in the first trial;
  // absent when order^D exceeds the enumeration cap.
  std::optional<std::uint64_t> uncertainty_count;
  std::vector<std::string> trace;

  double decode_rate() const;
  double key_agreement_rate() const;
  double wiretap_recovery_rate() const;
  double uncertainty_bits() const;
};

/// Runs the scheme on `trials` sampled blocks. Every node decodes with a
/// generic linear solver; throws SimulationError if some node's system is not
/// uniquely solvable.
SimReport run_protocol(const CommScheme& scheme, const Instance& instance, std::uint64_t seed, std::size_t trials,
                       bool keep_trace = false);

}  // namespace treepin
