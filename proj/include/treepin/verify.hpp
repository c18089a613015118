#pragma once

#include <cstddef>
#include <vector>

#include "treepin/model.hpp"
#include "treepin/scheme.hpp"

namespace treepin {

/// Node i recovers X^n from (F, Z_i) iff rank([F | H_i]) = D over F_{q^n},
/// where H_i selects every coordinate the node observes.
std::vector<bool> check_perfect_omniscience(const CommScheme& scheme, const TreePinSource& source);

/// True iff every column of the lifted W lies in col(F).
bool check_perfect_alignment(const CommScheme& scheme, const Wiretapper& wiretapper);

/// rank([F | W]) - n_w, i.e. H(F | Z_w) per realization in units of log2 q.
std::size_t leakage_dim(const CommScheme& scheme, const Wiretapper& wiretapper);
double leakage_bits_per_realization(const CommScheme& scheme, const TreePinSource& source,
                                    const Wiretapper& wiretapper);

/// True iff rank([F | W | M_K]) = rank([F | W]) + cols(M_K).
bool check_key_secrecy(const CommScheme& scheme, const KeyExtractor& key, const Wiretapper& wiretapper);

/// Every column j of F only involves coordinates seen by owners[j].
bool check_non_interactive(const CommScheme& scheme, const TreePinSource& source);

struct VerificationReport {
  std::uint32_t q = 2;
  unsigned extension_degree = 1;
  std::size_t total_dim = 0;
  std::size_t wiretap_dim = 0;
  std::size_t message_cols = 0;
  std::size_t rank_f = 0;
  bool shape_ok = false;
  bool non_interactive = false;
  std::vector<bool> omniscience;
  bool alignment = false;
  std::size_t leakage_dim = 0;
  std::size_t key_dim = 0;
  bool key_secrecy = false;
  // Reference values from the capacity formulas.
  std::size_t rl_dim = 0;
  std::size_t cw_dim = 0;
  // (D - n_w) - cw <= leakage <= rank F, meaningful when omniscience holds.
  bool leakage_lower_bound = false;
  bool leakage_upper_bound = false;

  bool omniscience_all() const;
  bool all_pass() const;
  double to_bits(std::size_t dim) const;
};

/// Recomputes everything from F, owners and W; the certificate is ignored.
VerificationReport verify_scheme(const CommScheme& scheme, const Instance& instance);

}  // namespace treepin
