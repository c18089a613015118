#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "treepin/model.hpp"
#include "treepin/scheme.hpp"

namespace treepin {

inline constexpr std::uint64_t kOracleBudget = 1u << 18;
inline constexpr std::uint64_t kMcfOracleBudget = 1u << 14;

/// Distribution of a function of the uniform base vector, held as exact
/// counts. `bits` is the only floating value.
struct EntropyResult {
  std::uint64_t total = 0;
  std::uint64_t support = 0;
  bool uniform = false;
  double bits = 0.0;

  /// k when the distribution is uniform on exactly order^k values.
  std::optional<std::size_t> exact_dim(std::uint32_t order) const;
};

EntropyResult entropy_of_counts(const std::unordered_map<std::uint64_t, std::uint64_t>& counts, std::uint64_t total);

/// H(X M) for X uniform over field^rows(M), by full enumeration.
EntropyResult entropy_exhaustive(const FMatrix& m, std::uint64_t budget = kOracleBudget);

/// Gács–Körner common function of X M1 and X M2: connected components of the
/// bipartite graph joining co-occurring values. Labels are keyed by packed
/// image values.
struct McfOracleResult {
  EntropyResult entropy;
  std::size_t components = 0;
  std::unordered_map<std::uint64_t, std::uint32_t> label_first;
  std::unordered_map<std::uint64_t, std::uint32_t> label_second;
};

McfOracleResult mcf_exhaustive(const FMatrix& m1, const FMatrix& m2, std::uint64_t budget = kMcfOracleBudget);

/// True iff the component label of X M1 and the value X Mg determine each
/// other on every base vector.
bool mcf_functionally_equivalent(const FMatrix& m1, const FMatrix& m2, const FMatrix& mg,
                                 std::uint64_t budget = kMcfOracleBudget);

/// I(X MA ; X MB | X MC) from four exact histograms.
struct CmiResult {
  EntropyResult h_ac;
  EntropyResult h_bc;
  EntropyResult h_abc;
  EntropyResult h_c;
  double bits = 0.0;

  /// Exact value in units of log2(order) when all four parts are uniform.
  std::optional<long long> exact_dim(std::uint32_t order) const;
};

CmiResult cond_mutual_info_exhaustive(const FMatrix& ma, const FMatrix& mb, const FMatrix& mc,
                                      std::uint64_t budget = kOracleBudget);

struct PropertyReport {
  std::size_t trials = 0;
  std::size_t degenerate = 0;  // trials in which the vanishing side held
  std::size_t counterexamples = 0;
  bool ok() const { return counterexamples == 0; }
};

/// For random A (m x s over F_q): det(X A), X an s x m matrix of
/// indeterminates, vanishes identically iff A lambda = 0 for some nonzero
/// lambda in F_q^s. The determinant is multilinear, so vanishing on every
/// point of F_q^{s m} is identical vanishing.
PropertyReport detform_property_check(std::uint32_t q, std::size_t s, std::size_t m, std::size_t trials,
                                      std::uint64_t seed, std::uint64_t budget = kOracleBudget);

/// Identity check on A = det(X A) for a fixed A.
bool detform_vanishes(const FMatrix& a, std::uint64_t budget = kOracleBudget);
bool detform_has_kernel_vector(const FMatrix& a, std::uint64_t budget = kOracleBudget);

/// For random block-diagonal triples with (X, Y) independent of Z over a base
/// space of dimension `base_dim`:
///   mcf(X, (Y, Z)) = mcf(X, Y)  and  mcf((X, Z), (Y, Z)) = mcf(X, Y) + H(Z),
/// comparing exact supports of uniform label distributions.
PropertyReport mcf_independence_property_check(std::uint32_t q, std::size_t base_dim, std::size_t trials, std::uint64_t seed,
                                     std::uint64_t budget = kMcfOracleBudget);

/// Exhaustive counterparts of every rank-based instance quantity.
struct InstanceOracleReport {
  struct EdgeRow {
    int edge_id = 0;
    std::size_t linear_mcf_dim = 0;
    std::optional<std::size_t> oracle_mcf_dim;
    bool functional_match = false;
    std::optional<std::size_t> oracle_edge_dim;  // H(Y_e)
  };
  std::size_t rank_w = 0;
  std::optional<std::size_t> oracle_w_dim;
  std::vector<EdgeRow> edges;
  std::size_t cw_dim = 0;
  std::optional<std::size_t> oracle_cw_dim;  // min_e H(Y_e | mcf(Y_e, Z_w))
  std::size_t rco_dim = 0;
  std::optional<std::size_t> oracle_rco_dim;  // sum_e H(Y_e) - min_e H(Y_e)
  std::size_t rl_dim = 0;
  std::optional<std::size_t> oracle_rl_dim;  // H(X | Z_w) - cw
  bool agree() const;
};

InstanceOracleReport oracle_check_instance(const Instance& instance, std::uint64_t budget = kOracleBudget);

/// Exhaustive check of a scheme over F_{q^n}: enumeration covers all q^{D n}
/// base blocks.
struct SchemeOracleReport {
  unsigned extension_degree = 1;
  std::size_t rank_leakage_dim = 0;
  std::optional<long long> oracle_leakage_dim;  // I(X; F | Z_w) in units of n log2 q
  double oracle_leakage_bits_per_realization = 0.0;
  std::vector<bool> rank_omniscience;
  std::vector<bool> oracle_omniscience;  // H(X | F, Z_i) = 0
  bool rank_alignment = false;
  bool oracle_alignment = false;  // H(Z_w | F) = 0
  bool agree() const;
};

SchemeOracleReport oracle_check_scheme(const CommScheme& scheme, const Instance& instance,
                                       std::uint64_t budget = kOracleBudget);

}  // namespace treepin
