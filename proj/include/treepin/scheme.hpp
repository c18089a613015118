#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "treepin/matrix.hpp"
#include "treepin/model.hpp"

namespace treepin {

/// A per-node coefficient matrix of the tree construction. For A blocks `node`
/// is the internal node i and `edge_id` the child edge e; for B blocks `node`
/// is the child endpoint of `edge_id`.
struct CoefficientBlock {
  int node = 0;
  int edge_id = 0;
  FMatrix matrix;

  friend bool operator==(const CoefficientBlock&, const CoefficientBlock&) = default;
};

/// Linear non-interactive communication F = X^n * transmit over F_{q^n}.
///
/// Column j of `transmit` is sent by `owners[j]` and must only involve that
/// node's coordinates. Schemes produced by synthesis also carry the template
/// coefficients (A, B) and the left-nullspace certificate S; hand-written
/// schemes may carry only `transmit` and `owners`.
struct CommScheme {
  FieldPtr field;
  std::string method = "manual";
  int root = -1;
  std::size_t s = 0;
  FMatrix transmit;
  std::vector<int> owners;
  std::vector<CoefficientBlock> a_blocks;
  std::vector<CoefficientBlock> b_blocks;
  std::optional<FMatrix> certificate;

  unsigned extension_degree() const { return field->degree(); }

  friend bool operator==(const CommScheme& a, const CommScheme& b);
};

/// Linear key K = X^n * matrix; `coords` are the chosen standard basis indices.
struct KeyExtractor {
  FMatrix matrix;
  std::vector<std::size_t> coords;
};

/// Smallest n with q^n > s * |E|.
unsigned choose_extension_degree(const TreePinSource& source);

/// Lowest-id leaf.
int default_root(const TreePinSource& source);

/// Draws certificates S = C * N where the rows of N span the left nullspace of
/// the lifted W and C is uniform over F_{q^n}.
class CertificateSampler {
 public:
  CertificateSampler(const Instance& instance, FieldPtr field);

  FMatrix draw(std::mt19937_64& rng) const;
  /// True iff every s x s edge block S_e is invertible.
  bool blocks_invertible(const FMatrix& certificate) const;
  std::size_t free_dim() const { return nullspace_.rows(); }

 private:
  TreePinSource source_;
  FieldPtr field_;
  FMatrix nullspace_;
};

/// Builds A_{i,e} = -S_e^{-1} S_{e*(i)}, B_e = -S_e^{-1} T_e and the global
/// transmit matrix from a certificate whose edge blocks are all invertible.
CommScheme assemble_scheme(const TreePinSource& source, FieldPtr field, int root, const FMatrix& certificate,
                           std::string method);

/// Throws SynthesisError unless rank(F) = D - s, S F = 0, S W = 0, every A is
/// invertible and every column is computable by its owner.
void check_scheme_invariants(const CommScheme& scheme, const Instance& instance);

/// Randomised construction for any irreducible instance.
CommScheme synth_random(const Instance& instance, std::uint64_t seed, std::size_t max_attempts = 64);

/// Deterministic construction for unit multiplicities over F_{q^k}, k = |E| - n_w.
CommScheme synth_explicit_unit(const Instance& instance);

/// Greedy standard-basis completion of col(F) to the whole space.
KeyExtractor extract_key(const CommScheme& scheme);

std::string save_scheme(const CommScheme& scheme);
CommScheme load_scheme(std::string_view text);

}  // namespace treepin
