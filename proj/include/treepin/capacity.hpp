#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "treepin/model.hpp"

namespace treepin {

struct EdgeCapacity {
  int edge_id = 0;
  std::size_t multiplicity = 0;
  std::size_t mcf_dim = 0;
  /// H(Y_e | mcf(Y_e, Z_w)) in units of log2 q.
  std::size_t residual() const { return multiplicity - mcf_dim; }
};

/// Closed-form rates for a tree-PIN instance. Dimensions are exact integers
/// in units of log2 q bits; *_bits() converts at the reporting boundary.
struct CapacityReport {
  std::uint32_t q = 2;
  std::size_t total_dim = 0;
  std::size_t wiretap_dim = 0;
  std::size_t min_multiplicity = 0;
  std::vector<EdgeCapacity> edges;
  std::vector<int> argmin_edges;  // every edge attaining cw_dim
  bool irreducible = true;

  std::size_t cs_dim = 0;
  std::size_t cw_dim = 0;
  std::size_t rl_dim = 0;
  std::size_t rco_dim = 0;

  double to_bits(std::size_t dim) const;
  double cs_bits() const { return to_bits(cs_dim); }
  double cw_bits() const { return to_bits(cw_dim); }
  double rl_bits() const { return to_bits(rl_dim); }
  double rco_bits() const { return to_bits(rco_dim); }
};

CapacityReport analyze(const Instance& instance);

std::size_t cs_dim(const TreePinSource& source);
std::size_t cw_dim(const Instance& instance);
std::size_t rl_dim(const Instance& instance);
std::size_t rco_dim(const TreePinSource& source);

double cs(const TreePinSource& source);
double cw(const Instance& instance);
double rl(const Instance& instance);
double rco(const TreePinSource& source);

}  // namespace treepin
