#pragma once

#include <cstddef>
#include <vector>

#include "treepin/matrix.hpp"
#include "treepin/model.hpp"

namespace treepin {

/// One removal of mcf(Y_e, Z_w) from an edge. [mcf_block | completion] is an
/// invertible change of basis of the edge block; the first `removed`
/// transformed coordinates are the revealed common function G_e.
struct ReductionStep {
  int edge_id = 0;
  std::size_t removed = 0;
  FMatrix mcf_block;   // n_e x removed
  FMatrix completion;  // n_e x (n_e - removed)
  std::size_t new_multiplicity = 0;
  FMatrix new_wiretap;  // (D - removed) x (n_w - removed)
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
  Instance original;
  Instance reduced;
};

struct ReducedInstance {
  Instance instance;
  ReductionStep step;
};

/// True iff no vector of col(W) is supported on a single edge block.
bool is_irreducible(const Instance& instance);

/// Throws ReductionError when the edge has nothing to remove or when the
/// wiretapper knows the whole edge.
ReducedInstance reduce_once(const Instance& instance, int edge_id);

/// Repeats reduce_once over edges in ascending id order, restarting after
/// every step, until the instance is irreducible.
ReductionTrace reduce_full(const Instance& instance);

}  // namespace treepin
