#pragma once

#include <cstddef>

#include "treepin/matrix.hpp"
#include "treepin/model.hpp"

namespace treepin {

/// Maximal common function of two linear observations X*M1 and X*M2, given as
/// a basis matrix Mg with col(Mg) = col(M1) ∩ col(M2). Bases are not
/// canonical; compare dimensions and spans, not entries.
struct LinearMcf {
  FMatrix basis;

  std::size_t dim() const { return basis.cols(); }
  double entropy_bits() const;
};

LinearMcf mcf_linear(const FMatrix& m1, const FMatrix& m2);

/// mcf(Y_e, Z_w) for the edge with the given id.
LinearMcf mcf_edge_wiretap(const Instance& instance, int edge_id);

}  // namespace treepin
