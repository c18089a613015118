#include "treepin/mcf.hpp"

#include <cmath>

#include "treepin/errors.hpp"
#include "treepin/linalg.hpp"

namespace treepin {

double LinearMcf::entropy_bits() const {
  return static_cast<double>(dim()) * std::log2(static_cast<double>(basis.field().order()));
}

LinearMcf mcf_linear(const FMatrix& m1, const FMatrix& m2) {
  if (m1.rows() != m2.rows()) throw ShapeError("mcf_linear: functionals act on different base dimensions");
  return LinearMcf{col_space_intersect(m1, m2)};
}

LinearMcf mcf_edge_wiretap(const Instance& instance, int edge_id) {
  const auto idx = instance.source.edge_index(edge_id);
  return mcf_linear(instance.source.edge_selector(idx), instance.wiretapper.matrix);
}

}  // namespace treepin
