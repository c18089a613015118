#include "treepin/reduce.hpp"

#include <algorithm>

#include "treepin/errors.hpp"
#include "treepin/linalg.hpp"
#include "treepin/mcf.hpp"

namespace treepin {

namespace {

std::vector<int> ids_ascending(const TreePinSource& source) {
  std::vector<int> ids;
  for (const auto& e : source.edges()) ids.push_back(e.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

// Greedy completion of a full-column-rank block by standard basis columns.
FMatrix complete_basis(const FMatrix& block) {
  const std::size_t n = block.rows();
  FMatrix picked = block;
  FMatrix completion(block.field_ptr(), n, 0);
  for (std::size_t k = 0; k < n && picked.cols() < n; ++k) {
    FMatrix unit(block.field_ptr(), n, 1);
    unit(k, 0) = Elem{1};
    FMatrix extended = hcat(picked, unit);
    if (rank(extended) > picked.cols()) {
      picked = std::move(extended);
      completion = hcat(completion, unit);
    }
  }
  return completion;
}

}  // namespace

bool is_irreducible(const Instance& instance) {
  if (instance.wiretapper.nw() == 0) return true;
  return std::all_of(instance.source.edges().begin(), instance.source.edges().end(),
                     [&](const Edge& e) { return mcf_edge_wiretap(instance, e.id).dim() == 0; });
}

ReducedInstance reduce_once(const Instance& instance, int edge_id) {
  const auto& source = instance.source;
  const auto& w = instance.wiretapper.matrix;
  const auto idx = source.edge_index(edge_id);
  const auto range = source.range(idx);
  const std::size_t ne = range.size();

  const auto mcf = mcf_edge_wiretap(instance, edge_id);
  const std::size_t ell = mcf.dim();
  if (ell == 0) throw ReductionError("edge " + std::to_string(edge_id) + " already reduced");
  if (ell == ne) throw ReductionError("edge " + std::to_string(edge_id) + " fully absorbed by wiretapper");

  ReductionStep step;
  step.edge_id = edge_id;
  step.removed = ell;
  step.mcf_block = mcf.basis.block(range.begin, 0, ne, ell);
  step.completion = complete_basis(step.mcf_block);
  step.new_multiplicity = ne - ell;

  // Edge rows of W in the (G_e, Ỹ_e) coordinates.
  const FMatrix change = hcat(step.mcf_block, step.completion);
  const FMatrix edge_rows = mul(inverse(change), w.block(range.begin, 0, ne, w.cols()));

  // Transposed W with the G_e rows first and the remaining rows in layout order.
  const std::size_t dim = source.total_dim();
  FMatrix reordered(w.field_ptr(), dim, w.cols());
  std::size_t out = 0;
  for (std::size_t r = 0; r < ell; ++r, ++out) {
    std::copy(edge_rows.row(r).begin(), edge_rows.row(r).end(), reordered.row(out).begin());
  }
  for (std::size_t r = 0; r < dim; ++r) {
    if (r == range.begin) {
      for (std::size_t k = ell; k < ne; ++k, ++out) {
        std::copy(edge_rows.row(k).begin(), edge_rows.row(k).end(), reordered.row(out).begin());
      }
    }
    if (r >= range.begin && r < range.end) continue;
    std::copy(w.row(r).begin(), w.row(r).end(), reordered.row(out++).begin());
  }

  // Column operations pivot the G_e rows into an identity block; the other
  // columns then vanish on G_e and form the reduced wiretapper.
  const auto red = rref(reordered.transpose());
  for (std::size_t i = 0; i < ell; ++i) {
    if (red.pivots.at(i) != i) throw ReductionError("internal: G_e rows of W are not of full rank");
  }
  step.new_wiretap = red.reduced.block(ell, ell, w.cols() - ell, dim - ell).transpose();

  Instance reduced{source.with_multiplicity(idx, ne - ell), Wiretapper{step.new_wiretap}};
  validate_wiretapper(reduced.source, reduced.wiretapper.matrix);
  return ReducedInstance{std::move(reduced), std::move(step)};
}

ReductionTrace reduce_full(const Instance& instance) {
  ReductionTrace trace{{}, instance, instance};
  for (;;) {
    bool changed = false;
    for (int id : ids_ascending(trace.reduced.source)) {
      if (mcf_edge_wiretap(trace.reduced, id).dim() == 0) continue;
      auto next = reduce_once(trace.reduced, id);
      trace.reduced = std::move(next.instance);
      trace.steps.push_back(std::move(next.step));
      changed = true;
      break;
    }
    if (!changed) return trace;
  }
}

}  // namespace treepin
