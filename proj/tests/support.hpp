#pragma once

#include <cstdint>
#include <vector>

#include "treepin/errors.hpp"
#include "treepin/linalg.hpp"
#include "treepin/model.hpp"
#include "treepin/reduce.hpp"
#include "treepin/scheme.hpp"

namespace treepin::testing {

// Path 0-1-2-3 with one bit per edge and Z_w = X_a + X_b + X_c.
inline Instance path3() {
  TreePinSource src(2, 4, {{0, 0, 1, 1}, {1, 1, 2, 1}, {2, 2, 3, 1}});
  return {src, {FMatrix::from_values(src.base_field(), 3, 1, {1, 1, 1})}};
}

// Path 0-1-2-3, Y_a = (X_a1, X_a2), Y_b = X_b1, Y_c = X_c1. With `reducible`
// the wiretapper also sees X_a1 + X_a2.
inline Instance two_bit_path(bool reducible) {
  TreePinSource src(2, 4, {{0, 0, 1, 2}, {1, 1, 2, 1}, {2, 2, 3, 1}});
  if (reducible) return {src, {FMatrix::from_values(src.base_field(), 4, 2, {1, 0, 1, 0, 0, 1, 0, 1})}};
  return {src, {FMatrix::from_values(src.base_field(), 4, 1, {0, 0, 1, 1})}};
}

// Hand-entered two-realization scheme over F_4 = F_2[x]/(x^2+x+1):
// node 1 sends X_a + (x+1) X_b, node 2 sends x X_b + X_c. On pairs of bits,
// multiplication by x+1 is [[1,1],[1,0]] and by x is [[0,1],[1,1]].
inline CommScheme two_realization_scheme() {
  CommScheme s;
  s.field = ExtField::make(2, 2);
  s.method = "manual";
  s.transmit = FMatrix::from_values(s.field, 3, 2, {1, 0, 3, 2, 0, 1});
  s.owners = {1, 2};
  return s;
}

// Seeded irreducible instances with n_w possibly reduced to zero. Instances
// whose reduction hits a fully absorbed edge are skipped.
inline std::vector<Instance> irreducible_suite(std::uint64_t seed0, std::size_t count, std::vector<std::uint32_t> qs,
                                               int max_vertices, std::size_t max_mult) {
  std::vector<Instance> out;
  for (std::uint64_t seed = seed0; out.size() < count; ++seed) {
    const auto q = qs[seed % qs.size()];
    const int v = 2 + static_cast<int>(seed % static_cast<std::uint64_t>(max_vertices - 1));
    const auto draft = random_instance(seed, v, max_mult, q, 0);
    const std::size_t nw = (seed / 7) % (draft.source.total_dim());
    const auto inst = random_instance(seed, v, max_mult, q, nw);
    try {
      out.push_back(reduce_full(inst).reduced);
    } catch (const ReductionError&) {
    }
  }
  return out;
}

}  // namespace treepin::testing
