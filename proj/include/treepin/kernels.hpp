#pragma once

// Data-parallel inner loops shared by linalg and the exhaustive oracle.
//
// The top-level functions are OpenMP-parallel; kernels::serial holds the
// straight-line reference versions that tests compare against and the
// benchmark target measures.

#include <cstdint>
#include <span>
#include <unordered_map>

#include "treepin/matrix.hpp"

namespace treepin::kernels {

/// Multiset of the images x*M over every x in field^rows(M). Keys pack the
/// image row as sum_j value_j * order^j.
struct ImageCounts {
  std::unordered_map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t total = 0;
};

/// Clears column `pivot_col` in every row except `pivot_row`, whose pivot
/// entry must already be 1. Entries left of `pivot_col` in the pivot row are
/// assumed zero.
void eliminate_column(const ExtField& f, std::span<Elem> data, std::size_t rows, std::size_t cols,
                      std::size_t pivot_row, std::size_t pivot_col);

/// out (n x m) = a (n x k) * b (k x m).
void multiply(const ExtField& f, std::span<const Elem> a, std::span<const Elem> b, std::span<Elem> out,
              std::size_t n, std::size_t k, std::size_t m);

/// Exhaustive image histogram. Throws OracleBudgetError when order^rows would
/// exceed `budget` or the packed key does not fit in 64 bits.
ImageCounts image_counts(const FMatrix& m, std::uint64_t budget);

/// Packed key of an image row, matching image_counts.
std::uint64_t pack_image(const ExtField& f, std::span<const Elem> values);

namespace serial {

void eliminate_column(const ExtField& f, std::span<Elem> data, std::size_t rows, std::size_t cols,
                      std::size_t pivot_row, std::size_t pivot_col);
void multiply(const ExtField& f, std::span<const Elem> a, std::span<const Elem> b, std::span<Elem> out,
              std::size_t n, std::size_t k, std::size_t m);
ImageCounts image_counts(const FMatrix& m, std::uint64_t budget);

}  // namespace serial

}  // namespace treepin::kernels
