#pragma once

#include <cstddef>
#include <vector>

#include "treepin/matrix.hpp"

namespace treepin {

struct RrefResult {
  FMatrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

/// Reduced row echelon form; the pivot in each column is the first nonzero
/// entry at or below the current rank, so results are deterministic.
RrefResult rref(const FMatrix& m);
std::size_t rank(const FMatrix& m);
Elem det(const FMatrix& m);
/// Throws SingularMatrixError when m is not invertible.
FMatrix inverse(const FMatrix& m);

/// Some X with a*X = b. ShapeError on mismatched rows, NoSolutionError when
/// rank([a|b]) > rank(a). Free variables are set to zero.
FMatrix solve_right(const FMatrix& a, const FMatrix& b);

FMatrix mul(const FMatrix& a, const FMatrix& b);
FMatrix add(const FMatrix& a, const FMatrix& b);
FMatrix negate(const FMatrix& a);
inline FMatrix operator*(const FMatrix& a, const FMatrix& b) { return mul(a, b); }

/// Columns form a basis of {x : m x = 0}.
FMatrix right_nullspace_basis(const FMatrix& m);
/// Rows form a basis of {y : y m = 0}.
FMatrix left_nullspace_basis(const FMatrix& m);

/// Linearly independent columns spanning col(m).
FMatrix column_basis(const FMatrix& m);
/// Linearly independent columns spanning col(a) ∩ col(b).
FMatrix col_space_intersect(const FMatrix& a, const FMatrix& b);
bool in_col_span(const FMatrix& a, const FMatrix& v);

/// Entrywise embedding of a matrix over F_q into F_{q^n}.
FMatrix lift(const FMatrix& m, const FieldPtr& target);

}  // namespace treepin
