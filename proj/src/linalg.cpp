#include "treepin/linalg.hpp"

#include <algorithm>

#include "treepin/errors.hpp"
#include "treepin/kernels.hpp"

namespace treepin {

namespace {

void swap_rows(FMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(m.row(a).begin(), m.row(a).end(), m.row(b).begin());
}

void scale_row(FMatrix& m, std::size_t r, Elem factor, std::size_t from) {
  const ExtField& f = m.field();
  auto row = m.row(r);
  for (std::size_t j = from; j < row.size(); ++j) row[j] = f.mul(row[j], factor);
}

}  // namespace

RrefResult rref(const FMatrix& m) {
  RrefResult out{m, {}};
  FMatrix& r = out.reduced;
  const ExtField& f = r.field();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < r.cols() && rank < r.rows(); ++c) {
    std::size_t p = rank;
    while (p < r.rows() && r(p, c).value == 0) ++p;
    if (p == r.rows()) continue;
    swap_rows(r, p, rank);
    scale_row(r, rank, f.inv(r(rank, c)), c);
    kernels::eliminate_column(f, r.data(), r.rows(), r.cols(), rank, c);
    out.pivots.push_back(c);
    ++rank;
  }
  return out;
}

std::size_t rank(const FMatrix& m) { return rref(m).rank(); }

Elem det(const FMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("det: matrix is not square");
  FMatrix r = m;
  const ExtField& f = r.field();
  Elem acc = f.one();
  for (std::size_t c = 0; c < r.cols(); ++c) {
    std::size_t p = c;
    while (p < r.rows() && r(p, c).value == 0) ++p;
    if (p == r.rows()) return f.zero();
    if (p != c) {
      swap_rows(r, p, c);
      acc = f.neg(acc);
    }
    acc = f.mul(acc, r(c, c));
    scale_row(r, c, f.inv(r(c, c)), c);
    kernels::eliminate_column(f, r.data(), r.rows(), r.cols(), c, c);
  }
  return acc;
}

FMatrix inverse(const FMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("inverse: matrix is not square");
  const std::size_t n = m.rows();
  const auto red = rref(hcat(m, FMatrix::identity(m.field_ptr(), n)));
  if (red.rank() < n || (n > 0 && red.pivots[n - 1] >= n)) throw SingularMatrixError("inverse: matrix is singular");
  return red.reduced.block(0, n, n, n);
}

FMatrix solve_right(const FMatrix& a, const FMatrix& b) {
  require_same_field(a, b, "solve_right");
  if (a.rows() != b.rows()) throw ShapeError("solve_right: row counts differ");
  const auto red = rref(hcat(a, b));
  FMatrix x(a.field_ptr(), a.cols(), b.cols());
  for (std::size_t i = 0; i < red.pivots.size(); ++i) {
    const std::size_t p = red.pivots[i];
    if (p >= a.cols()) throw NoSolutionError("solve_right: system has no solution");
    for (std::size_t j = 0; j < b.cols(); ++j) x(p, j) = red.reduced(i, a.cols() + j);
  }
  return x;
}

FMatrix mul(const FMatrix& a, const FMatrix& b) {
  require_same_field(a, b, "mul");
  if (a.cols() != b.rows()) throw ShapeError("mul: inner dimensions differ");
  FMatrix out(a.field_ptr(), a.rows(), b.cols());
  kernels::multiply(a.field(), a.data(), b.data(), out.data(), a.rows(), a.cols(), b.cols());
  return out;
}

FMatrix add(const FMatrix& a, const FMatrix& b) {
  require_same_field(a, b, "add");
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("add: shapes differ");
  FMatrix out = a;
  const ExtField& f = a.field();
  auto dst = out.data();
  auto src = b.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = f.add(dst[i], src[i]);
  return out;
}

FMatrix negate(const FMatrix& a) {
  FMatrix out = a;
  for (auto& e : out.data()) e = a.field().neg(e);
  return out;
}

FMatrix right_nullspace_basis(const FMatrix& m) {
  const auto red = rref(m);
  const ExtField& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : red.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  FMatrix basis(m.field_ptr(), m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    basis(free_cols[k], k) = f.one();
    for (std::size_t i = 0; i < red.pivots.size(); ++i) {
      basis(red.pivots[i], k) = f.neg(red.reduced(i, free_cols[k]));
    }
  }
  return basis;
}

FMatrix left_nullspace_basis(const FMatrix& m) { return right_nullspace_basis(m.transpose()).transpose(); }

FMatrix column_basis(const FMatrix& m) {
  const auto red = rref(m.transpose());
  return red.reduced.block(0, 0, red.rank(), m.rows()).transpose();
}

FMatrix col_space_intersect(const FMatrix& a, const FMatrix& b) {
  require_same_field(a, b, "col_space_intersect");
  if (a.rows() != b.rows()) throw ShapeError("col_space_intersect: row counts differ");
  // (u, v) with a u = b v parametrises the intersection through a u.
  const FMatrix kernel = right_nullspace_basis(hcat(a, negate(b)));
  const FMatrix u = kernel.block(0, 0, a.cols(), kernel.cols());
  return column_basis(mul(a, u));
}

bool in_col_span(const FMatrix& a, const FMatrix& v) {
  if (a.rows() != v.rows()) throw ShapeError("in_col_span: row counts differ");
  return rank(hcat(a, v)) == rank(a);
}

FMatrix lift(const FMatrix& m, const FieldPtr& target) {
  if (m.field().q() != target->q()) throw FieldError("lift: base characteristic differs");
  if (m.field().same_as(*target)) return m;
  if (m.field().degree() != 1) throw FieldError("lift: source matrix must be over the prime field");
  FMatrix out(target, m.rows(), m.cols());
  auto src = m.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = target->embed(src[i].value);
  return out;
}

}  // namespace treepin
