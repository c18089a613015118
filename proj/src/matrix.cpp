#include "treepin/matrix.hpp"

#include <algorithm>
#include <string>

#include "treepin/errors.hpp"

namespace treepin {

FMatrix::FMatrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols) {
  if (!field_) throw ShapeError("matrix requires a field context");
}

FMatrix FMatrix::identity(FieldPtr field, std::size_t n) {
  FMatrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Elem{1};
  return m;
}

FMatrix FMatrix::from_values(FieldPtr field, std::size_t rows, std::size_t cols,
                             std::span<const std::uint32_t> values) {
  if (values.size() != rows * cols) throw ShapeError("value count does not match matrix shape");
  FMatrix m(std::move(field), rows, cols);
  for (std::size_t i = 0; i < values.size(); ++i) m.data_[i] = m.field_->from_index(values[i]);
  return m;
}

FMatrix FMatrix::transpose() const {
  FMatrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

FMatrix FMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeError("block out of range");
  FMatrix b(field_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>((r0 + r) * cols_ + c0), nc, b.row(r).begin());
  }
  return b;
}

FMatrix FMatrix::select_rows(std::span<const std::size_t> idx) const {
  FMatrix out(field_, idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= rows_) throw ShapeError("row index out of range");
    std::copy(row(idx[i]).begin(), row(idx[i]).end(), out.row(i).begin());
  }
  return out;
}

FMatrix FMatrix::select_cols(std::span<const std::size_t> idx) const {
  FMatrix out(field_, rows_, idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) {
    if (idx[j] >= cols_) throw ShapeError("column index out of range");
    for (std::size_t r = 0; r < rows_; ++r) out(r, j) = (*this)(r, idx[j]);
  }
  return out;
}

bool FMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Elem e) { return e.value == 0; });
}

bool operator==(const FMatrix& a, const FMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  if ((a.field_ == nullptr) != (b.field_ == nullptr)) return false;
  if (a.field_ && !a.field_->same_as(*b.field_)) return false;
  return a.data_ == b.data_;
}

void require_same_field(const FMatrix& a, const FMatrix& b, const char* op) {
  if (!a.field().same_as(b.field())) throw ShapeError(std::string(op) + ": operands over different fields");
}

FMatrix hcat(const FMatrix& a, const FMatrix& b) {
  require_same_field(a, b, "hcat");
  if (a.rows() != b.rows()) throw ShapeError("hcat: row counts differ");
  FMatrix out(a.field_ptr(), a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto dst = out.row(r);
    std::copy(a.row(r).begin(), a.row(r).end(), dst.begin());
    std::copy(b.row(r).begin(), b.row(r).end(), dst.begin() + static_cast<std::ptrdiff_t>(a.cols()));
  }
  return out;
}

FMatrix vcat(const FMatrix& a, const FMatrix& b) {
  require_same_field(a, b, "vcat");
  if (a.cols() != b.cols()) throw ShapeError("vcat: column counts differ");
  FMatrix out(a.field_ptr(), a.rows() + b.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) std::copy(a.row(r).begin(), a.row(r).end(), out.row(r).begin());
  for (std::size_t r = 0; r < b.rows(); ++r) {
    std::copy(b.row(r).begin(), b.row(r).end(), out.row(a.rows() + r).begin());
  }
  return out;
}

}  // namespace treepin
