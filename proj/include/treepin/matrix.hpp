#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "treepin/gfield.hpp"

namespace treepin {

/// Dense row-major matrix over an ExtField. Value-semantic: every operation in
/// linalg.hpp returns a fresh matrix.
class FMatrix {
 public:
  FMatrix() = default;
  FMatrix(FieldPtr field, std::size_t rows, std::size_t cols);

  static FMatrix identity(FieldPtr field, std::size_t n);
  /// Entries given as element indices (base-field integers when degree is 1).
  static FMatrix from_values(FieldPtr field, std::size_t rows, std::size_t cols,
                             std::span<const std::uint32_t> values);
  static FMatrix from_values(FieldPtr field, std::size_t rows, std::size_t cols,
                             std::initializer_list<std::uint32_t> values) {
    return from_values(std::move(field), rows, cols, std::span<const std::uint32_t>(values.begin(), values.size()));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldPtr& field_ptr() const { return field_; }
  const ExtField& field() const { return *field_; }

  Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> data() const { return data_; }
  std::span<Elem> data() { return data_; }

  FMatrix transpose() const;
  FMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  FMatrix select_rows(std::span<const std::size_t> idx) const;
  FMatrix select_cols(std::span<const std::size_t> idx) const;
  FMatrix column(std::size_t c) const { return block(0, c, rows_, 1); }

  bool is_zero() const;

  friend bool operator==(const FMatrix& a, const FMatrix& b);

 private:
  FieldPtr field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

/// [a | b]; both must share rows and field.
FMatrix hcat(const FMatrix& a, const FMatrix& b);
/// [a ; b]; both must share cols and field.
FMatrix vcat(const FMatrix& a, const FMatrix& b);

void require_same_field(const FMatrix& a, const FMatrix& b, const char* op);

}  // namespace treepin
