#include "treepin/kernels.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "treepin/errors.hpp"

namespace treepin::kernels {

namespace {

// Below this many element updates the fork/join overhead dominates.
constexpr std::size_t kParallelThreshold = 1u << 14;

struct Enumeration {
  std::uint64_t total = 1;
  std::vector<std::uint64_t> place;
};

Enumeration plan_enumeration(const FMatrix& m, std::uint64_t budget) {
  const auto order = m.field().order();
  Enumeration plan;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (plan.total > budget / order) {
      throw OracleBudgetError("enumeration of " + std::to_string(order) + "^" + std::to_string(m.rows()) +
                              " points exceeds budget " + std::to_string(budget));
    }
    plan.total *= order;
  }
  if (plan.total > budget) throw OracleBudgetError("enumeration exceeds budget " + std::to_string(budget));
  const double key_bits = static_cast<double>(m.cols()) * std::log2(static_cast<double>(order));
  if (key_bits > 63.0) throw OracleBudgetError("image key exceeds 64 bits");
  plan.place.resize(m.cols());
  std::uint64_t p = 1;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    plan.place[j] = p;
    p *= order;
  }
  return plan;
}

inline void decode_point(std::uint64_t idx, std::uint32_t order, std::vector<Elem>& x) {
  for (auto& xi : x) {
    xi = Elem{static_cast<std::uint32_t>(idx % order)};
    idx /= order;
  }
}

inline std::uint64_t image_key(const ExtField& f, const FMatrix& m, const std::vector<Elem>& x,
                               const std::vector<std::uint64_t>& place) {
  std::uint64_t key = 0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Elem acc{0};
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].value != 0) acc = f.add(acc, f.mul(x[i], m(i, j)));
    }
    key += place[j] * acc.value;
  }
  return key;
}

inline void eliminate_row(const ExtField& f, Elem* row, const Elem* pivot, std::size_t from, std::size_t cols) {
  const Elem factor = row[from];
  if (factor.value == 0) return;
  const Elem neg_factor = f.neg(factor);
  for (std::size_t j = from; j < cols; ++j) {
    if (pivot[j].value != 0) row[j] = f.add(row[j], f.mul(neg_factor, pivot[j]));
  }
}

}  // namespace

std::uint64_t pack_image(const ExtField& f, std::span<const Elem> values) {
  std::uint64_t key = 0;
  std::uint64_t place = 1;
  for (auto v : values) {
    key += place * v.value;
    place *= f.order();
  }
  return key;
}

void eliminate_column(const ExtField& f, std::span<Elem> data, std::size_t rows, std::size_t cols,
                      std::size_t pivot_row, std::size_t pivot_col) {
  const Elem* pivot = data.data() + pivot_row * cols;
  const auto n = static_cast<std::int64_t>(rows);
#pragma omp parallel for schedule(static) if (rows * (cols - pivot_col) >= kParallelThreshold)
  for (std::int64_t r = 0; r < n; ++r) {
    if (static_cast<std::size_t>(r) == pivot_row) continue;
    eliminate_row(f, data.data() + static_cast<std::size_t>(r) * cols, pivot, pivot_col, cols);
  }
}

void multiply(const ExtField& f, std::span<const Elem> a, std::span<const Elem> b, std::span<Elem> out,
              std::size_t n, std::size_t k, std::size_t m) {
  const auto rows = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) if (n * k * m >= kParallelThreshold)
  for (std::int64_t ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    Elem* dst = out.data() + i * m;
    for (std::size_t j = 0; j < m; ++j) dst[j] = Elem{0};
    for (std::size_t t = 0; t < k; ++t) {
      const Elem aik = a[i * k + t];
      if (aik.value == 0) continue;
      const Elem* brow = b.data() + t * m;
      for (std::size_t j = 0; j < m; ++j) {
        if (brow[j].value != 0) dst[j] = f.add(dst[j], f.mul(aik, brow[j]));
      }
    }
  }
}

ImageCounts image_counts(const FMatrix& m, std::uint64_t budget) {
  const auto plan = plan_enumeration(m, budget);
  const ExtField& f = m.field();
  ImageCounts out;
  out.total = plan.total;
  const auto total = static_cast<std::int64_t>(plan.total);
#pragma omp parallel
  {
    std::unordered_map<std::uint64_t, std::uint64_t> local;
    std::vector<Elem> x(m.rows());
#pragma omp for schedule(static)
    for (std::int64_t idx = 0; idx < total; ++idx) {
      decode_point(static_cast<std::uint64_t>(idx), f.order(), x);
      ++local[image_key(f, m, x, plan.place)];
    }
#pragma omp critical(treepin_image_counts_merge)
    for (const auto& [key, count] : local) out.counts[key] += count;
  }
  return out;
}

namespace serial {

void eliminate_column(const ExtField& f, std::span<Elem> data, std::size_t rows, std::size_t cols,
                      std::size_t pivot_row, std::size_t pivot_col) {
  const Elem* pivot = data.data() + pivot_row * cols;
  for (std::size_t r = 0; r < rows; ++r) {
    if (r == pivot_row) continue;
    eliminate_row(f, data.data() + r * cols, pivot, pivot_col, cols);
  }
}

void multiply(const ExtField& f, std::span<const Elem> a, std::span<const Elem> b, std::span<Elem> out,
              std::size_t n, std::size_t k, std::size_t m) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      Elem acc{0};
      for (std::size_t t = 0; t < k; ++t) acc = f.add(acc, f.mul(a[i * k + t], b[t * m + j]));
      out[i * m + j] = acc;
    }
  }
}

ImageCounts image_counts(const FMatrix& m, std::uint64_t budget) {
  const auto plan = plan_enumeration(m, budget);
  const ExtField& f = m.field();
  ImageCounts out;
  out.total = plan.total;
  std::vector<Elem> x(m.rows());
  for (std::uint64_t idx = 0; idx < plan.total; ++idx) {
    decode_point(idx, f.order(), x);
    ++out.counts[image_key(f, m, x, plan.place)];
  }
  return out;
}

}  // namespace serial

}  // namespace treepin::kernels
