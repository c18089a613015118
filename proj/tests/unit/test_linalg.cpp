#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "support.hpp"
#include "treepin/errors.hpp"
#include "treepin/linalg.hpp"

using namespace treepin;

namespace {

FMatrix random_matrix(const FieldPtr& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> pick(0, f->order() - 1);
  FMatrix m(f, r, c);
  for (auto& e : m.data()) e = Elem{pick(rng)};
  return m;
}

// Leibniz expansion, independent of elimination.
Elem leibniz_det(const FMatrix& m) {
  const ExtField& f = m.field();
  std::vector<std::size_t> perm(m.rows());
  std::iota(perm.begin(), perm.end(), 0);
  Elem total = f.zero();
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j] ? 1 : 0;
    }
    Elem term = f.one();
    for (std::size_t i = 0; i < perm.size(); ++i) term = f.mul(term, m(i, perm[i]));
    total = inversions % 2 ? f.sub(total, term) : f.add(total, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// All vectors of F_2^rows in the column span of m, as bitmasks.
std::vector<unsigned> span_f2(const FMatrix& m) {
  std::vector<unsigned> out;
  for (unsigned coeffs = 0; coeffs < (1u << m.cols()); ++coeffs) {
    unsigned v = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      unsigned bit = 0;
      for (std::size_t c = 0; c < m.cols(); ++c) bit ^= ((coeffs >> c) & 1u) & m(r, c).value;
      v |= bit << r;
    }
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

TEST_SUITE("linalg") {
  const auto f2 = ExtField::make(2, 1);

  TEST_CASE("rref examples") {
    const auto id = FMatrix::identity(f2, 3);
    const auto r = rref(id);
    CHECK(r.reduced == id);
    CHECK(r.pivots == std::vector<std::size_t>{0, 1, 2});
    CHECK(rref(FMatrix(f2, 3, 4)).rank() == 0);
    const auto r2 = rref(FMatrix::from_values(f2, 2, 2, {1, 1, 1, 1}));
    CHECK(r2.reduced == FMatrix::from_values(f2, 2, 2, {1, 1, 0, 0}));
    CHECK(r2.rank() == 1);
  }

  TEST_CASE("determinants") {
    CHECK(det(FMatrix::identity(f2, 4)) == Elem{1});
    CHECK(det(FMatrix::from_values(f2, 2, 2, {1, 1, 1, 0})) == Elem{1});
    CHECK(det(FMatrix::from_values(f2, 2, 2, {0, 1, 1, 1})) == Elem{1});
    CHECK_THROWS_AS(det(FMatrix(f2, 2, 3)), ShapeError);
    std::mt19937_64 rng(7);
    for (const auto& f : {ExtField::make(5, 1), ExtField::make(2, 3), ExtField::make(3, 2)}) {
      for (int t = 0; t < 50; ++t) {
        const auto a = random_matrix(f, 4, 4, rng);
        const auto b = random_matrix(f, 4, 4, rng);
        CHECK(det(a) == leibniz_det(a));
        CHECK(det(mul(a, b)) == f->mul(det(a), det(b)));
      }
    }
  }

  TEST_CASE("inverse of random invertible matrices over F_9") {
    const auto f9 = ExtField::make(3, 2);
    std::mt19937_64 rng(9);
    int done = 0;
    while (done < 100) {
      const auto a = random_matrix(f9, 4, 4, rng);
      if (det(a).value == 0) {
        CHECK_THROWS_AS(inverse(a), SingularMatrixError);
        continue;
      }
      CHECK(mul(inverse(a), a) == FMatrix::identity(f9, 4));
      ++done;
    }
  }

  TEST_CASE("solve_right") {
    std::mt19937_64 rng(11);
    const auto f = ExtField::make(5, 1);
    for (int t = 0; t < 100; ++t) {
      const auto a = random_matrix(f, 4, 3, rng);
      const auto b = random_matrix(f, 4, 2, rng);
      if (rank(hcat(a, b)) == rank(a)) {
        CHECK(mul(a, solve_right(a, b)) == b);
      } else {
        CHECK_THROWS_AS(solve_right(a, b), NoSolutionError);
      }
      const auto x = random_matrix(f, 3, 2, rng);
      CHECK(mul(a, solve_right(a, mul(a, x))) == mul(a, x));
    }
    CHECK_THROWS_AS(solve_right(FMatrix(f, 3, 2), FMatrix(f, 2, 1)), ShapeError);
  }

  TEST_CASE("left nullspace") {
    CHECK(left_nullspace_basis(FMatrix::identity(f2, 3)).rows() == 0);
    const auto ones = FMatrix::from_values(f2, 3, 1, {1, 1, 1});
    const auto n = left_nullspace_basis(ones);
    CHECK(n.rows() == 2);
    CHECK(mul(n, ones).is_zero());
    // Exhaustive count of y with y * ones = 0 over F_2^3 is 4 = 2^2.
    int zeros = 0;
    for (unsigned y = 0; y < 8; ++y) zeros += (__builtin_popcount(y) % 2 == 0) ? 1 : 0;
    CHECK(zeros == 4);
    std::mt19937_64 rng(13);
    const auto f = ExtField::make(3, 1);
    for (int t = 0; t < 100; ++t) {
      const auto m = random_matrix(f, 6, 1 + t % 5, rng);
      const auto l = left_nullspace_basis(m);
      CHECK(m.rows() == rank(m) + l.rows());
      CHECK(mul(l, m).is_zero());
      CHECK(rank(l) == l.rows());
    }
  }

  TEST_CASE("column space intersection against enumeration over F_2") {
    // Two-bit path: edge a block versus the two wiretap columns.
    const auto a = FMatrix::from_values(f2, 4, 2, {1, 0, 0, 1, 0, 0, 0, 0});
    const auto w = FMatrix::from_values(f2, 4, 2, {1, 0, 1, 0, 0, 1, 0, 1});
    const auto i = col_space_intersect(a, w);
    CHECK(i.cols() == 1);
    CHECK(i == FMatrix::from_values(f2, 4, 1, {1, 1, 0, 0}));
    CHECK(col_space_intersect(a, a).cols() == 2);
    const auto disjoint = FMatrix::from_values(f2, 4, 1, {0, 0, 1, 0});
    CHECK(col_space_intersect(a, disjoint).cols() == 0);

    std::mt19937_64 rng(17);
    for (int t = 0; t < 200; ++t) {
      const auto x = random_matrix(f2, 6, 1 + t % 4, rng);
      const auto y = random_matrix(f2, 6, 1 + (t / 4) % 4, rng);
      const auto sx = span_f2(x);
      const auto sy = span_f2(y);
      std::vector<unsigned> both;
      std::set_intersection(sx.begin(), sx.end(), sy.begin(), sy.end(), std::back_inserter(both));
      const auto basis = col_space_intersect(x, y);
      CHECK(both.size() == (1u << basis.cols()));
      CHECK(basis.cols() == rank(x) + rank(y) - rank(hcat(x, y)));
      CHECK(rank(basis) == basis.cols());
      for (std::size_t c = 0; c < basis.cols(); ++c) {
        CHECK(in_col_span(x, basis.column(c)));
        CHECK(in_col_span(y, basis.column(c)));
      }
    }
  }

  TEST_CASE("in_col_span examples") {
    const auto a = FMatrix::from_values(f2, 3, 1, {1, 1, 0});
    CHECK(in_col_span(a, FMatrix(f2, 3, 1)));
    CHECK(in_col_span(a, a));
    CHECK_FALSE(in_col_span(a, FMatrix::from_values(f2, 3, 1, {0, 0, 1})));
  }

  TEST_CASE("lift") {
    const auto f4 = ExtField::make(2, 2);
    const auto f16 = ExtField::make(2, 4);
    CHECK(lift(FMatrix::identity(f2, 3), f16) == FMatrix::identity(f16, 3));
    const auto w = lift(testing::path3().wiretapper.matrix, f4);
    CHECK(w == FMatrix::from_values(f4, 3, 1, {1, 1, 1}));
    CHECK(rank(w) == 1);
    std::mt19937_64 rng(19);
    for (int t = 0; t < 50; ++t) {
      const auto m = random_matrix(f2, 6, 3, rng);
      CHECK(rank(lift(m, f16)) == rank(m));
    }
    CHECK_THROWS_AS(lift(FMatrix::identity(f2, 2), ExtField::make(3, 2)), FieldError);
  }
}
