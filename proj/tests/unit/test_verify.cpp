#include <doctest.h>

#include <random>

#include "support.hpp"
#include "treepin/capacity.hpp"
#include "treepin/errors.hpp"
#include "treepin/verify.hpp"

using namespace treepin;

namespace {

// Multiplication by a field element as a 2x2 matrix on (c0, c1) coordinates.
FMatrix as_matrix(const ExtField& f4, Elem a, const FieldPtr& f2) {
  FMatrix m(f2, 2, 2);
  for (unsigned j = 0; j < 2; ++j) {
    const auto col = f4.coeffs(f4.mul(a, f4.monomial(j)));
    for (unsigned i = 0; i < 2; ++i) m(i, j) = Elem{col[i]};
  }
  return m;
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("two-realization scheme uses the stated matrices") {
    const auto s = testing::two_realization_scheme();
    const auto f2 = ExtField::make(2, 1);
    const auto m = FMatrix::from_values(f2, 2, 2, {1, 1, 1, 0});
    const auto m_plus_i = FMatrix::from_values(f2, 2, 2, {0, 1, 1, 1});
    CHECK(as_matrix(*s.field, s.transmit(1, 0), f2) == m);
    CHECK(as_matrix(*s.field, s.transmit(1, 1), f2) == m_plus_i);
  }

  TEST_CASE("two-realization scheme passes") {
    const auto inst = testing::path3();
    const auto s = testing::two_realization_scheme();
    CHECK(check_perfect_omniscience(s, inst.source) == std::vector<bool>{true, true, true, true});
    CHECK(check_perfect_alignment(s, inst.wiretapper));
    CHECK(leakage_dim(s, inst.wiretapper) == 1);
    CHECK(leakage_bits_per_realization(s, inst.source, inst.wiretapper) == 1.0);
    // Z_w is the sum of both messages.
    CHECK(mul(s.transmit, FMatrix::from_values(s.field, 2, 1, {1, 1})) == lift(inst.wiretapper.matrix, s.field));
    const auto rep = verify_scheme(s, inst);
    CHECK(rep.all_pass());
    CHECK(rep.key_dim == 1);
    CHECK(rep.leakage_lower_bound);
    CHECK(rep.leakage_upper_bound);
  }

  TEST_CASE("a zero coefficient breaks omniscience at the far leaf") {
    const auto inst = testing::path3();
    auto s = testing::two_realization_scheme();
    s.transmit(2, 1) = Elem{0};  // node 2 now sends x X_b only
    const auto omni = check_perfect_omniscience(s, inst.source);
    CHECK_FALSE(omni[0]);
    CHECK_FALSE(verify_scheme(s, inst).all_pass());
  }

  TEST_CASE("single edge with no messages") {
    TreePinSource src(2, 2, {{0, 0, 1, 2}});
    const Instance inst{src, {FMatrix(src.base_field(), 2, 0)}};
    CommScheme s;
    s.field = ExtField::make(2, 1);
    s.transmit = FMatrix(s.field, 2, 0);
    CHECK(check_perfect_omniscience(s, src) == std::vector<bool>{true, true});
    CHECK(check_perfect_alignment(s, inst.wiretapper));
    CHECK(verify_scheme(s, inst).all_pass());
    CHECK(verify_scheme(s, inst).key_dim == 2);
  }

  TEST_CASE("scheme for the wrong wiretapper") {
    const auto inst = testing::path3();
    const auto s = synth_explicit_unit(inst);
    std::mt19937_64 rng(3);
    int found = 0;
    for (int t = 0; t < 50 && found < 5; ++t) {
      FMatrix w(inst.source.base_field(), 3, 1);
      for (auto& e : w.data()) e = Elem{static_cast<std::uint32_t>(rng() & 1)};
      if (rank(w) == 0) continue;
      const Wiretapper other{w};
      const bool inside = in_col_span(s.transmit, lift(w, s.field));
      CHECK(check_perfect_alignment(s, other) == inside);
      if (!inside) {
        ++found;
        CHECK(leakage_dim(s, other) == 2);
      }
    }
    CHECK(found > 0);
  }

  TEST_CASE("key inside the communication is not secret") {
    const auto inst = testing::path3();
    const auto s = synth_explicit_unit(inst);
    KeyExtractor bad{s.transmit.column(0), {}};
    CHECK_FALSE(check_key_secrecy(s, bad, inst.wiretapper));
    CHECK(check_key_secrecy(s, extract_key(s), inst.wiretapper));
  }

  TEST_CASE("no wiretapper on a star") {
    TreePinSource src(3, 4, {{0, 0, 1, 2}, {1, 0, 2, 1}, {2, 0, 3, 2}});
    const Instance inst{src, {FMatrix(src.base_field(), 5, 0)}};
    const auto s = synth_random(inst, 1);
    const auto rep = verify_scheme(s, inst);
    CHECK(rep.all_pass());
    CHECK(rep.leakage_dim == rep.rank_f);
    CHECK(rep.leakage_dim == rco_dim(src));
    CHECK(rep.key_dim == cs_dim(src));
  }

  TEST_CASE("ownership is checked") {
    const auto inst = testing::path3();
    auto s = testing::two_realization_scheme();
    s.owners = {0, 2};  // node 0 does not see X_b
    CHECK_FALSE(check_non_interactive(s, inst.source));
    CHECK_FALSE(verify_scheme(s, inst).all_pass());
  }

  TEST_CASE("verification ignores the certificate") {
    const auto inst = testing::path3();
    auto s = synth_explicit_unit(inst);
    const auto with = verify_scheme(s, inst);
    s.certificate = FMatrix(s.field, 1, 3);
    const auto garbage = verify_scheme(s, inst);
    s.certificate.reset();
    const auto without = verify_scheme(s, inst);
    CHECK(with.all_pass());
    CHECK(garbage.all_pass());
    CHECK(without.all_pass());
    CHECK(with.leakage_dim == without.leakage_dim);
  }

  TEST_CASE("shape mismatch") {
    const auto inst = testing::two_bit_path(false);
    CHECK_THROWS_AS(check_perfect_omniscience(testing::two_realization_scheme(), inst.source), ShapeError);
    CHECK_FALSE(verify_scheme(testing::two_realization_scheme(), inst).shape_ok);
  }
}
