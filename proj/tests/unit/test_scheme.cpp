#include <doctest.h>

#include <random>

#include "support.hpp"
#include "treepin/capacity.hpp"
#include "treepin/errors.hpp"
#include "treepin/verify.hpp"

using namespace treepin;

TEST_SUITE("scheme") {
  TEST_CASE("extension degree") {
    CHECK(choose_extension_degree(testing::path3().source) == 2);
    TreePinSource star5(5, 5, {{0, 0, 1, 1}, {1, 0, 2, 1}, {2, 0, 3, 1}, {3, 0, 4, 1}});
    CHECK(choose_extension_degree(star5) == 1);
    std::vector<Edge> edges;
    for (int i = 0; i < 8; ++i) edges.push_back({i, i, i + 1, 2});
    CHECK(choose_extension_degree(TreePinSource(2, 9, edges)) == 5);
  }

  TEST_CASE("random synthesis on the path of three bits") {
    const auto inst = testing::path3();
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto s = synth_random(inst, seed);
      CHECK(s.extension_degree() == 2);
      CHECK(rank(s.transmit) == 2);
      CHECK(mul(*s.certificate, lift(inst.wiretapper.matrix, s.field)).is_zero());
      CHECK(s.owners == std::vector<int>{1, 2});
      CHECK(s.root == 0);
      CHECK(synth_random(inst, seed) == s);
    }
  }

  TEST_CASE("star without wiretapper") {
    TreePinSource src(2, 4, {{0, 0, 1, 1}, {1, 0, 2, 1}, {2, 0, 3, 1}});
    const Instance inst{src, {FMatrix(src.base_field(), 3, 0)}};
    const auto s = synth_random(inst, 3);
    CHECK(s.transmit.rows() == 3);
    CHECK(s.transmit.cols() == 2);
    CHECK(s.owners == std::vector<int>{0, 0});
    const auto key = extract_key(s);
    CHECK(key.matrix.cols() == cs_dim(src));
  }

  TEST_CASE("explicit construction on the path of three bits") {
    const auto inst = testing::path3();
    const auto s = synth_explicit_unit(inst);
    const auto& f = *s.field;
    CHECK(s.extension_degree() == 2);
    // S = [1 + x, 1, x].
    const FMatrix expected = FMatrix::from_values(s.field, 1, 3, {3, 1, 2});
    CHECK(*s.certificate == expected);
    CHECK(f.add(f.add(Elem{3}, Elem{1}), Elem{2}) == f.zero());
    CHECK(synth_explicit_unit(inst) == s);
  }

  TEST_CASE("explicit construction preconditions") {
    TreePinSource src(2, 3, {{0, 0, 1, 1}, {1, 1, 2, 1}});
    const Instance full{src, {FMatrix::from_values(src.base_field(), 2, 2, {1, 0, 1, 1})}};
    CHECK_THROWS_AS(synth_explicit_unit(full), SynthesisError);
    const Instance none{src, {FMatrix(src.base_field(), 2, 0)}};
    CHECK_THROWS_AS(synth_explicit_unit(none), SynthesisError);
    CHECK_THROWS_AS(synth_explicit_unit(testing::two_bit_path(false)), SynthesisError);
    CHECK_THROWS_AS(synth_random(testing::two_bit_path(true), 1), SynthesisError);
  }

  TEST_CASE("explicit construction on random unit paths") {
    int built = 0;
    for (std::uint64_t seed = 0; built < 30; ++seed) {
      std::vector<Edge> edges;
      for (int i = 0; i < 4; ++i) edges.push_back({i, i, i + 1, 1});
      TreePinSource src(2, 5, edges);
      std::mt19937_64 rng(seed);
      FMatrix w(src.base_field(), 4, 2);
      for (auto& e : w.data()) e = Elem{static_cast<std::uint32_t>(rng() & 1)};
      if (rank(w) != 2) continue;
      const Instance inst{src, {w}};
      if (!is_irreducible(inst)) continue;
      const auto s = synth_explicit_unit(inst);
      CHECK(s.extension_degree() == 2);
      for (auto e : s.certificate->data()) CHECK(e.value != 0);
      CHECK(verify_scheme(s, inst).all_pass());
      ++built;
    }
  }

  TEST_CASE("invariants on mixed multiplicities") {
    for (const auto& inst : testing::irreducible_suite(500, 80, {2, 3, 5}, 7, 3)) {
      const auto s = synth_random(inst, 11);
      CHECK_NOTHROW(check_scheme_invariants(s, inst));
      CHECK(rank(s.transmit) == inst.source.total_dim() - inst.source.min_multiplicity());
      const auto key = extract_key(s);
      CHECK(rank(hcat(s.transmit, key.matrix)) == inst.source.total_dim());
      CHECK(key.matrix.cols() == inst.source.min_multiplicity());
      CHECK(load_scheme(save_scheme(s)) == s);
    }
  }

  TEST_CASE("assembly rejects bad certificates") {
    const auto inst = testing::path3();
    const auto f4 = ExtField::make(2, 2);
    const auto singular = FMatrix::from_values(f4, 1, 3, {0, 1, 1});
    CHECK_THROWS_AS(assemble_scheme(inst.source, f4, 0, singular, "manual"), SynthesisError);
    CHECK_THROWS_AS(assemble_scheme(inst.source, f4, 1, FMatrix::from_values(f4, 1, 3, {3, 1, 2}), "manual"),
                    SynthesisError);
  }

  TEST_CASE("serialization") {
    const auto s = synth_explicit_unit(testing::path3());
    const auto text = save_scheme(s);
    CHECK(load_scheme(text) == s);
    CHECK(save_scheme(load_scheme(text)) == text);
    const auto manual = testing::two_realization_scheme();
    CHECK(load_scheme(save_scheme(manual)) == manual);
    CHECK_THROWS_AS(load_scheme("treepin-scheme\nfield q=2 n=2 modulus=1,0,1\n"), FieldError);
    CHECK_THROWS_AS(load_scheme("nonsense\n"), ParseError);
    CHECK_THROWS_AS(load_scheme(text.substr(0, text.size() - 4)), ParseError);
  }
}
