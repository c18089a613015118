#include <doctest.h>

#include <cmath>
#include <map>

#include "support.hpp"
#include "treepin/errors.hpp"
#include "treepin/simulate.hpp"

using namespace treepin;

TEST_SUITE("simulate") {
  TEST_CASE("sampling") {
    const auto f = ExtField::make(2, 2);
    CHECK(sample_block(9, 5, f) == sample_block(9, 5, f));
    CHECK(sample_block(9, 0, f).cols() == 0);
    CHECK(trial_seed(1, 2) != trial_seed(1, 3));
  }

  TEST_CASE("symbol frequencies are uniform") {
    const auto f = ExtField::make(5, 1);
    const std::size_t draws = 100000;
    const auto block = sample_block(77, draws, f);
    std::map<std::uint32_t, std::size_t> freq;
    for (auto e : block.data()) ++freq[e.value];
    const double p = 1.0 / 5.0;
    const double sigma = std::sqrt(draws * p * (1 - p));
    CHECK(freq.size() == 5);
    for (const auto& [v, c] : freq) CHECK(std::abs(static_cast<double>(c) - draws * p) <= 4 * sigma);
  }

  TEST_CASE("two-realization scheme") {
    const auto inst = testing::path3();
    const auto rep = run_protocol(testing::two_realization_scheme(), inst, 5, 100);
    CHECK(rep.decode_rate() == 1.0);
    CHECK(rep.key_agreement_rate() == 1.0);
    CHECK(rep.alignment);
    CHECK(rep.wiretap_recovery_rate() == 1.0);
    CHECK(rep.uncertainty_dim == 1);
    CHECK(rep.uncertainty_bits() == 2.0);
    REQUIRE(rep.uncertainty_count.has_value());
    CHECK(*rep.uncertainty_count == 4);
  }

  TEST_CASE("single edge") {
    TreePinSource src(3, 2, {{0, 0, 1, 2}});
    const Instance inst{src, {FMatrix(src.base_field(), 2, 0)}};
    CommScheme s;
    s.field = ExtField::make(3, 1);
    s.transmit = FMatrix(s.field, 2, 0);
    const auto rep = run_protocol(s, inst, 1, 10);
    CHECK(rep.decode_rate() == 1.0);
    CHECK(rep.key_agreement_rate() == 1.0);
    CHECK(rep.key_dim == 2);
  }

  TEST_CASE("synthesized schemes on random instances") {
    std::size_t trials = 0;
    for (const auto& inst : testing::irreducible_suite(900, 200, {2, 3, 5}, 7, 3)) {
      const auto s = synth_random(inst, 4);
      const auto rep = run_protocol(s, inst, 8, 10);
      CHECK(rep.decode_successes == 10);
      CHECK(rep.key_agreements == 10);
      CHECK(rep.wiretap_recoveries == 10);
      CHECK(rep.uncertainty_dim == inst.source.min_multiplicity());
      if (rep.uncertainty_count) {
        CHECK(*rep.uncertainty_count == static_cast<std::uint64_t>(std::llround(
                                            std::pow(s.field->order(), static_cast<double>(rep.uncertainty_dim)))));
      }
      trials += rep.trials;
    }
    CHECK(trials == 2000);
  }

  TEST_CASE("keys are uniform") {
    const auto inst = testing::path3();
    const auto s = synth_explicit_unit(inst);
    const auto key = extract_key(s);
    std::map<std::uint32_t, std::size_t> freq;
    const std::size_t n = 20000;
    for (std::size_t t = 0; t < n; ++t) {
      const auto x = sample_block(trial_seed(3, t), 3, s.field);
      ++freq[mul(x, key.matrix)(0, 0).value];
    }
    const double p = 1.0 / 4.0;
    const double sigma = std::sqrt(n * p * (1 - p));
    CHECK(freq.size() == 4);
    for (const auto& [v, c] : freq) CHECK(std::abs(static_cast<double>(c) - n * p) <= 4 * sigma);
  }

  TEST_CASE("undecodable scheme is reported") {
    const auto inst = testing::path3();
    auto s = testing::two_realization_scheme();
    s.transmit(2, 1) = Elem{0};
    CHECK_THROWS_AS(run_protocol(s, inst, 1, 4), SimulationError);
  }

  TEST_CASE("trace") {
    const auto rep = run_protocol(testing::two_realization_scheme(), testing::path3(), 2, 3, true);
    CHECK(rep.trace.size() == 3);
    CHECK(rep.trace[0].rfind("trial 0 ", 0) == 0);
  }
}
