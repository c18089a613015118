#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "treepin/capacity.hpp"
#include "treepin/oracle.hpp"

using namespace treepin;

TEST_SUITE("capacity") {
  TEST_CASE("path of three bits") {
    const auto inst = testing::path3();
    const auto rep = analyze(inst);
    CHECK(rep.cs_dim == 1);
    CHECK(rep.cw_dim == 1);
    CHECK(rep.rl_dim == 1);
    CHECK(rep.rco_dim == 2);
    CHECK(rep.irreducible);
    CHECK(rep.argmin_edges == std::vector<int>{0, 1, 2});
    CHECK(cw(inst) == 1.0);
    CHECK(rl(inst) == 1.0);
    CHECK(rco(inst.source) == 2.0);
    CHECK(cs(inst.source) == 1.0);
  }

  TEST_CASE("single edges") {
    TreePinSource src(3, 2, {{0, 0, 1, 4}});
    CHECK(cs(src) == doctest::Approx(4 * std::log2(3.0)));
    CHECK(rco(src) == 0.0);
  }

  TEST_CASE("two-bit path with two wiretap columns") {
    const auto rep = analyze(testing::two_bit_path(true));
    CHECK(rep.cw_dim == 1);
    CHECK(rep.rl_dim == 1);  // (4 - 2) - 1
    CHECK_FALSE(rep.irreducible);
    CHECK(rep.edges[0].mcf_dim == 1);
    CHECK(rep.edges[0].residual() == 1);
  }

  TEST_CASE("formula relations on random instances") {
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
      const auto q = std::vector<std::uint32_t>{2, 3, 5}[seed % 3];
      const auto probe = random_instance(seed, 2 + seed % 6, 3, q, 0);
      const std::size_t d = probe.source.total_dim();
      const auto inst = random_instance(seed, 2 + seed % 6, 3, q, seed % (d + 1));
      const auto rep = analyze(inst);
      CHECK(rep.cw_dim <= rep.cs_dim);
      CHECK(rep.rl_dim + rep.cw_dim == d - inst.wiretapper.nw());
      CHECK(rep.rl_dim <= rep.rco_dim);
      CHECK(rep.rco_dim == d - probe.source.min_multiplicity());
      if (inst.wiretapper.nw() == 0) {
        CHECK(rep.cw_dim == rep.cs_dim);
        CHECK(rep.rl_dim == rep.rco_dim);
      }
      if (rep.irreducible) {
        CHECK(rep.cw_dim == rep.cs_dim);
        CHECK(rep.rl_dim == d - inst.wiretapper.nw() - rep.cs_dim);
      }
      CHECK(rep.cw_bits() == doctest::Approx(rep.cw_dim * std::log2(static_cast<double>(q))));
    }
  }

  TEST_CASE("rates against exhaustive entropies") {
    std::size_t checked = 0;
    for (std::uint64_t seed = 100; checked < 60; ++seed) {
      const auto q = std::vector<std::uint32_t>{2, 3}[seed % 2];
      const auto probe = random_instance(seed, 2 + seed % 4, 2, q, 0);
      const std::size_t d = probe.source.total_dim();
      if (std::pow(q, d) > (1u << 14)) continue;
      const auto inst = random_instance(seed, 2 + seed % 4, 2, q, seed % (d + 1));
      const auto o = oracle_check_instance(inst, 1u << 14);
      CHECK(o.agree());
      // C_S surrogate: min_e H(Y_e) by enumeration.
      std::size_t min_edge = SIZE_MAX;
      for (std::size_t e = 0; e < inst.source.edge_count(); ++e) {
        min_edge = std::min(min_edge, *entropy_exhaustive(inst.source.edge_selector(e)).exact_dim(q));
      }
      CHECK(min_edge == cs_dim(inst.source));
      ++checked;
    }
  }
}
