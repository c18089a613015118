#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "treepin/errors.hpp"
#include "treepin/linalg.hpp"

using namespace treepin;

TEST_SUITE("model") {
  TEST_CASE("path instance loads") {
    const auto text =
        "# path of three bits\n"
        "treepin q=2\n"
        "vertices 4\n"
        "edge 0 0 1 1\n"
        "edge 1 1 2 1\n"
        "\n"
        "edge 2 2 3 1\n"
        "wiretap cols=1\n"
        "1\n1\n1\n";
    const auto inst = load_instance(text);
    CHECK(inst.source.total_dim() == 3);
    CHECK(inst.wiretapper.nw() == 1);
    CHECK(inst == testing::path3());
    CHECK(load_instance(save_instance(inst)) == inst);
    CHECK(save_instance(load_instance(save_instance(inst))) == save_instance(inst));
  }

  TEST_CASE("empty wiretapper") {
    const auto inst = load_instance("treepin q=3\nvertices 2\nedge 0 0 1 2\nwiretap cols=0\n");
    CHECK(inst.wiretapper.matrix.rows() == 2);
    CHECK(inst.wiretapper.nw() == 0);
    CHECK(load_instance(save_instance(inst)) == inst);
  }

  TEST_CASE("validation errors") {
    const std::string head = "treepin q=2\nvertices 4\nedge 0 0 1 1\nedge 1 1 2 1\nedge 2 2 3 1\n";
    CHECK_THROWS_WITH_AS(load_instance(head + "wiretap cols=2\n1 0\n1 0\n1 0\n"), "W not full column rank",
                         ValidationError);
    CHECK_THROWS_AS(load_instance("treepin q=4\nvertices 2\nedge 0 0 1 1\nwiretap cols=0\n"), ValidationError);
    CHECK_THROWS_AS(load_instance("treepin q=2\nvertices 3\nedge 0 0 1 1\nedge 1 0 1 1\nwiretap cols=0\n"),
                    ValidationError);
    CHECK_THROWS_AS(load_instance("treepin q=2\nvertices 2\nedge 0 0 1 0\nwiretap cols=0\n"), ValidationError);
    CHECK_THROWS_AS(load_instance("treepin q=2\nvertices 2\nedge 0 0 5 1\nwiretap cols=0\n"), ValidationError);
    CHECK_THROWS_AS(load_instance(head + "wiretap cols=1\n1\n1\n"), ParseError);
    CHECK_THROWS_AS(load_instance(head + "wiretap cols=1\n1\n2\n1\n"), ParseError);
    CHECK_THROWS_AS(load_instance("treepin q=2\nvertex 2\n"), ParseError);
  }

  TEST_CASE("node views") {
    const auto inst = testing::two_bit_path(true);
    const auto& src = inst.source;
    CHECK(src.node_view(0).coords == std::vector<std::size_t>{0, 1});
    CHECK(src.node_view(1).coords == std::vector<std::size_t>{0, 1, 2});
    CHECK(src.node_view(3).coords == std::vector<std::size_t>{3});
    for (int v = 0; v < src.vertex_count(); ++v) {
      const auto view = src.node_view(v);
      CHECK(rank(view.selector) == view.coords.size());
      CHECK((src.is_leaf(v) == (src.incident_edges(v).size() == 1)));
    }
    FMatrix all(src.base_field(), src.total_dim(), 0);
    for (std::size_t e = 0; e < src.edge_count(); ++e) all = hcat(all, src.edge_selector(e));
    CHECK(all == FMatrix::identity(src.base_field(), src.total_dim()));
  }

  TEST_CASE("random instances") {
    const auto single = random_instance(5, 2, 1, 2, 0);
    CHECK(single.source.edge_count() == 1);
    CHECK(single.wiretapper.nw() == 0);
    CHECK(random_instance(42, 6, 3, 3, 2) == random_instance(42, 6, 3, 3, 2));
    CHECK_THROWS_AS(random_instance(1, 3, 1, 2, 5), ValidationError);
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      const auto inst = random_instance(seed, 6, 3, 2, seed % 3);
      CHECK(inst.source.edge_count() == 5);
      CHECK(rank(inst.wiretapper.matrix) == inst.wiretapper.nw());
      // Re-validating through the text format exercises the tree check.
      CHECK(load_instance(save_instance(inst)) == inst);
    }
  }
}
