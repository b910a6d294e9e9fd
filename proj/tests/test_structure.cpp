#include <doctest.h>

#include <numeric>

#include <dcrn/network.hpp>
#include <dcrn/structure.hpp>

#include "oracle.hpp"

using namespace dcrn;

TEST_CASE("example stoichiometry") {
  const StoichInfo st = analyze_structure(parse_network(oracle::kExample));
  CHECK(st.stoich.col(0) == Eigen::Vector2i(-1, 1));
  CHECK(st.stoich.col(1) == Eigen::Vector2i(1, -1));
  CHECK(st.rank == 1);
  REQUIRE(st.num_conservation_laws() == 1);
  CHECK(st.ortho_basis.col(0) == Eigen::Vector2i(1, 1));
  CHECK(st.weakly_reversible);
  CHECK(st.deficiency == 0);
}

TEST_CASE("open chain and cycle") {
  const StoichInfo open = analyze_structure(
      parse_network("species A B C\nreaction A -> B ; rate 1 ; delay none\nreaction B -> C ; rate 1 ; delay none"));
  CHECK_FALSE(open.weakly_reversible);

  const StoichInfo cyc = analyze_structure(parse_network(
      "species A B C\nreaction A -> B ; rate 1 ; delay none\nreaction B -> C ; rate 1 ; delay none\n"
      "reaction C -> A ; rate 1 ; delay none"));
  CHECK(cyc.weakly_reversible);
  CHECK(cyc.linkage.size() == 1);
  CHECK(cyc.deficiency == 0);
  CHECK(cyc.ortho_basis.col(0) == Eigen::Vector3i(1, 1, 1));
}

TEST_CASE("complex graph") {
  const ComplexGraph g = complex_graph(parse_network(oracle::kExample));
  CHECK(g.num_nodes() == 2);
  REQUIRE(g.edges.size() == 2);
  CHECK(g.edges[0].from == g.edges[1].to);
  CHECK(g.edges[0].to == g.edges[1].from);

  const ComplexGraph one = complex_graph(parse_network("species A B\nreaction A -> B ; rate 1 ; delay none"));
  CHECK(one.num_nodes() == 2);
  CHECK(one.edges.size() == 1);

  const ComplexGraph par = complex_graph(
      parse_network("species A B\nreaction A -> B ; rate 1 ; delay none\nreaction A -> B ; rate 2 ; delay none"));
  CHECK(par.num_nodes() == 2);
  REQUIRE(par.edges.size() == 2);
  CHECK(par.edges[0].weight == 1.0);
  CHECK(par.edges[1].weight == 2.0);
}

TEST_CASE("full rank network has no conservation laws") {
  const StoichInfo st = analyze_structure(parse_network("species A\nreaction A -> 2 A ; rate 1 ; delay none"));
  CHECK(st.rank == 1);
  CHECK(st.num_conservation_laws() == 0);
}

TEST_CASE("conservation basis is integral and coprime") {
  const StoichInfo st = analyze_structure(parse_network(
      "species A B C D\nreaction A + B <-> C ; rate 1 ; delay none\nreaction C <-> 2 D ; rate 1 ; delay none"));
  CHECK(st.rank == 2);
  REQUIRE(st.num_conservation_laws() == 2);
  CHECK((st.stoich.transpose() * st.ortho_basis).isZero());
  for (int j = 0; j < 2; ++j) {
    int g = 0;
    for (int i = 0; i < 4; ++i) g = std::gcd(g, std::abs(st.ortho_basis(i, j)));
    CHECK(g == 1);
  }
  CHECK(st.deficiency == 0);
}
