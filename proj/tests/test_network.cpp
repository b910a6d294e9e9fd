#include <doctest.h>

#include <dcrn/errors.hpp>
#include <dcrn/network.hpp>
#include <dcrn/rational.hpp>

#include "oracle.hpp"

using namespace dcrn;

TEST_CASE("parse the two-species example") {
  const ReactionNetwork net = parse_network(oracle::kExample);
  CHECK(net.num_species() == 2);
  CHECK(net.num_reactions() == 2);
  CHECK(net.max_delay() == 1.0);
  CHECK(net.species()[1].name == "X2");
  CHECK(net.reaction(0).source.coeffs == Eigen::Vector2i(2, 0));
  CHECK(net.reaction(0).product.coeffs == Eigen::Vector2i(1, 1));
  CHECK_FALSE(net.reaction(0).kernel.is_point_mass());
  CHECK(net.reaction(1).kernel.is_zero_delay());
  CHECK_FALSE(net.delay_free());
}

TEST_CASE("no-delay and constant-delay networks") {
  const ReactionNetwork a = parse_network("species A\nreaction A -> 2 A ; rate 1 ; delay none");
  CHECK(a.num_species() == 1);
  CHECK(a.max_delay() == 0.0);
  CHECK(a.delay_free());

  const ReactionNetwork b = parse_network("species A B\nreaction A -> B ; rate 2 ; delay const(0.5)");
  CHECK(b.reaction(0).kernel.is_point_mass());
  CHECK(b.reaction(0).kernel.point_delay() == 0.5);
  CHECK(b.max_delay() == 0.5);
  CHECK(b.reaction(0).rate == 2.0);
}

TEST_CASE("reversible arrows expand into two reactions") {
  const ReactionNetwork net =
      parse_network("species A B\nreaction A <-> B ; rate 2, rate2 3 ; delay const(1), delay2 uniform(0,2)");
  REQUIRE(net.num_reactions() == 2);
  CHECK(net.reaction(1).source == net.reaction(0).product);
  CHECK(net.reaction(1).rate == 3.0);
  CHECK(net.reaction(1).kernel.support() == 2.0);
  CHECK(net.max_delay() == 2.0);

  const ReactionNetwork same = parse_network("species A B\nreaction A <-> B ; rate 2 ; delay none");
  CHECK(same.reaction(1).rate == 2.0);
}

TEST_CASE("zero complex and comments") {
  const ReactionNetwork net = parse_network("# inflow\nspecies A\nreaction 0 -> A ; rate 1 ; delay none # feed\n");
  CHECK(net.reaction(0).source.is_zero());
}

TEST_CASE("parse errors carry line and column") {
  auto fails_at = [](const char* text, int line) {
    try {
      parse_network(text);
    } catch (const ParseError& e) {
      return e.line() == line;
    }
    return false;
  };
  CHECK(fails_at("species A\nreaction A -> Q ; rate 1 ; delay none", 2));
  CHECK(fails_at("species A B\nreaction A -> B ; rate 0 ; delay none", 2));
  CHECK(fails_at("species A B\nreaction A -> B ; rate -1 ; delay none", 2));
  CHECK(fails_at("species A A", 1));
  CHECK(fails_at("species A\n\nreaction A -> A ; rate 1 ; delay none", 3));
  CHECK(fails_at("species A B\nreaction A -> B ; rate 1 ; delay uniform(1,1)", 2));
  CHECK(fails_at("species A B\nreaction A -> B ; rate 1 ; delay const(-1)", 2));
  CHECK(fails_at("species A B\nreaction A -> B ; rate 1, rate2 2 ; delay none", 2));
  CHECK(fails_at("species A B\nreaction A B ; rate 1 ; delay none", 2));
  CHECK(fails_at("species A B\nreaction A -> B ; rate 1 ; delay gamma(1)", 2));
  CHECK(fails_at("", 1));
  CHECK(fails_at("# only a comment\n", 1));

  try {
    parse_network("species A B\nreaction A -> Q ; rate 1 ; delay none");
  } catch (const ParseError& e) {
    CHECK(e.column() == 15);
  }
}

TEST_CASE("text round trip") {
  const ReactionNetwork net = parse_network(oracle::kExample);
  const ReactionNetwork again = parse_network(to_text(net));
  CHECK(to_text(again) == to_text(net));
  CHECK(network_hash(again) == network_hash(net));
  CHECK(again.reaction(0).kernel.describe() == "uniform(0,1)");
}

TEST_CASE("table kernels load relative to the network file") {
  const ReactionNetwork net = load_network(oracle::data("tent.net"));
  const DelayKernel& k = net.reaction(0).kernel;
  CHECK(k.support() == doctest::Approx(1.0));
  CHECK(k.density(-0.5) == doctest::Approx(2.0));
  CHECK(k.mass_before(-0.5) == doctest::Approx(0.5));
  CHECK(k.mass_before(0.0) == doctest::Approx(1.0));
  CHECK(k.first_moment() == doctest::Approx(0.5));
  CHECK(net.reaction(1).kernel.point_delay() == 0.5);
  CHECK(to_text(parse_network(to_text(net), oracle::data(""))) == to_text(net));
}

TEST_CASE("kernel moments and masses") {
  const DelayKernel u = DelayKernel::uniform(0.5, 1.5);
  CHECK(u.density(-1.0) == doctest::Approx(1.0));
  CHECK(u.density(-0.2) == 0.0);
  CHECK(u.mass_before(-1.0) == doctest::Approx(0.5));
  CHECK(u.first_moment() == doctest::Approx(1.0));
  CHECK(DelayKernel::constant(2.0).first_moment() == 2.0);
  CHECK(DelayKernel::none().first_moment() == 0.0);
  CHECK_THROWS_AS(DelayKernel::table({-1, 0}, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(DelayKernel::table({-1, 0}, {1, -1}), std::invalid_argument);
}

TEST_CASE("rational arithmetic and nullspace") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -3) == Rational(-1, 3));
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(3, 4) / Rational(3, 2) == Rational(1, 2));
  CHECK_THROWS(Rational(1, 0));

  RationalMatrix m = {{-1, 1}, {1, -1}};  // stoichiometry transposed: rows are reactions
  const auto basis = integer_nullspace(m, 2);
  REQUIRE(basis.size() == 1);
  CHECK(basis[0] == std::vector<std::int64_t>{1, 1});
}
