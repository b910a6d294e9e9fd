#include <doctest.h>

#include <cmath>

#include <dcrn/dde.hpp>
#include <dcrn/errors.hpp>
#include <dcrn/history.hpp>
#include <dcrn/network.hpp>

#include "oracle.hpp"

using namespace dcrn;
using Eigen::Vector2d;
using Eigen::VectorXd;

TEST_CASE("field at a constant segment") {
  const ReactionNetwork net = parse_network(oracle::kExample);
  for (auto [c1, c2] : {std::pair{0.5, 1.5}, {2.0, 0.25}, {1.0, 1.0}}) {
    const VectorXd f = rhs(net, HistoryFunction::constant(Vector2d(c1, c2)));
    CHECK(f[0] == doctest::Approx(c1 * c2 + c1 * c1 - 2 * c1 * c1).epsilon(1e-12));
    CHECK(f[1] == doctest::Approx(-c1 * c2 + c1 * c1).epsilon(1e-12));
    const VectorXd g = rhs_constant(net, Vector2d(c1, c2));
    CHECK((f - g).norm() < 1e-12);
  }
  CHECK(rhs_constant(net, Vector2d(0.7, 0.7)).norm() < 1e-15);
}

TEST_CASE("field at a square-root segment") {
  const ReactionNetwork net = parse_network(oracle::kExample);
  const HistoryFunction theta({HistoryFunction::sqrt_affine(1, 1), HistoryFunction::Constant{0.5}});
  const VectorXd f = rhs(net, theta);
  CHECK(f[0] == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(std::abs(f[1]) < 1e-10);
}

TEST_CASE("equilibrium history stays put") {
  const ReactionNetwork net = parse_network(oracle::kExample);
  const double xb = 0.8;
  SimConfig cfg;
  cfg.t_end = 20;
  const Trajectory traj = simulate(net, HistoryFunction::constant(Vector2d(xb, xb)), cfg);
  const double dev = (traj.states().array() - xb).abs().maxCoeff();
  CHECK(dev <= 1e-12 * cfg.t_end);
}

TEST_CASE("boundary history is frozen") {
  const ReactionNetwork net = parse_network(oracle::kExample);
  const HistoryFunction theta({HistoryFunction::Constant{0.0}, HistoryFunction::affine(1, 1)});
  SimConfig cfg;
  cfg.t_end = 10;
  const Trajectory traj = simulate(net, theta, cfg);
  CHECK(traj.states().row(0).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK((traj.states().row(1).array() - 1.0).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("linear decay matches the exponential") {
  const ReactionNetwork net = parse_network("species A B\nreaction A -> B ; rate 1 ; delay none");
  SimConfig cfg;
  cfg.t_end = 1;
  const Trajectory traj = simulate_ode(net, Vector2d(1, 0), cfg);
  CHECK(std::abs(traj.states()(0, traj.samples() - 1) - std::exp(-1.0)) < 1e-6);
  CHECK(std::abs(traj(0.505)[0] - std::exp(-0.505)) < 1e-6);
}

TEST_CASE("undelayed example conserves the sum") {
  const ReactionNetwork net = parse_network(
      "species X1 X2\nreaction 2 X1 -> X1 + X2 ; rate 1 ; delay none\nreaction X1 + X2 -> 2 X1 ; rate 1 ; delay none");
  SimConfig cfg;
  cfg.t_end = 60;
  const Trajectory traj = simulate_ode(net, Vector2d(0.5, 1.5), cfg);
  const VectorXd end = traj.states().col(traj.samples() - 1);
  CHECK(std::abs(end[0] - 1.0) < 1e-8);
  CHECK(std::abs(end[1] - 1.0) < 1e-8);
}

TEST_CASE("zero delay agrees with the ode") {
  const ReactionNetwork delayed = parse_network(
      "species A B\nreaction 2 A -> B ; rate 1 ; delay const(0)\nreaction B -> A ; rate 3 ; delay none");
  SimConfig cfg;
  cfg.t_end = 5;
  const Trajectory a = simulate(delayed, HistoryFunction::constant(Vector2d(1, 0.2)), cfg);
  const Trajectory b = simulate_ode(delayed, Vector2d(1, 0.2), cfg);
  CHECK((a.states() - b.states()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("constant delay against the method of steps by hand") {
  // A ->(1, tau=1) B from A = 1 on the history: on [0,1] A' = -A, B' = 1.
  const ReactionNetwork net = parse_network("species A B\nreaction A -> B ; rate 1 ; delay const(1)");
  SimConfig cfg;
  cfg.t_end = 2;
  cfg.h = 0.01;
  const Trajectory traj = simulate(net, HistoryFunction::constant(Vector2d(1, 0)), cfg);
  CHECK(std::abs(traj(1.0)[1] - 1.0) < 1e-10);
  // on [1,2] B' = A(t-1) = exp(-(t-1)), so B(2) = 1 + (1 - 1/e)
  CHECK(std::abs(traj(2.0)[1] - (2.0 - std::exp(-1.0))) < 1e-7);
}

TEST_CASE("simulation is deterministic") {
  const ReactionNetwork net = parse_network(oracle::kExample);
  const HistoryFunction theta({HistoryFunction::sqrt_affine(1, 1), HistoryFunction::Constant{0.5}});
  SimConfig cfg;
  cfg.t_end = 5;
  const Trajectory a = simulate(net, theta, cfg);
  const Trajectory b = simulate(net, theta, cfg);
  CHECK(a.states() == b.states());
}

TEST_CASE("configuration and failure") {
  const ReactionNetwork net = parse_network(oracle::kExample);
  SimConfig bad;
  bad.h = 0.5;  // more than tau / 4
  CHECK_THROWS_AS(simulate(net, HistoryFunction::constant(Vector2d(1, 1)), bad), std::invalid_argument);
  CHECK_THROWS_AS(simulate(net, HistoryFunction::constant(Vector2d(-1, 1)), SimConfig{}), std::invalid_argument);

  const ReactionNetwork stiff = parse_network("species A\nreaction A -> 0 ; rate 10000 ; delay none");
  SimConfig cfg;
  cfg.h = 0.01;
  cfg.t_end = 1;
  try {
    simulate(stiff, HistoryFunction::constant(VectorXd::Ones(1)), cfg);
    FAIL("expected an integration failure");
  } catch (const IntegrationFailure& e) {
    CHECK(e.time() >= 0.0);
    CHECK(e.time() <= 1.0);
  }
}

TEST_CASE("chain expansion") {
  const ReactionNetwork net = parse_network("species A B\nreaction A -> B ; rate 2 ; delay const(1)");
  const ReactionNetwork chain = expand_chain(net, 2);
  CHECK(chain.num_species() == 4);
  REQUIRE(chain.num_reactions() == 3);
  CHECK(chain.reaction(0).rate == 2.0);
  CHECK(chain.reaction(0).product.coeffs[2] == 1);
  CHECK(chain.reaction(1).rate == 2.0);
  CHECK(chain.reaction(2).rate == 2.0);
  CHECK(chain.reaction(2).product.coeffs.head(2) == Eigen::Vector2i(0, 1));
  CHECK(chain.delay_free());

  const ReactionNetwork plain = parse_network("species A B\nreaction A -> B ; rate 2 ; delay none");
  CHECK(to_text(expand_chain(plain, 7)) == to_text(plain));

  const ReactionNetwork ex = expand_chain(parse_network(oracle::kExampleConst), 3);
  CHECK(ex.num_species() == 5);
  CHECK(ex.num_reactions() == 5);
  CHECK(ex.reaction(1).rate == 3.0);
  CHECK(ex.reaction(2).rate == 3.0);

  CHECK_THROWS_AS(expand_chain(parse_network(oracle::kExample), 3), std::invalid_argument);
  CHECK_THROWS_AS(expand_chain(net, 0), std::invalid_argument);
}

TEST_CASE("chain initial state") {
  const ReactionNetwork net = parse_network("species A B\nreaction A -> B ; rate 1 ; delay const(1)");
  const HistoryFunction theta({HistoryFunction::affine(1, 2), HistoryFunction::Constant{0}});
  const VectorXd z = chain_initial_state(net, theta, 2);
  REQUIRE(z.size() == 4);
  CHECK(z[0] == 2.0);
  CHECK(z[2] == doctest::Approx(0.75));
  CHECK(z[3] == doctest::Approx(0.5));

  const ReactionNetwork ex = parse_network(oracle::kExampleConst);
  const double xb = 0.7;
  const VectorXd eq = chain_initial_state(ex, HistoryFunction::constant(Vector2d(xb, xb)), 4);
  for (int j = 2; j < 6; ++j) CHECK(eq[j] == doctest::Approx(1.0 * 0.25 * xb * xb));
  CHECK(chain_initial_state(ex, HistoryFunction::constant(Vector2d(0, 0)), 4).isZero());
}
