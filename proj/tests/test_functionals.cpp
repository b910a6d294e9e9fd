#include <doctest.h>

#include <cmath>

#include <dcrn/dde.hpp>
#include <dcrn/functionals.hpp>
#include <dcrn/history.hpp>
#include <dcrn/network.hpp>
#include <dcrn/structure.hpp>

#include "oracle.hpp"

using namespace dcrn;
using Eigen::Vector2d;
using Eigen::VectorXd;

namespace {
const ReactionNetwork& example() {
  static const ReactionNetwork net = parse_network(oracle::kExample);
  return net;
}
const auto one = [](double) { return 1.0; };
}  // namespace

TEST_CASE("nested quadrature oracle reproduces the class constants") {
  // history (0.5, 1.5): integrand x1^2 = 0.25
  CHECK(std::abs(oracle::nested(one, [](double) { return 0.25; }, 1.0) - 0.125) < 1e-14);
  // history (sqrt(s+1), .): x1^2 = s + 1
  CHECK(std::abs(oracle::nested(one, [](double u) { return u + 1; }, 1.0) - 1.0 / 3.0) < 1e-14);
}

TEST_CASE("h of constant and square-root histories") {
  const auto theta = HistoryFunction::constant(Vector2d(0.5, 1.5));
  const VectorXd h = compute_h(example(), SegmentView::of(theta));
  CHECK(h[0] == doctest::Approx(0.75).epsilon(1e-13));
  CHECK(h[1] == doctest::Approx(1.5).epsilon(1e-13));
  CHECK((compute_h_constant(example(), Vector2d(0.5, 1.5)) - h).norm() < 1e-13);

  const HistoryFunction root({HistoryFunction::sqrt_affine(1, 1), HistoryFunction::Constant{0.5}});
  const double I = 2.0 * oracle::nested(one, [](double u) { return u + 1; }, 1.0);
  const VectorXd hr = compute_h(example(), SegmentView::of(root));
  CHECK(std::abs(hr[0] - (1.0 + I)) < 1e-12);
  CHECK(std::abs(hr[1] - 0.5) < 1e-15);
  const StoichInfo st = analyze_structure(example());
  CHECK(std::abs(class_key(example(), st, SegmentView::of(root)).values[0] - 13.0 / 6.0) < 1e-12);
}

TEST_CASE("h against the nested form for a non-polynomial history") {
  // psi_1(s) = exp(s): x1^2 = exp(2u)
  const HistoryFunction theta(
      {HistoryFunction::Table{[] {
                                std::vector<double> s;
                                for (int i = 0; i <= 1000; ++i) s.push_back(-1.0 + i * 1e-3);
                                return s;
                              }(),
                              [] {
                                std::vector<double> v;
                                for (int i = 0; i <= 1000; ++i) v.push_back(std::exp(-1.0 + i * 1e-3));
                                return v;
                              }()},
       HistoryFunction::Constant{0.2}});
  const auto sq = [&](double u) {
    const double x = theta.component(0, u);
    return x * x;
  };
  const VectorXd h = compute_h(example(), SegmentView::of(theta));
  CHECK(std::abs(h[0] - (1.0 + 2.0 * oracle::nested(one, sq, 1.0))) < 1e-9);
}

TEST_CASE("distributed tent kernel against the nested form") {
  const ReactionNetwork net = load_network(oracle::data("tent.net"));
  const HistoryFunction theta({HistoryFunction::affine(1, 2), HistoryFunction::Constant{1}});
  const auto g = [](double s) { return s >= -0.5 ? -4 * s : 4 * (s + 1); };
  const double I = oracle::nested(g, [&](double u) { return u + 2; }, 1.0);
  // second reaction B -> A with constant delay 0.5: int_{-0.5}^0 1 du = 0.5
  const VectorXd h = compute_h(net, SegmentView::of(theta));
  CHECK(std::abs(h[0] - (2.0 + 2.0 * I)) < 1e-10);
  CHECK(std::abs(h[1] - (1.0 + 1.0 * 0.5)) < 1e-12);
}

TEST_CASE("class keys") {
  const StoichInfo st = analyze_structure(example());
  const auto a = HistoryFunction::constant(Vector2d(0.5, 1.5));
  CHECK(class_key(example(), st, SegmentView::of(a)).values[0] == doctest::Approx(2.25).epsilon(1e-13));

  const HistoryFunction d({HistoryFunction::Constant{0}, HistoryFunction::affine(1, 1)});
  CHECK(class_key(example(), st, SegmentView::of(d)).values[0] == doctest::Approx(1.0).epsilon(1e-14));

  const ReactionNetwork full = parse_network("species A\nreaction A -> 2 A ; rate 1 ; delay const(1)");
  const auto x = HistoryFunction::constant(VectorXd::Ones(1));
  CHECK(class_key(full, analyze_structure(full), SegmentView::of(x)).size() == 0);
}

TEST_CASE("projection to undelayed classes") {
  const auto a = HistoryFunction::constant(Vector2d(0.5, 1.5));
  const VectorXd x0 = map_P(example(), a);
  CHECK(x0[0] == doctest::Approx(0.75));
  CHECK(x0[1] == doctest::Approx(1.5));

  const ReactionNetwork plain = parse_network("species A B\nreaction A -> B ; rate 1 ; delay none");
  const HistoryFunction b({HistoryFunction::affine(1, 2), HistoryFunction::Constant{3}});
  CHECK(map_P(plain, b) == Vector2d(2, 3));

  const Vector2d xb(0.8, 0.8);
  CHECK((map_P(example(), HistoryFunction::constant(xb)) - Vector2d(0.8 + 0.5 * 0.64 * 2, 0.8)).norm() < 1e-13);
}

TEST_CASE("Lyapunov functional") {
  const double xb = oracle::class_root(2.25, 0.5);
  const Vector2d bar(xb, xb);
  CHECK(std::abs(lyapunov_V(example(), bar, SegmentView::of(HistoryFunction::constant(bar)))) < 1e-14);

  const auto a = HistoryFunction::constant(Vector2d(0.5, 1.5));
  const double V = lyapunov_V(example(), bar, SegmentView::of(a));
  const double expect = oracle::entropy(0.5, xb) + oracle::entropy(1.5, xb) +
                        oracle::nested(one, [&](double) { return oracle::entropy(0.25, xb * xb); }, 1.0);
  CHECK(V > 0.0);
  CHECK(std::abs(V - expect) < 1e-8);

  const HistoryFunction d({HistoryFunction::Constant{0}, HistoryFunction::affine(1, 1)});
  const double Vd = lyapunov_V(example(), bar, SegmentView::of(d));
  const double expect_d = xb + oracle::entropy(1.0, xb) + oracle::nested(one, [&](double) { return xb * xb; }, 1.0);
  CHECK(std::abs(Vd - expect_d) < 1e-10);

  const HistoryFunction r({HistoryFunction::sqrt_affine(1, 1), HistoryFunction::Constant{0.5}});
  const double Vr = lyapunov_V(example(), bar, SegmentView::of(r));
  const double expect_r = oracle::entropy(1.0, xb) + oracle::entropy(0.5, xb) +
                          oracle::nested(one, [&](double u) { return oracle::entropy(u + 1, xb * xb); }, 1.0);
  CHECK(std::abs(Vr - expect_r) < 1e-6);

  CHECK_THROWS_AS(lyapunov_V(example(), Vector2d(0, 1), SegmentView::of(a)), std::invalid_argument);
}

TEST_CASE("series along a trajectory") {
  const StoichInfo st = analyze_structure(example());
  SimConfig cfg;
  cfg.t_end = 5;
  const auto a = HistoryFunction::constant(Vector2d(0.5, 1.5));
  const Trajectory traj = simulate(example(), a, cfg);
  const Eigen::MatrixXd C = class_key_series(traj, st);
  CHECK(C.rows() == traj.samples());
  CHECK((C.array() - 2.25).abs().maxCoeff() < 1e-9);
  const VectorXd V = lyapunov_series(traj, Vector2d::Constant(oracle::class_root(2.25, 0.5)));
  CHECK(V[0] > V[V.size() - 1]);
}
