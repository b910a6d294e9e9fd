#pragma once

#include <Eigen/Core>

#include <functional>

#include "dcrn/history.hpp"
#include "dcrn/network.hpp"

namespace dcrn {

struct SimConfig {
  double h = 0.01;
  double t_end = 10.0;
  /// Undershoot below zero up to this magnitude is clamped and counted;
  /// anything larger aborts the run.
  double neg_clamp = 1e-12;

  /// Throws std::invalid_argument unless h > 0, h <= t_end, t_end is an
  /// integer number of steps, and h <= tau/4 when tau > 0.
  void validate(double max_delay) const;
  Eigen::Index steps() const;
};

/// Solution on the uniform grid t_i = i*h with cubic Hermite dense output.
/// For t <= 0 it returns the initial history.
class Trajectory {
 public:
  Trajectory(ReactionNetwork net, HistoryFunction history, double h, Eigen::MatrixXd states,
             Eigen::MatrixXd derivs, std::size_t clamps);

  const ReactionNetwork& network() const { return net_; }
  const HistoryFunction& history() const { return history_; }
  double step() const { return h_; }
  Eigen::Index samples() const { return states_.cols(); }
  double time(Eigen::Index i) const { return static_cast<double>(i) * h_; }
  double t_end() const { return time(samples() - 1); }
  /// Columns are x(t_i).
  const Eigen::MatrixXd& states() const { return states_; }
  /// Columns are the field evaluated at (t_i, x(t_i)).
  const Eigen::MatrixXd& derivs() const { return derivs_; }
  std::size_t clamp_count() const { return clamps_; }

  Eigen::VectorXd operator()(double t) const;
  void eval_into(double t, Eigen::Ref<Eigen::VectorXd> out) const;

 private:
  ReactionNetwork net_;
  HistoryFunction history_;
  double h_;
  Eigen::MatrixXd states_;
  Eigen::MatrixXd derivs_;
  std::size_t clamps_;
};

/// Field at time t for a state path defined on [t - tau, t]; distributed
/// kernels integrate on panels of width `panel`.
Eigen::VectorXd rhs(const ReactionNetwork& net, const std::function<Eigen::VectorXd(double)>& path, double t,
                    double panel);
/// Field at t = 0 for an initial history.
Eigen::VectorXd rhs(const ReactionNetwork& net, const HistoryFunction& history, double panel = 1e-3);
/// Field at time t along a computed trajectory (panels = its step).
Eigen::VectorXd rhs(const Trajectory& traj, double t);
/// Field for the constant path x; delayed and undelayed fields coincide here.
Eigen::VectorXd rhs_constant(const ReactionNetwork& net, const Eigen::VectorXd& x);

/// Method of steps with classical RK4 and Hermite dense output. Throws
/// IntegrationFailure on non-finite or clearly negative states.
Trajectory simulate(const ReactionNetwork& net, const HistoryFunction& history, const SimConfig& cfg);

/// RK4 for a network whose kernels are all const(0).
Trajectory simulate_ode(const ReactionNetwork& net, const Eigen::VectorXd& x0, const SimConfig& cfg);

/// Replaces each reaction with delay tau_k > 0 by the chain
///   y_k -(kappa_k)-> z_k1 -(N/tau_k)-> ... -> z_kN -(N/tau_k)-> y'_k.
/// Intermediates are appended after the original species, reaction by
/// reaction. Zero-delay reactions are copied unchanged.
ReactionNetwork expand_chain(const ReactionNetwork& net, int stages);

/// (x, z) with x = theta(0) and z_kj = kappa_k (tau_k/N) theta(-j tau_k/N)^{y_k},
/// ordered like expand_chain's species.
Eigen::VectorXd chain_initial_state(const ReactionNetwork& net, const HistoryFunction& history, int stages);

}  // namespace dcrn
