#pragma once

#include <Eigen/Core>

#include <functional>

#include "dcrn/dde.hpp"
#include "dcrn/history.hpp"
#include "dcrn/network.hpp"
#include "dcrn/structure.hpp"

namespace dcrn {

/// A non-negative state path seen from time t: psi(s) = x(t + s), s in [-tau, 0].
/// Quadrature cuts fall on multiples of `panel` in absolute time.
class SegmentView {
 public:
  using Eval = std::function<void(double, Eigen::Ref<Eigen::VectorXd>)>;

  SegmentView(Eval eval, int dim, double t, double panel);

  /// An initial history, seen from t = 0.
  static SegmentView of(const HistoryFunction& history, double panel = 1e-3);
  /// The trailing window x_t of a trajectory; panels match its step.
  static SegmentView of(const Trajectory& traj, double t);

  int dim() const { return dim_; }
  double origin() const { return t_; }
  double panel() const { return panel_; }
  /// x(u) at absolute time u.
  void eval_abs(double u, Eigen::Ref<Eigen::VectorXd> out) const { eval_(u, out); }
  /// psi(s) = x(t + s).
  Eigen::VectorXd operator()(double s) const;

 private:
  Eval eval_;
  int dim_;
  double t_;
  double panel_;
};

/// Conserved-quantity coordinates; compare with matches().
struct ClassKey {
  Eigen::VectorXd values;

  Eigen::Index size() const { return values.size(); }
  /// Componentwise |a - b| <= rel_tol * max(|a|, |b|).
  bool matches(const ClassKey& other, double rel_tol = 1e-9) const;
};

/// h(psi) = psi(0) + sum_k kappa_k (int g_k(s) int_s^0 psi(u)^{y_k} du ds) y_k.
/// Evaluated in the equivalent single-integral form
///   int_{-tau}^0 G_k(u) psi(u)^{y_k} du,  G_k(u) = mass of g_k on [-tau, u].
Eigen::VectorXd compute_h(const ReactionNetwork& net, const SegmentView& psi);

/// h of a constant history x: x + sum_k kappa_k m_k x^{y_k} y_k, with m_k the
/// kernel's first moment.
Eigen::VectorXd compute_h_constant(const ReactionNetwork& net, const Eigen::VectorXd& x);

/// v_i^T h(psi) over the canonical basis of S-perp. Empty when s = n.
ClassKey class_key(const ReactionNetwork& net, const StoichInfo& stoich, const SegmentView& psi);

/// Projection to the undelayed compatibility classes: x0 = h(theta).
Eigen::VectorXd map_P(const ReactionNetwork& net, const HistoryFunction& theta, double panel = 1e-3);

/// Lyapunov-Krasovskii functional around a positive equilibrium x_bar. Uses
/// 0 ln 0 = 0 for vanishing components. Throws std::invalid_argument if x_bar
/// is not strictly positive.
double lyapunov_V(const ReactionNetwork& net, const Eigen::VectorXd& x_bar, const SegmentView& psi);

/// Per-sample series along a trajectory (one row per grid time).
Eigen::MatrixXd class_key_series(const Trajectory& traj, const StoichInfo& stoich);
Eigen::VectorXd lyapunov_series(const Trajectory& traj, const Eigen::VectorXd& x_bar);

}  // namespace dcrn
