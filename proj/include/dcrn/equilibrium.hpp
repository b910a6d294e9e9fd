#pragma once

#include <Eigen/Core>

#include <optional>

#include "dcrn/functionals.hpp"
#include "dcrn/network.hpp"
#include "dcrn/structure.hpp"

namespace dcrn {

struct BalanceCheck {
  bool balanced = false;
  /// max over complexes of |outflow - inflow|
  double residual = 0.0;
};

/// Complex balance test at a strictly positive x: balanced iff the largest
/// per-complex imbalance is within tol * max(1, largest outflow).
BalanceCheck check_complex_balance(const ReactionNetwork& net, const Eigen::VectorXd& x, double tol = 1e-10);

struct EquilibriumResult {
  Eigen::VectorXd point;
  bool complex_balanced = false;
  double residual = 0.0;
  /// Residual of the log-linear system behind the representative.
  double log_residual = 0.0;
  /// Weakly reversible with deficiency zero: balanced for every rate choice.
  bool deficiency_zero_certificate = false;
  ClassKey key;
};

/// A complex-balanced equilibrium via the Matrix-Tree theorem per linkage
/// class and a minimum-norm log-linear least-squares fit. Throws
/// NotWeaklyReversible or NotComplexBalanced.
EquilibriumResult find_complex_balanced_equilibrium(const ReactionNetwork& net, const StoichInfo& stoich);
EquilibriumResult find_complex_balanced_equilibrium(const ReactionNetwork& net);

/// Tree constants K_eta of each complex (principal minors of the Kirchhoff
/// matrix of its linkage class), normalized so each class has max 1.
Eigen::VectorXd tree_constants(const ComplexGraph& graph, const std::vector<std::vector<int>>& linkage);

struct InClassOptions {
  double tol = 1e-10;
  int max_iterations = 200;
  /// Starting coefficients c (one per conservation law); defaults to zero.
  std::optional<Eigen::VectorXd> start;
};

struct InClassResult {
  Eigen::VectorXd point;
  Eigen::VectorXd coefficients;
  double residual = 0.0;
  int iterations = 0;
};

/// The equilibrium x = x_ref o exp(B c) whose constant history has class key
/// `key`, by damped Newton on c. Throws NewtonFailure, or AnalysisError for
/// an infeasible key.
InClassResult in_class_equilibrium(const ReactionNetwork& net, const StoichInfo& stoich,
                                   const Eigen::VectorXd& x_ref, const ClassKey& key,
                                   const InClassOptions& options = {});

/// Newton coefficients c whose point x_ref o exp(B c) is closest (in log
/// space) to the given positive point; a seed for in_class_equilibrium.
Eigen::VectorXd log_coordinates(const StoichInfo& stoich, const Eigen::VectorXd& x_ref, const Eigen::VectorXd& x);

}  // namespace dcrn
