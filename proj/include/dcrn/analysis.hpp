#pragma once

#include <Eigen/Core>

#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dcrn/dde.hpp"
#include "dcrn/equilibrium.hpp"
#include "dcrn/functionals.hpp"
#include "dcrn/structure.hpp"

namespace dcrn {

enum class OmegaKind { PositiveEquilibrium, Boundary, Undetermined };

std::string to_string(OmegaKind kind);

struct OmegaThresholds {
  double eps_eq = 1e-4;  ///< sup-distance to the predicted equilibrium
  double eps_bd = 1e-6;  ///< a species whose sup stays below this has vanished
};

struct OmegaLimitVerdict {
  OmegaKind kind = OmegaKind::Undetermined;
  double t_eval = 0.0;
  double window = 0.0;
  Eigen::VectorXd window_min;
  Eigen::VectorXd window_max;
  double distance = 0.0;  ///< max over the window of |x - x_class|_inf
  double lyapunov = 0.0;  ///< V(x_t) around x_class at t_eval
  std::vector<int> vanished;
};

/// Reads the trailing window [t_eval - window, t_eval] (t_eval defaults to the
/// end of the run; a zero window becomes one step). Runs shorter than five
/// windows are Undetermined. Throws std::invalid_argument unless
/// eps_bd < min(x_class).
OmegaLimitVerdict classify_omega_limit(const Trajectory& traj, const Eigen::VectorXd& x_class, double window,
                                       const OmegaThresholds& thresholds = {},
                                       std::optional<double> t_eval = std::nullopt);

/// Largest relative change of the conserved quantities from t = 0 over the run.
double conservation_drift(const Trajectory& traj, const StoichInfo& stoich);

/// Largest step-to-step increase of a sampled sequence (0 if non-increasing).
double max_increase(const Eigen::VectorXd& series);

struct ClassCountReport {
  std::vector<ClassKey> keys;
  std::vector<Eigen::VectorXd> projections;  ///< v_i^T P(theta)
  std::vector<int> key_group;
  std::vector<int> projection_group;
  int distinct_keys = 0;
  int distinct_projections = 0;
  bool projections_match_keys = true;  ///< v^T P(theta) == key bit for bit
  bool injective = true;               ///< key groups and projection groups coincide
  bool pass = false;
};

ClassCountReport verify_class_count(const ReactionNetwork& net, const StoichInfo& stoich,
                                    const std::vector<HistoryFunction>& samples, double panel = 1e-3,
                                    double rel_tol = 1e-9);

/// Random admissible history on [-tau, 0]: per species a constant, affine or
/// square-root-affine component that stays non-negative on the window.
HistoryFunction random_history(int n, double tau, std::mt19937_64& rng);

struct WrExistenceOptions {
  std::vector<int> schedule{8, 32, 128};
  double h = 0.01;
  double t_end = 400.0;
  double rhs_tol = 1e-8;
};

struct WrExistenceRow {
  int stages = 0;
  Eigen::VectorXd x_bar;
  double rhs_norm = 0.0;      ///< |field at the constant history x_bar|_inf
  double key_mismatch = 0.0;  ///< relative gap between key(x_bar) and key(theta)
  double change = 0.0;        ///< |x_bar(N) - x_bar(previous N)|_inf
  double in_class_distance = std::numeric_limits<double>::quiet_NaN();
  bool complex_balanced = false;
};

struct WrExistenceReport {
  ClassKey theta_key;
  std::optional<Eigen::VectorXd> in_class;  ///< when the network is complex balanced
  std::vector<WrExistenceRow> rows;
  bool rhs_ok = false;
  bool key_trend_ok = false;
  bool balance_ok = false;
  bool pass = false;
};

/// Existence for a weakly reversible network with constant delays, following
/// the chain construction: expand, seed from theta, run the ODE to rest, and
/// check the limit against the delayed field and the class of theta.
WrExistenceReport verify_wr_existence(const ReactionNetwork& net, const StoichInfo& stoich,
                                      const HistoryFunction& theta, const WrExistenceOptions& options = {});

struct ChainStudyRow {
  int stages = 0;
  double error = 0.0;
};

struct ChainStudyReport {
  std::vector<ChainStudyRow> rows;
  bool monotone = false;
  bool halved = false;  ///< last error below half the first (or all zero)
};

/// e_N = max over grid times of |x_chain,N(t) - x_dde(t)|_inf on [0, t_end],
/// against the delayed run at step cfg.h / 10 unless a reference is supplied.
ChainStudyReport chain_convergence_study(const ReactionNetwork& net, const HistoryFunction& theta,
                                         const std::vector<int>& schedule, const SimConfig& cfg,
                                         const Trajectory* reference = nullptr);

struct LyapunovRun {
  ClassKey key;
  Eigen::VectorXd x_class;
  Eigen::VectorXd V;
  double max_increase = 0.0;
  double drift = 0.0;
  OmegaLimitVerdict verdict;
  OmegaLimitVerdict midpoint_verdict;
  std::size_t clamps = 0;
};

/// Simulates theta, predicts its in-class equilibrium, and samples V along the run.
LyapunovRun lyapunov_run(const ReactionNetwork& net, const StoichInfo& stoich, const Eigen::VectorXd& x_ref,
                         const HistoryFunction& theta, const SimConfig& cfg, const OmegaThresholds& thresholds = {});

/// PositiveEquilibrium followed by Boundary (or the reverse) between two checkpoints.
bool dichotomy_violated(const OmegaLimitVerdict& earlier, const OmegaLimitVerdict& later);

}  // namespace dcrn
