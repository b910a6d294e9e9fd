#include "dcrn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dcrn/errors.hpp"

namespace dcrn {

std::string to_string(OmegaKind kind) {
  switch (kind) {
    case OmegaKind::PositiveEquilibrium: return "PositiveEquilibrium";
    case OmegaKind::Boundary: return "Boundary";
    case OmegaKind::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

OmegaLimitVerdict classify_omega_limit(const Trajectory& traj, const Eigen::VectorXd& x_class, double window,
                                       const OmegaThresholds& thresholds, std::optional<double> t_eval) {
  if (x_class.size() != traj.states().rows()) throw std::invalid_argument("equilibrium has the wrong dimension");
  if (!(thresholds.eps_bd < x_class.minCoeff()))
    throw std::invalid_argument("boundary threshold must lie below every equilibrium component");

  OmegaLimitVerdict v;
  v.window = std::max(window, traj.step());
  v.t_eval = std::min(t_eval.value_or(traj.t_end()), traj.t_end());
  const double h = traj.step();
  const auto last = static_cast<Eigen::Index>(std::llround(v.t_eval / h));
  const auto first = std::max<Eigen::Index>(0, last - static_cast<Eigen::Index>(std::llround(v.window / h)));
  const auto block = traj.states().middleCols(first, last - first + 1);
  v.window_min = block.rowwise().minCoeff();
  v.window_max = block.rowwise().maxCoeff();
  v.distance = (block.colwise() - x_class).cwiseAbs().maxCoeff();
  v.lyapunov = lyapunov_V(traj.network(), x_class, SegmentView::of(traj, traj.time(last)));
  for (Eigen::Index i = 0; i < v.window_max.size(); ++i)
    if (v.window_max[i] < thresholds.eps_bd) v.vanished.push_back(static_cast<int>(i));

  if (v.t_eval < 5.0 * v.window * (1.0 - 1e-12)) return v;
  if (!v.vanished.empty()) {
    v.kind = OmegaKind::Boundary;
  } else if (v.distance <= thresholds.eps_eq && v.window_min.minCoeff() >= thresholds.eps_bd) {
    v.kind = OmegaKind::PositiveEquilibrium;
  }
  return v;
}

bool dichotomy_violated(const OmegaLimitVerdict& earlier, const OmegaLimitVerdict& later) {
  return (earlier.kind == OmegaKind::PositiveEquilibrium && later.kind == OmegaKind::Boundary) ||
         (earlier.kind == OmegaKind::Boundary && later.kind == OmegaKind::PositiveEquilibrium);
}

double conservation_drift(const Trajectory& traj, const StoichInfo& stoich) {
  const Eigen::MatrixXd C = class_key_series(traj, stoich);
  double drift = 0.0;
  for (Eigen::Index j = 0; j < C.cols(); ++j) {
    const double ref = std::abs(C(0, j));
    const double dev = (C.col(j).array() - C(0, j)).abs().maxCoeff();
    drift = std::max(drift, ref > 0.0 ? dev / ref : dev);
  }
  return drift;
}

double max_increase(const Eigen::VectorXd& series) {
  double worst = 0.0;
  for (Eigen::Index i = 1; i < series.size(); ++i) worst = std::max(worst, series[i] - series[i - 1]);
  return worst;
}

namespace {

template <typename Same>
std::vector<int> cluster(std::size_t count, Same&& same, int& groups) {
  std::vector<int> group(count, -1);
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t g = 0; g < reps.size(); ++g) {
      if (same(reps[g], i)) {
        group[i] = static_cast<int>(g);
        break;
      }
    }
    if (group[i] < 0) {
      group[i] = static_cast<int>(reps.size());
      reps.push_back(i);
    }
  }
  groups = static_cast<int>(reps.size());
  return group;
}

}  // namespace

ClassCountReport verify_class_count(const ReactionNetwork& net, const StoichInfo& stoich,
                                    const std::vector<HistoryFunction>& samples, double panel, double rel_tol) {
  ClassCountReport report;
  const Eigen::MatrixXd B = stoich.basis();
  for (const auto& theta : samples) {
    report.keys.push_back(class_key(net, stoich, SegmentView::of(theta, panel)));
    const Eigen::VectorXd x0 = map_P(net, theta, panel);
    report.projections.push_back(B.cols() ? Eigen::VectorXd(B.transpose() * x0) : Eigen::VectorXd(0));
    const auto& key = report.keys.back().values;
    const auto& proj = report.projections.back();
    if (key.size() != proj.size() || !(key.array() == proj.array()).all()) report.projections_match_keys = false;
  }
  report.key_group = cluster(
      samples.size(), [&](std::size_t a, std::size_t b) { return report.keys[a].matches(report.keys[b], rel_tol); },
      report.distinct_keys);
  report.projection_group = cluster(
      samples.size(),
      [&](std::size_t a, std::size_t b) {
        return ClassKey{report.projections[a]}.matches(ClassKey{report.projections[b]}, rel_tol);
      },
      report.distinct_projections);
  for (std::size_t a = 0; a < samples.size(); ++a)
    for (std::size_t b = a + 1; b < samples.size(); ++b)
      if ((report.key_group[a] == report.key_group[b]) != (report.projection_group[a] == report.projection_group[b]))
        report.injective = false;
  report.pass = report.projections_match_keys && report.injective &&
                report.distinct_keys == report.distinct_projections;
  return report;
}

HistoryFunction random_history(int n, double tau, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<HistoryFunction::Component> parts;
  for (int i = 0; i < n; ++i) {
    const double pick = unit(rng);
    const double b = 0.05 + 1.95 * unit(rng);
    // a*s + b >= 0 on [-tau, 0] iff a <= b / tau.
    const double a_max = tau > 0.0 ? b / tau : b;
    const double a = -b + (a_max + b) * unit(rng);
    if (pick < 1.0 / 3.0) parts.emplace_back(HistoryFunction::Constant{b});
    else if (pick < 2.0 / 3.0) parts.push_back(HistoryFunction::affine(a, b));
    else parts.push_back(HistoryFunction::sqrt_affine(a, b));
  }
  return HistoryFunction(std::move(parts));
}

WrExistenceReport verify_wr_existence(const ReactionNetwork& net, const StoichInfo& stoich,
                                      const HistoryFunction& theta, const WrExistenceOptions& options) {
  if (!stoich.weakly_reversible) throw NotWeaklyReversible();
  if (!net.all_point_mass()) throw std::invalid_argument("existence study requires constant delays");
  if (options.schedule.empty()) throw std::invalid_argument("empty chain schedule");

  WrExistenceReport report;
  report.theta_key = class_key(net, stoich, SegmentView::of(theta, options.h));
  try {
    const EquilibriumResult eq = find_complex_balanced_equilibrium(net, stoich);
    report.in_class = in_class_equilibrium(net, stoich, eq.point, report.theta_key).point;
  } catch (const NotComplexBalanced&) {
  }

  const int n = net.num_species();
  SimConfig cfg;
  cfg.h = options.h;
  cfg.t_end = options.t_end;
  for (int stages : options.schedule) {
    const ReactionNetwork chain = expand_chain(net, stages);
    const Trajectory run = simulate_ode(chain, chain_initial_state(net, theta, stages), cfg);

    WrExistenceRow row;
    row.stages = stages;
    row.x_bar = run.states().col(run.samples() - 1).head(n);
    row.rhs_norm = rhs_constant(net, row.x_bar).cwiseAbs().maxCoeff();
    const ClassKey key{stoich.basis().transpose() * compute_h_constant(net, row.x_bar)};
    row.key_mismatch = 0.0;
    for (Eigen::Index j = 0; j < key.size(); ++j) {
      const double ref = std::max(std::abs(report.theta_key.values[j]), 1e-300);
      row.key_mismatch = std::max(row.key_mismatch, std::abs(key.values[j] - report.theta_key.values[j]) / ref);
    }
    if (!report.rows.empty()) row.change = (row.x_bar - report.rows.back().x_bar).cwiseAbs().maxCoeff();
    if (report.in_class) row.in_class_distance = (row.x_bar - *report.in_class).cwiseAbs().maxCoeff();
    if ((row.x_bar.array() > 0.0).all()) row.complex_balanced = check_complex_balance(net, row.x_bar, 1e-8).balanced;
    report.rows.push_back(std::move(row));
  }

  report.rhs_ok = std::all_of(report.rows.begin(), report.rows.end(),
                              [&](const auto& r) { return r.rhs_norm <= options.rhs_tol; });
  report.key_trend_ok = true;
  for (std::size_t i = 1; i < report.rows.size(); ++i)
    if (report.rows[i].key_mismatch > report.rows[i - 1].key_mismatch + 1e-9) report.key_trend_ok = false;
  report.balance_ok = !report.in_class || std::all_of(report.rows.begin(), report.rows.end(),
                                                      [](const auto& r) { return r.complex_balanced; });
  report.pass = report.rhs_ok && report.key_trend_ok && report.balance_ok;
  return report;
}

ChainStudyReport chain_convergence_study(const ReactionNetwork& net, const HistoryFunction& theta,
                                         const std::vector<int>& schedule, const SimConfig& cfg,
                                         const Trajectory* reference) {
  if (!net.all_point_mass()) throw std::invalid_argument("chain study requires constant delays");
  std::optional<Trajectory> own;
  if (!reference) {
    // A delayed reference ten times finer than the chain runs; without delays
    // the chain is the network itself and the same grid is compared.
    SimConfig fine = cfg;
    if (!net.delay_free()) fine.h = cfg.h / 10.0;
    own.emplace(simulate(net, theta, fine));
    reference = &*own;
  }
  const int n = net.num_species();
  ChainStudyReport report;
  Eigen::VectorXd ref(n);
  for (int stages : schedule) {
    const ReactionNetwork chain = expand_chain(net, stages);
    SimConfig chain_cfg = cfg;
    const Trajectory run = simulate_ode(chain, chain_initial_state(net, theta, stages), chain_cfg);
    double err = 0.0;
    for (Eigen::Index i = 0; i < run.samples(); ++i) {
      reference->eval_into(run.time(i), ref);
      err = std::max(err, (run.states().col(i).head(n) - ref).cwiseAbs().maxCoeff());
    }
    report.rows.push_back({stages, err});
  }
  report.monotone = true;
  for (std::size_t i = 1; i < report.rows.size(); ++i)
    if (report.rows[i].error > report.rows[i - 1].error) report.monotone = false;
  const double first = report.rows.front().error, last = report.rows.back().error;
  report.halved = (first == 0.0 && last == 0.0) || last < first / 2.0;
  return report;
}

LyapunovRun lyapunov_run(const ReactionNetwork& net, const StoichInfo& stoich, const Eigen::VectorXd& x_ref,
                         const HistoryFunction& theta, const SimConfig& cfg, const OmegaThresholds& thresholds) {
  LyapunovRun out;
  const Trajectory traj = simulate(net, theta, cfg);
  out.key = class_key(net, stoich, SegmentView::of(traj, 0.0));
  out.x_class = in_class_equilibrium(net, stoich, x_ref, out.key).point;
  out.V = lyapunov_series(traj, out.x_class);
  out.max_increase = max_increase(out.V);
  out.drift = conservation_drift(traj, stoich);
  out.clamps = traj.clamp_count();
  const double window = net.max_delay();
  out.verdict = classify_omega_limit(traj, out.x_class, window, thresholds);
  out.midpoint_verdict = classify_omega_limit(traj, out.x_class, window, thresholds, traj.t_end() / 2.0);
  return out;
}

}  // namespace dcrn
