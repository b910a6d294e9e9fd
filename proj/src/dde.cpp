#include "dcrn/dde.hpp"

#include <cmath>
#include <stdexcept>

#include "dcrn/detail/quadrature.hpp"
#include "dcrn/errors.hpp"
#include "dcrn/format.hpp"

namespace dcrn {

void SimConfig::validate(double max_delay) const {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("step h must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be positive");
  if (h > t_end) throw std::invalid_argument("step h exceeds t_end");
  if (!(neg_clamp >= 0.0)) throw std::invalid_argument("negativity clamp must be non-negative");
  if (max_delay > 0.0 && h > max_delay / 4.0 * (1.0 + 1e-12))
    throw std::invalid_argument("step h must not exceed tau/4 = " + format_double(max_delay / 4.0));
  const double m = t_end / h;
  if (std::abs(m - std::round(m)) > 1e-9 * m)
    throw std::invalid_argument("t_end must be an integer multiple of h");
}

Eigen::Index SimConfig::steps() const { return static_cast<Eigen::Index>(std::llround(t_end / h)); }

Trajectory::Trajectory(ReactionNetwork net, HistoryFunction history, double h, Eigen::MatrixXd states,
                       Eigen::MatrixXd derivs, std::size_t clamps)
    : net_(std::move(net)),
      history_(std::move(history)),
      h_(h),
      states_(std::move(states)),
      derivs_(std::move(derivs)),
      clamps_(clamps) {}

void Trajectory::eval_into(double t, Eigen::Ref<Eigen::VectorXd> out) const {
  if (t <= 0.0) {
    history_.eval_into(t, out);
    return;
  }
  const Eigen::Index last = samples() - 1;
  const double r = t / h_;
  const double node = std::round(r);
  if (std::abs(r - node) <= 1e-9 && node <= static_cast<double>(last)) {
    out = states_.col(static_cast<Eigen::Index>(node));
    return;
  }
  const Eigen::Index i = std::min<Eigen::Index>(static_cast<Eigen::Index>(std::floor(t / h_)), last - 1);
  detail::hermite(states_.col(i), derivs_.col(i), states_.col(i + 1), derivs_.col(i + 1), h_,
                  (t - time(i)) / h_, out);
}

Eigen::VectorXd Trajectory::operator()(double t) const {
  Eigen::VectorXd out(states_.rows());
  eval_into(t, out);
  return out;
}

Eigen::VectorXd rhs(const ReactionNetwork& net, const std::function<Eigen::VectorXd(double)>& path, double t,
                    double panel) {
  Eigen::VectorXd out;
  detail::FieldWorkspace ws;
  const Eigen::VectorXd now = path(t);
  detail::delayed_field(
      net, t, now, [&](double u, Eigen::VectorXd& dst) { dst = path(u); }, panel, out, ws);
  return out;
}

Eigen::VectorXd rhs(const ReactionNetwork& net, const HistoryFunction& history, double panel) {
  Eigen::VectorXd out;
  detail::FieldWorkspace ws;
  const Eigen::VectorXd now = history(0.0);
  detail::delayed_field(
      net, 0.0, now, [&](double u, Eigen::VectorXd& dst) { history.eval_into(u, dst); }, panel, out, ws);
  return out;
}

Eigen::VectorXd rhs(const Trajectory& traj, double t) {
  Eigen::VectorXd out;
  detail::FieldWorkspace ws;
  const Eigen::VectorXd now = traj(t);
  detail::delayed_field(
      traj.network(), t, now, [&](double u, Eigen::VectorXd& dst) { traj.eval_into(u, dst); }, traj.step(), out,
      ws);
  return out;
}

Eigen::VectorXd rhs_constant(const ReactionNetwork& net, const Eigen::VectorXd& x) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(net.num_species());
  for (const Reaction& r : net.reactions())
    out += (r.rate * monomial(x, r.source)) * (r.product.coeffs - r.source.coeffs).cast<double>();
  return out;
}

Trajectory simulate(const ReactionNetwork& net, const HistoryFunction& history, const SimConfig& cfg) {
  const double tau = net.max_delay();
  cfg.validate(tau);
  history.validate(net.num_species(), tau);

  const int n = net.num_species();
  const double h = cfg.h;
  const Eigen::Index steps = cfg.steps();
  Eigen::MatrixXd X(n, steps + 1), F(n, steps + 1);
  X.col(0) = history(0.0);
  Eigen::Index accepted = 0;  // X, F valid on [0, accepted*h]

  // Method of steps: the history before 0, the archive up to the last
  // accepted node, and an extrapolant of the last step beyond it.
  auto at = [&](double u, Eigen::VectorXd& out) {
    if (u <= 0.0) {
      history.eval_into(u, out);
      return;
    }
    if (accepted == 0) {
      out = X.col(0) + u * F.col(0);
      return;
    }
    Eigen::Index i = static_cast<Eigen::Index>(std::floor(u / h));
    i = std::min(i, accepted - 1);
    detail::hermite(X.col(i), F.col(i), X.col(i + 1), F.col(i + 1), h, (u - static_cast<double>(i) * h) / h, out);
  };

  detail::FieldWorkspace ws;
  Eigen::VectorXd f;
  auto field = [&](double t, const Eigen::VectorXd& x) {
    detail::delayed_field(net, t, x, at, h, f, ws);
    return f;
  };

  F.col(0) = field(0.0, X.col(0));
  std::size_t clamps = 0;
  Eigen::VectorXd stage(n);
  for (Eigen::Index step = 0; step < steps; ++step) {
    const double t = static_cast<double>(step) * h;
    const Eigen::VectorXd x = X.col(step);
    const Eigen::VectorXd k1 = F.col(step);
    stage = x + 0.5 * h * k1;
    const Eigen::VectorXd k2 = field(t + 0.5 * h, stage);
    stage = x + 0.5 * h * k2;
    const Eigen::VectorXd k3 = field(t + 0.5 * h, stage);
    stage = x + h * k3;
    const Eigen::VectorXd k4 = field(t + h, stage);
    Eigen::VectorXd next = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double t_next = static_cast<double>(step + 1) * h;
    for (int i = 0; i < n; ++i) {
      if (!std::isfinite(next[i]))
        throw IntegrationFailure(t_next, "non-finite value in species " + net.species()[i].name);
      if (next[i] < 0.0) {
        if (next[i] < -cfg.neg_clamp)
          throw IntegrationFailure(t_next, "species " + net.species()[i].name + " went negative (" +
                                               format_double(next[i]) + ")");
        next[i] = 0.0;
        ++clamps;
      }
    }
    X.col(step + 1) = next;
    // The last segment needs x'(t_next) for its Hermite midpoint, which in
    // turn depends on that segment; k4 is a close enough stand-in.
    F.col(step + 1) = k4;
    accepted = step + 1;
    F.col(step + 1) = field(t_next, next);
    if (!F.col(step + 1).allFinite()) throw IntegrationFailure(t_next, "non-finite vector field");
  }
  return Trajectory(net, history, h, std::move(X), std::move(F), clamps);
}

Trajectory simulate_ode(const ReactionNetwork& net, const Eigen::VectorXd& x0, const SimConfig& cfg) {
  if (!net.delay_free()) throw std::invalid_argument("simulate_ode requires a delay-free network");
  return simulate(net, HistoryFunction::constant(x0), cfg);
}

namespace {

void require_point_masses(const ReactionNetwork& net, int stages) {
  if (stages < 1) throw std::invalid_argument("chain length N must be at least 1");
  if (!net.all_point_mass())
    throw std::invalid_argument("chain expansion requires constant (point-mass) delays only");
}

}  // namespace

ReactionNetwork expand_chain(const ReactionNetwork& net, int stages) {
  require_point_masses(net, stages);
  std::vector<std::string> names;
  for (const auto& s : net.species()) names.push_back(s.name);

  auto fresh = [&](std::string name) {
    while (net.species_index(name) >= 0) name += "_";
    return name;
  };
  struct Chain {
    int reaction;
    int first;  // index of z_k1
  };
  std::vector<Chain> chains;
  for (int k = 0; k < net.num_reactions(); ++k) {
    if (net.reaction(k).kernel.point_delay() == 0.0) continue;
    chains.push_back({k, static_cast<int>(names.size())});
    for (int j = 1; j <= stages; ++j) names.push_back(fresh("z" + std::to_string(k + 1) + "_" + std::to_string(j)));
  }
  const int total = static_cast<int>(names.size());
  const int n = net.num_species();
  auto widen = [&](const Complex& c) {
    Complex w{Eigen::VectorXi::Zero(total)};
    w.coeffs.head(n) = c.coeffs;
    return w;
  };
  auto unit = [&](int i) {
    Complex w{Eigen::VectorXi::Zero(total)};
    w.coeffs[i] = 1;
    return w;
  };

  std::vector<Reaction> out;
  std::size_t c = 0;
  for (int k = 0; k < net.num_reactions(); ++k) {
    const Reaction& r = net.reaction(k);
    if (c < chains.size() && chains[c].reaction == k) {
      const int z = chains[c++].first;
      const double speed = stages / r.kernel.point_delay();
      out.push_back({widen(r.source), unit(z), r.rate, DelayKernel::none()});
      for (int j = 0; j + 1 < stages; ++j) out.push_back({unit(z + j), unit(z + j + 1), speed, DelayKernel::none()});
      out.push_back({unit(z + stages - 1), widen(r.product), speed, DelayKernel::none()});
    } else {
      out.push_back({widen(r.source), widen(r.product), r.rate, DelayKernel::none()});
    }
  }
  return ReactionNetwork(std::move(names), std::move(out));
}

Eigen::VectorXd chain_initial_state(const ReactionNetwork& net, const HistoryFunction& history, int stages) {
  require_point_masses(net, stages);
  history.validate(net.num_species(), net.max_delay());
  std::vector<double> z;
  for (const Reaction& r : net.reactions()) {
    const double tau = r.kernel.point_delay();
    if (tau == 0.0) continue;
    const double cell = tau / stages;
    for (int j = 1; j <= stages; ++j) z.push_back(r.rate * cell * monomial(history(-j * cell), r.source));
  }
  Eigen::VectorXd state(net.num_species() + static_cast<Eigen::Index>(z.size()));
  state.head(net.num_species()) = history(0.0);
  for (std::size_t i = 0; i < z.size(); ++i) state[net.num_species() + static_cast<Eigen::Index>(i)] = z[i];
  return state;
}

}  // namespace dcrn
