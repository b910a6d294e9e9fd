#include "dcrn/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dcrn/detail/quadrature.hpp"

namespace dcrn {
namespace {

// Entropy-like term z (ln z - ln a - 1) + a, written with log a given.
double relative_entropy(double z, double a, double log_a) {
  if (z <= 0.0) return a;
  return z * (std::log(z) - log_a - 1.0) + a;
}

// int_{t - tau_k}^{t} G_k(u - t) f(u) du on cuts aligned to the view's panel.
template <typename F>
double weighted_window(const DelayKernel& kernel, const SegmentView& psi, std::vector<double>& cuts, F&& f) {
  const double tau = kernel.support();
  if (tau == 0.0) return 0.0;
  const double t = psi.origin();
  detail::window_cuts(t - tau, t, psi.panel(), kernel.breakpoints(), t, cuts);
  return detail::simpson(cuts, [&](double u) {
    const double weight = kernel.mass_before(std::clamp(u - t, -tau, 0.0));
    return weight == 0.0 ? 0.0 : weight * f(u);
  });
}

}  // namespace

SegmentView::SegmentView(Eval eval, int dim, double t, double panel)
    : eval_(std::move(eval)), dim_(dim), t_(t), panel_(panel) {
  if (!(panel > 0.0)) throw std::invalid_argument("quadrature panel must be positive");
}

SegmentView SegmentView::of(const HistoryFunction& history, double panel) {
  return SegmentView([&history](double u, Eigen::Ref<Eigen::VectorXd> out) { history.eval_into(u, out); },
                     history.size(), 0.0, panel);
}

SegmentView SegmentView::of(const Trajectory& traj, double t) {
  return SegmentView([&traj](double u, Eigen::Ref<Eigen::VectorXd> out) { traj.eval_into(u, out); },
                     static_cast<int>(traj.states().rows()), t, traj.step());
}

Eigen::VectorXd SegmentView::operator()(double s) const {
  Eigen::VectorXd out(dim_);
  eval_(t_ + s, out);
  return out;
}

bool ClassKey::matches(const ClassKey& other, double rel_tol) const {
  if (size() != other.size()) return false;
  for (Eigen::Index i = 0; i < size(); ++i) {
    const double a = values[i], b = other.values[i];
    if (std::abs(a - b) > rel_tol * std::max(std::abs(a), std::abs(b))) return false;
  }
  return true;
}

Eigen::VectorXd compute_h(const ReactionNetwork& net, const SegmentView& psi) {
  Eigen::VectorXd h = psi(0.0);
  Eigen::VectorXd x(net.num_species());
  std::vector<double> cuts;
  for (const Reaction& r : net.reactions()) {
    const double integral = weighted_window(r.kernel, psi, cuts, [&](double u) {
      psi.eval_abs(u, x);
      return monomial(x, r.source);
    });
    if (integral != 0.0) h += (r.rate * integral) * r.source.coeffs.cast<double>();
  }
  return h;
}

Eigen::VectorXd compute_h_constant(const ReactionNetwork& net, const Eigen::VectorXd& x) {
  Eigen::VectorXd h = x;
  for (const Reaction& r : net.reactions()) {
    const double m = r.kernel.first_moment();
    if (m != 0.0) h += (r.rate * m * monomial(x, r.source)) * r.source.coeffs.cast<double>();
  }
  return h;
}

ClassKey class_key(const ReactionNetwork& net, const StoichInfo& stoich, const SegmentView& psi) {
  if (stoich.num_conservation_laws() == 0) return ClassKey{Eigen::VectorXd(0)};
  return ClassKey{stoich.basis().transpose() * compute_h(net, psi)};
}

Eigen::VectorXd map_P(const ReactionNetwork& net, const HistoryFunction& theta, double panel) {
  return compute_h(net, SegmentView::of(theta, panel));
}

double lyapunov_V(const ReactionNetwork& net, const Eigen::VectorXd& x_bar, const SegmentView& psi) {
  if (x_bar.size() != net.num_species() || !(x_bar.array() > 0.0).all())
    throw std::invalid_argument("Lyapunov reference point must be strictly positive");
  const Eigen::VectorXd now = psi(0.0);
  double v = 0.0;
  for (int i = 0; i < net.num_species(); ++i) v += relative_entropy(now[i], x_bar[i], std::log(x_bar[i]));

  Eigen::VectorXd x(net.num_species());
  std::vector<double> cuts;
  for (const Reaction& r : net.reactions()) {
    const double a = monomial(x_bar, r.source);
    const double log_a = log_monomial(x_bar, r.source);
    const double integral = weighted_window(r.kernel, psi, cuts, [&](double u) {
      psi.eval_abs(u, x);
      return relative_entropy(monomial(x, r.source), a, log_a);
    });
    v += r.rate * integral;
  }
  return v;
}

Eigen::MatrixXd class_key_series(const Trajectory& traj, const StoichInfo& stoich) {
  Eigen::MatrixXd out(traj.samples(), stoich.num_conservation_laws());
  for (Eigen::Index i = 0; i < traj.samples(); ++i)
    out.row(i) = class_key(traj.network(), stoich, SegmentView::of(traj, traj.time(i))).values.transpose();
  return out;
}

Eigen::VectorXd lyapunov_series(const Trajectory& traj, const Eigen::VectorXd& x_bar) {
  Eigen::VectorXd out(traj.samples());
  for (Eigen::Index i = 0; i < traj.samples(); ++i)
    out[i] = lyapunov_V(traj.network(), x_bar, SegmentView::of(traj, traj.time(i)));
  return out;
}

}  // namespace dcrn
