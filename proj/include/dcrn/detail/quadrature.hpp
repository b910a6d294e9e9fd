#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <vector>

#include "dcrn/kernel.hpp"
#include "dcrn/network.hpp"

namespace dcrn::detail {

/// Sorted cut points of [lo, hi]: both ends, every multiple of `panel`
/// strictly inside, and `shift + b` for each kernel breakpoint b inside.
inline void window_cuts(double lo, double hi, double panel, const std::vector<double>& breaks, double shift,
                        std::vector<double>& cuts) {
  cuts.clear();
  cuts.push_back(lo);
  const double eps = 1e-9 * panel;
  for (double k = std::ceil(lo / panel); k * panel < hi - eps; k += 1.0) {
    const double u = k * panel;
    if (u > lo + eps) cuts.push_back(u);
  }
  for (double b : breaks) {
    const double u = shift + b;
    if (u > lo + eps && u < hi - eps) cuts.push_back(u);
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(), [eps](double a, double b) { return b - a < eps; }), cuts.end());
  if (cuts.back() != hi) cuts.back() = hi;
}

/// Composite Simpson over consecutive cut intervals; f is evaluated once per
/// cut point and once per interval midpoint.
template <typename F>
double simpson(const std::vector<double>& cuts, F&& f) {
  if (cuts.size() < 2) return 0.0;
  double sum = 0.0;
  double fa = f(cuts[0]);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    const double fm = f(0.5 * (a + b));
    const double fb = f(b);
    sum += (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    fa = fb;
  }
  return sum;
}

/// Lag interval on which the kernel density is positive.
inline std::pair<double, double> density_window(const DelayKernel& k) {
  if (const auto* u = std::get_if<DelayKernel::Uniform>(&k.representation())) return {-u->b, -u->a};
  if (const auto* t = std::get_if<DelayKernel::Table>(&k.representation())) return {t->s.front(), t->s.back()};
  return {-k.support(), -k.support()};
}

/// Nonzero entries of a complex, for networks with many species.
struct SparseComplex {
  std::vector<std::pair<int, int>> terms;

  explicit SparseComplex(const Complex& c) {
    for (Eigen::Index i = 0; i < c.size(); ++i)
      if (c.coeffs[i]) terms.emplace_back(static_cast<int>(i), c.coeffs[i]);
  }
  // Same multiplication order as monomial().
  template <typename V>
  double monomial(const V& x) const {
    double value = 1.0;
    for (auto [i, c] : terms)
      for (int p = 0; p < c; ++p) value *= x[i];
    return value;
  }
};

struct FieldWorkspace {
  std::vector<double> cuts;
  Eigen::VectorXd buf;
  const ReactionNetwork* bound = nullptr;
  std::vector<SparseComplex> sources, products;

  void bind(const ReactionNetwork& net) {
    if (bound == &net) return;
    bound = &net;
    sources.clear();
    products.clear();
    for (const Reaction& r : net.reactions()) {
      sources.emplace_back(r.source);
      products.emplace_back(r.product);
    }
  }
};

/// Delayed mass-action vector field at time t:
///   sum_k kappa_k [ (int g_k(s) x(t+s)^{y_k} ds) y'_k - x(t)^{y_k} y_k ].
/// `now` is x(t); `at(u, out)` writes x(u) for u < t. Point masses read the
/// path directly; distributed kernels use Simpson on cuts aligned to `panel`.
template <typename At>
void delayed_field(const ReactionNetwork& net, double t, const Eigen::VectorXd& now, const At& at, double panel,
                   Eigen::VectorXd& out, FieldWorkspace& ws) {
  out.setZero(net.num_species());
  ws.buf.resize(net.num_species());
  ws.bind(net);
  for (int k = 0; k < net.num_reactions(); ++k) {
    const Reaction& r = net.reaction(k);
    const SparseComplex& y = ws.sources[k];
    const double outflow = r.rate * y.monomial(now);
    double inflow;
    if (r.kernel.is_point_mass()) {
      const double tau = r.kernel.point_delay();
      if (tau == 0.0) {
        inflow = outflow;
      } else {
        at(t - tau, ws.buf);
        inflow = r.rate * y.monomial(ws.buf);
      }
    } else {
      const auto [lo, hi] = density_window(r.kernel);
      window_cuts(t + lo, t + hi, panel, r.kernel.breakpoints(), t, ws.cuts);
      const double integral = simpson(ws.cuts, [&](double u) {
        const double lag = std::clamp(u - t, lo, hi);
        const double g = r.kernel.density(lag);
        if (g == 0.0) return 0.0;
        at(u, ws.buf);
        return g * y.monomial(ws.buf);
      });
      inflow = r.rate * integral;
    }
    for (auto [i, c] : y.terms) out[i] -= outflow * c;
    for (auto [i, c] : ws.products[k].terms) out[i] += inflow * c;
  }
}

/// Cubic Hermite interpolation on one step; theta = (u - t0)/h, and values
/// outside [0, 1] extrapolate the same cubic.
template <typename V>
void hermite(const V& x0, const V& f0, const V& x1, const V& f1, double h, double theta,
             Eigen::Ref<Eigen::VectorXd> out) {
  const double t2 = theta * theta, t3 = t2 * theta;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + theta;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  out = h00 * x0 + (h10 * h) * f0 + h01 * x1 + (h11 * h) * f1;
}

}  // namespace dcrn::detail
