#include "dcrn/history.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dcrn/format.hpp"

namespace dcrn {

HistoryFunction HistoryFunction::constant(const Eigen::VectorXd& x) {
  std::vector<Component> parts;
  for (Eigen::Index i = 0; i < x.size(); ++i) parts.emplace_back(Constant{x[i]});
  return HistoryFunction(std::move(parts));
}

bool HistoryFunction::is_constant() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const Component& c) { return std::holds_alternative<Constant>(c); });
}

double HistoryFunction::component(int i, double s) const {
  const Component& c = components_[i];
  if (const auto* k = std::get_if<Constant>(&c)) return k->value;
  if (const auto* a = std::get_if<AffinePower>(&c)) {
    const double base = std::max(0.0, a->a * s + a->b);
    return a->p == 1.0 ? base : std::pow(base, a->p);
  }
  const auto& t = std::get<Table>(c);
  if (s <= t.s.front()) return t.v.front();
  if (s >= t.s.back()) return t.v.back();
  auto it = std::upper_bound(t.s.begin(), t.s.end(), s);
  const auto j = static_cast<std::size_t>(it - t.s.begin()) - 1;
  const double w = (s - t.s[j]) / (t.s[j + 1] - t.s[j]);
  return (1.0 - w) * t.v[j] + w * t.v[j + 1];
}

Eigen::VectorXd HistoryFunction::operator()(double s) const {
  Eigen::VectorXd out(size());
  eval_into(s, out);
  return out;
}

void HistoryFunction::eval_into(double s, Eigen::Ref<Eigen::VectorXd> out) const {
  for (int i = 0; i < size(); ++i) out[i] = component(i, s);
}

void HistoryFunction::validate(int n, double tau) const {
  if (size() != n)
    throw std::invalid_argument("history has " + std::to_string(size()) + " components, network has " +
                                std::to_string(n) + " species");
  for (int i = 0; i < n; ++i) {
    const Component& c = components_[i];
    const std::string who = "history component " + std::to_string(i + 1);
    if (const auto* k = std::get_if<Constant>(&c)) {
      if (!(k->value >= 0.0) || !std::isfinite(k->value)) throw std::invalid_argument(who + " is negative");
    } else if (const auto* a = std::get_if<AffinePower>(&c)) {
      if (a->p != 1.0 && a->p != 0.5) throw std::invalid_argument(who + ": exponent must be 1 or 1/2");
      const double lo = a->a * (-tau) + a->b;
      const double hi = a->b;
      const double slack = 1e-12 * std::max(1.0, std::abs(a->b));
      if (lo < -slack || hi < -slack) throw std::invalid_argument(who + " is negative on [-tau, 0]");
    } else {
      const auto& t = std::get<Table>(c);
      if (t.s.size() != t.v.size() || t.s.empty()) throw std::invalid_argument(who + ": malformed table");
      if (!std::is_sorted(t.s.begin(), t.s.end())) throw std::invalid_argument(who + ": table s not sorted");
      for (double v : t.v)
        if (!(v >= 0.0)) throw std::invalid_argument(who + " has a negative table value");
    }
  }
}

std::string HistoryFunction::describe() const {
  std::string out;
  for (const auto& c : components_) {
    if (!out.empty()) out += ";";
    if (const auto* k = std::get_if<Constant>(&c)) {
      out += k->value == 0.0 ? "zero" : "const " + format_double(k->value);
    } else if (const auto* a = std::get_if<AffinePower>(&c)) {
      out += std::string(a->p == 1.0 ? "affine(" : "sqrtaffine(") + format_double(a->a) + "," +
             format_double(a->b) + ")";
    } else {
      out += "table(" + std::to_string(std::get<Table>(c).s.size()) + " samples)";
    }
  }
  return out;
}

}  // namespace dcrn
