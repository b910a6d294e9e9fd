#include "dcrn/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "dcrn/format.hpp"

namespace dcrn {

DelayKernel::DelayKernel(std::variant<PointMass, Uniform, Table> rep) : rep_(std::move(rep)) {
  if (auto* t = std::get_if<Table>(&rep_)) {
    cumulative_.assign(t->s.size(), 0.0);
    for (std::size_t i = 1; i < t->s.size(); ++i)
      cumulative_[i] = cumulative_[i - 1] + 0.5 * (t->s[i] - t->s[i - 1]) * (t->density[i] + t->density[i - 1]);
    breaks_ = t->s;
    if (breaks_.back() < 0.0) breaks_.push_back(0.0);
  } else if (auto* u = std::get_if<Uniform>(&rep_)) {
    breaks_ = {-u->b, -u->a};
    if (u->a > 0.0) breaks_.push_back(0.0);
  } else {
    const double d = std::get<PointMass>(rep_).delay;
    breaks_ = d > 0.0 ? std::vector<double>{-d, 0.0} : std::vector<double>{0.0};
  }
}

DelayKernel DelayKernel::constant(double delay) {
  if (!(delay >= 0.0) || !std::isfinite(delay))
    throw std::invalid_argument("constant delay must be finite and non-negative");
  return DelayKernel(PointMass{delay});
}

DelayKernel DelayKernel::uniform(double a, double b) {
  if (!(a >= 0.0 && a < b) || !std::isfinite(b))
    throw std::invalid_argument("uniform(a,b) requires 0 <= a < b");
  return DelayKernel(Uniform{a, b});
}

DelayKernel DelayKernel::table(std::vector<double> s, std::vector<double> density, std::string source) {
  if (s.size() != density.size() || s.size() < 2)
    throw std::invalid_argument("kernel table needs at least two (s, density) rows");
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return s[i] < s[j]; });
  std::vector<double> ss, gg;
  for (auto i : order) {
    if (!(s[i] <= 0.0)) throw std::invalid_argument("kernel table abscissae must satisfy s <= 0");
    if (!(density[i] >= 0.0)) throw std::invalid_argument("kernel table has a negative density");
    if (!ss.empty() && s[i] == ss.back()) throw std::invalid_argument("kernel table has repeated s");
    ss.push_back(s[i]);
    gg.push_back(density[i]);
  }
  double mass = 0.0;
  for (std::size_t i = 1; i < ss.size(); ++i) mass += 0.5 * (ss[i] - ss[i - 1]) * (gg[i] + gg[i - 1]);
  if (!(mass > 0.0)) throw std::invalid_argument("kernel table has zero mass");
  for (auto& g : gg) g /= mass;
  return DelayKernel(Table{std::move(ss), std::move(gg), std::move(source)});
}

DelayKernel DelayKernel::table_from_file(const std::string& path, const std::string& written_as) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open kernel table '" + path + "'");
  std::vector<double> s, g;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::string a, b;
    if (!(fields >> a)) continue;
    if (a.front() == '#') continue;
    fields >> b;
    auto sv = parse_double(a);
    auto gv = parse_double(b);
    if (!sv || !gv) {
      if (first) {  // header row
        first = false;
        continue;
      }
      throw std::invalid_argument("malformed row in kernel table '" + path + "': " + line);
    }
    first = false;
    s.push_back(*sv);
    g.push_back(*gv);
  }
  return table(std::move(s), std::move(g), written_as);
}

double DelayKernel::point_delay() const {
  if (const auto* p = std::get_if<PointMass>(&rep_)) return p->delay;
  throw std::logic_error("point_delay() on a distributed kernel");
}

double DelayKernel::support() const {
  return std::visit(
      [](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, PointMass>) return k.delay;
        else if constexpr (std::is_same_v<K, Uniform>) return k.b;
        else return -k.s.front();
      },
      rep_);
}

double DelayKernel::density(double s) const {
  if (const auto* u = std::get_if<Uniform>(&rep_)) {
    return (s >= -u->b && s <= -u->a) ? 1.0 / (u->b - u->a) : 0.0;
  }
  if (const auto* t = std::get_if<Table>(&rep_)) {
    if (s < t->s.front() || s > t->s.back()) return 0.0;
    auto it = std::upper_bound(t->s.begin(), t->s.end(), s);
    if (it == t->s.end()) return t->density.back();
    const auto i = static_cast<std::size_t>(it - t->s.begin()) - 1;
    const double w = (s - t->s[i]) / (t->s[i + 1] - t->s[i]);
    return (1.0 - w) * t->density[i] + w * t->density[i + 1];
  }
  return 0.0;
}

double DelayKernel::mass_before(double u) const {
  if (const auto* p = std::get_if<PointMass>(&rep_)) return u >= -p->delay ? 1.0 : 0.0;
  if (const auto* k = std::get_if<Uniform>(&rep_)) {
    if (u <= -k->b) return 0.0;
    if (u >= -k->a) return 1.0;
    return (u + k->b) / (k->b - k->a);
  }
  const auto& t = std::get<Table>(rep_);
  if (u <= t.s.front()) return 0.0;
  if (u >= t.s.back()) return 1.0;
  auto it = std::upper_bound(t.s.begin(), t.s.end(), u);
  const auto i = static_cast<std::size_t>(it - t.s.begin()) - 1;
  return cumulative_[i] + 0.5 * (u - t.s[i]) * (t.density[i] + density(u));
}

double DelayKernel::first_moment() const {
  if (const auto* p = std::get_if<PointMass>(&rep_)) return p->delay;
  if (const auto* k = std::get_if<Uniform>(&rep_)) return 0.5 * (k->a + k->b);
  // Exact for a piecewise-linear density: integrate -s * g(s) per segment.
  const auto& t = std::get<Table>(rep_);
  double m = 0.0;
  for (std::size_t i = 1; i < t.s.size(); ++i) {
    const double s0 = t.s[i - 1], s1 = t.s[i];
    const double g0 = t.density[i - 1], g1 = t.density[i];
    const double mid = 0.5 * (s0 + s1);
    const double gm = 0.5 * (g0 + g1);
    m += -(s1 - s0) / 6.0 * (s0 * g0 + 4.0 * mid * gm + s1 * g1);
  }
  return m;
}

std::string DelayKernel::describe() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, PointMass>) {
          return k.delay == 0.0 ? "none" : "const(" + format_double(k.delay) + ")";
        } else if constexpr (std::is_same_v<K, Uniform>) {
          return "uniform(" + format_double(k.a) + "," + format_double(k.b) + ")";
        } else {
          return "table(" + k.source + ")";
        }
      },
      rep_);
}

}  // namespace dcrn
