#pragma once

#include <string>
#include <variant>
#include <vector>

namespace dcrn {

/// Weighting of past states in a delayed reaction: a unit-mass measure on
/// [-tau, 0]. A point mass at -tau is a constant delay; tau = 0 means no delay.
class DelayKernel {
 public:
  struct PointMass {
    double delay = 0.0;
  };
  /// Density 1/(b-a) on s in [-b, -a].
  struct Uniform {
    double a = 0.0;
    double b = 1.0;
  };
  /// Piecewise-linear density through (s_i, g_i), zero outside the nodes.
  struct Table {
    std::vector<double> s;
    std::vector<double> density;
    std::string source;  // path as written in the network file
  };

  DelayKernel() = default;

  static DelayKernel none() { return DelayKernel(PointMass{0.0}); }
  static DelayKernel constant(double delay);
  static DelayKernel uniform(double a, double b);
  /// Nodes are sorted and the density renormalized to unit trapezoid mass.
  static DelayKernel table(std::vector<double> s, std::vector<double> density, std::string source = {});
  static DelayKernel table_from_file(const std::string& path, const std::string& written_as);

  bool is_point_mass() const { return std::holds_alternative<PointMass>(rep_); }
  bool is_zero_delay() const { return is_point_mass() && point_delay() == 0.0; }
  /// Delay of a point-mass kernel; throws for distributed kernels.
  double point_delay() const;

  /// Largest delay the kernel looks back to (its support is [-support(), 0]).
  double support() const;
  /// Density at s; meaningless for point masses.
  double density(double s) const;
  /// Mass of the kernel on [-support(), u]; this is the weight of the
  /// history value at lag u inside the conserved quantities.
  double mass_before(double u) const;
  /// Integral of g(s) * (-s) ds.
  double first_moment() const;
  /// Points in [-support(), 0] where density or mass_before is not smooth.
  const std::vector<double>& breakpoints() const { return breaks_; }

  /// DSL spelling: none, const(x), uniform(a,b), table(path).
  std::string describe() const;

  const auto& representation() const { return rep_; }

 private:
  explicit DelayKernel(std::variant<PointMass, Uniform, Table> rep);

  std::variant<PointMass, Uniform, Table> rep_ = PointMass{};
  std::vector<double> cumulative_;  // table: mass up to each node
  std::vector<double> breaks_ = {0.0};
};

}  // namespace dcrn
