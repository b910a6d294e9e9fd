#pragma once

#include <Eigen/Core>

#include <string>
#include <variant>
#include <vector>

namespace dcrn {

/// Initial data: one non-negative scalar function of the lag s in [-tau, 0]
/// per species.
class HistoryFunction {
 public:
  struct Constant {
    double value = 0.0;
  };
  /// (a*s + b)^p with p in {1, 1/2}.
  struct AffinePower {
    double a = 0.0;
    double b = 0.0;
    double p = 1.0;
  };
  /// Samples (s_i, v_i), linear in between, held constant beyond the ends.
  struct Table {
    std::vector<double> s;
    std::vector<double> v;
  };
  using Component = std::variant<Constant, AffinePower, Table>;

  HistoryFunction() = default;
  explicit HistoryFunction(std::vector<Component> components) : components_(std::move(components)) {}

  static HistoryFunction constant(const Eigen::VectorXd& x);
  static Component affine(double a, double b) { return AffinePower{a, b, 1.0}; }
  static Component sqrt_affine(double a, double b) { return AffinePower{a, b, 0.5}; }

  int size() const { return static_cast<int>(components_.size()); }
  const std::vector<Component>& components() const { return components_; }
  bool is_constant() const;

  double component(int i, double s) const;
  Eigen::VectorXd operator()(double s) const;
  void eval_into(double s, Eigen::Ref<Eigen::VectorXd> out) const;

  /// Throws std::invalid_argument if some component is negative somewhere on
  /// [-tau, 0] or the dimension differs from n.
  void validate(int n, double tau) const;

  std::string describe() const;

 private:
  std::vector<Component> components_;
};

}  // namespace dcrn
