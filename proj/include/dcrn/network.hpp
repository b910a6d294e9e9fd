#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dcrn/kernel.hpp"

namespace dcrn {

/// Stoichiometric coefficients of one side of a reaction.
struct Complex {
  Eigen::VectorXi coeffs;

  Eigen::Index size() const { return coeffs.size(); }
  bool is_zero() const { return (coeffs.array() == 0).all(); }

  friend bool operator==(const Complex& a, const Complex& b) {
    return a.coeffs.size() == b.coeffs.size() && (a.coeffs.array() == b.coeffs.array()).all();
  }
  friend bool operator<(const Complex& a, const Complex& b) {
    return std::lexicographical_compare(a.coeffs.begin(), a.coeffs.end(), b.coeffs.begin(),
                                        b.coeffs.end());
  }
};

/// x^y with the convention 0^0 = 1.
template <typename Derived>
typename Derived::Scalar monomial(const Eigen::MatrixBase<Derived>& x, const Complex& y) {
  using Scalar = typename Derived::Scalar;
  Scalar value(1);
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    for (int p = 0; p < y.coeffs[i]; ++p) value *= x[i];
  }
  return value;
}

/// y . Ln(x), the logarithm of x^y for strictly positive x.
template <typename Derived>
typename Derived::Scalar log_monomial(const Eigen::MatrixBase<Derived>& x, const Complex& y) {
  typename Derived::Scalar value(0);
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y.coeffs[i] != 0) value += y.coeffs[i] * std::log(x[i]);
  }
  return value;
}

struct Species {
  int index = 0;
  std::string name;
};

struct Reaction {
  Complex source;
  Complex product;
  double rate = 1.0;
  DelayKernel kernel;
};

/// Immutable mass-action network with per-reaction delay kernels.
class ReactionNetwork {
 public:
  ReactionNetwork() = default;
  /// Validates: unique species names, complexes of length n, rate > 0,
  /// source != product. Throws std::invalid_argument otherwise.
  ReactionNetwork(std::vector<std::string> species_names, std::vector<Reaction> reactions);

  int num_species() const { return static_cast<int>(species_.size()); }
  int num_reactions() const { return static_cast<int>(reactions_.size()); }
  const std::vector<Species>& species() const { return species_; }
  const std::vector<Reaction>& reactions() const { return reactions_; }
  const Reaction& reaction(int k) const { return reactions_[k]; }
  /// Index of a species by name, or -1.
  int species_index(std::string_view name) const;

  /// tau: the largest kernel support over all reactions.
  double max_delay() const { return max_delay_; }
  bool delay_free() const;
  bool all_point_mass() const;

  Complex complex_from(const std::vector<std::pair<std::string, int>>& terms) const;

 private:
  std::vector<Species> species_;
  std::vector<Reaction> reactions_;
  double max_delay_ = 0.0;
};

/// Parses the line-oriented network language. Relative table() paths are
/// resolved against base_dir. Throws ParseError.
ReactionNetwork parse_network(std::string_view text, const std::string& base_dir = ".");
ReactionNetwork load_network(const std::string& path);

/// Renders a network back into the network language, one `->` line per reaction.
std::string to_text(const ReactionNetwork& net);
std::string to_text(const ReactionNetwork& net, const Complex& c);

/// FNV-1a hash of the canonical text form.
std::uint64_t network_hash(const ReactionNetwork& net);

}  // namespace dcrn
