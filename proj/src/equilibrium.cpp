#include "dcrn/equilibrium.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dcrn/errors.hpp"

namespace dcrn {

BalanceCheck check_complex_balance(const ReactionNetwork& net, const Eigen::VectorXd& x, double tol) {
  if (x.size() != net.num_species() || !(x.array() > 0.0).all())
    throw std::invalid_argument("complex balance is tested at strictly positive states only");
  const ComplexGraph g = complex_graph(net);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(g.num_nodes());
  Eigen::VectorXd in = Eigen::VectorXd::Zero(g.num_nodes());
  for (const auto& e : g.edges) {
    const double flux = e.weight * monomial(x, g.nodes[e.from]);
    out[e.from] += flux;
    in[e.to] += flux;
  }
  BalanceCheck check;
  if (g.num_nodes() == 0) {
    check.balanced = true;
    return check;
  }
  check.residual = (out - in).cwiseAbs().maxCoeff();
  check.balanced = check.residual <= tol * std::max(1.0, out.maxCoeff());
  return check;
}

Eigen::VectorXd tree_constants(const ComplexGraph& graph, const std::vector<std::vector<int>>& linkage) {
  Eigen::VectorXd K = Eigen::VectorXd::Zero(graph.num_nodes());
  std::vector<int> local(graph.num_nodes(), -1);
  for (const auto& cls : linkage) {
    const auto m = static_cast<Eigen::Index>(cls.size());
    for (Eigen::Index i = 0; i < m; ++i) local[cls[i]] = static_cast<int>(i);
    // Kirchhoff matrix: A(i, j) = rate j -> i, columns sum to zero.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
    for (const auto& e : graph.edges) {
      if (local[e.from] < 0 || local[e.to] < 0) continue;
      A(local[e.to], local[e.from]) += e.weight;
      A(local[e.from], local[e.from]) -= e.weight;
    }
    const double sign = (m - 1) % 2 == 0 ? 1.0 : -1.0;
    Eigen::VectorXd k(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (m == 1) {
        k[i] = 1.0;
        continue;
      }
      Eigen::MatrixXd minor(m - 1, m - 1);
      for (Eigen::Index r = 0, rr = 0; r < m; ++r) {
        if (r == i) continue;
        for (Eigen::Index c = 0, cc = 0; c < m; ++c) {
          if (c == i) continue;
          minor(rr, cc++) = A(r, c);
        }
        ++rr;
      }
      k[i] = sign * minor.fullPivLu().determinant();
    }
    const double top = k.maxCoeff();
    for (Eigen::Index i = 0; i < m; ++i) K[cls[i]] = top > 0.0 ? k[i] / top : k[i];
    for (int c : cls) local[c] = -1;
  }
  return K;
}

EquilibriumResult find_complex_balanced_equilibrium(const ReactionNetwork& net) {
  return find_complex_balanced_equilibrium(net, analyze_structure(net));
}

EquilibriumResult find_complex_balanced_equilibrium(const ReactionNetwork& net, const StoichInfo& stoich) {
  if (!stoich.weakly_reversible) throw NotWeaklyReversible();
  const ComplexGraph g = complex_graph(net);
  const int n = net.num_species();
  const auto L = static_cast<Eigen::Index>(stoich.linkage.size());
  const Eigen::VectorXd K = tree_constants(g, stoich.linkage);

  // y_eta . Ln x - mu_l = ln K_eta for each complex eta in linkage class l.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(g.num_nodes(), n + L);
  Eigen::VectorXd b(g.num_nodes());
  for (Eigen::Index l = 0; l < L; ++l) {
    for (int eta : stoich.linkage[l]) {
      if (!(K[eta] > 0.0)) throw NotComplexBalanced(std::numeric_limits<double>::infinity());
      A.row(eta).head(n) = g.nodes[eta].coeffs.cast<double>().transpose();
      A(eta, n + l) = -1.0;
      b[eta] = std::log(K[eta]);
    }
  }

  EquilibriumResult result;
  if (g.num_nodes() == 0) {
    result.point = Eigen::VectorXd::Ones(n);
  } else {
    const Eigen::VectorXd z = A.completeOrthogonalDecomposition().solve(b);
    result.log_residual = (A * z - b).cwiseAbs().maxCoeff();
    if (result.log_residual > 1e-9 * (1.0 + b.cwiseAbs().maxCoeff())) throw NotComplexBalanced(result.log_residual);
    result.point = z.head(n).array().exp();
  }

  const BalanceCheck check = check_complex_balance(net, result.point);
  result.complex_balanced = check.balanced;
  result.residual = check.residual;
  if (!check.balanced) throw NotComplexBalanced(check.residual);
  result.deficiency_zero_certificate = stoich.deficiency == 0;
  result.key = ClassKey{stoich.basis().transpose() * compute_h_constant(net, result.point)};
  return result;
}

Eigen::VectorXd log_coordinates(const StoichInfo& stoich, const Eigen::VectorXd& x_ref, const Eigen::VectorXd& x) {
  const Eigen::MatrixXd B = stoich.basis();
  if (B.cols() == 0) return Eigen::VectorXd(0);
  const Eigen::VectorXd d = x.array().log() - x_ref.array().log();
  return B.colPivHouseholderQr().solve(d);
}

InClassResult in_class_equilibrium(const ReactionNetwork& net, const StoichInfo& stoich,
                                   const Eigen::VectorXd& x_ref, const ClassKey& key,
                                   const InClassOptions& options) {
  const Eigen::MatrixXd B = stoich.basis();
  const Eigen::Index m = B.cols();
  if (key.size() != m) throw std::invalid_argument("class key length differs from the number of conservation laws");
  if (!(x_ref.array() > 0.0).all()) throw std::invalid_argument("reference equilibrium must be positive");

  InClassResult result;
  result.coefficients = Eigen::VectorXd::Zero(m);
  if (m == 0) {
    result.point = x_ref;
    return result;
  }
  // A non-negative conservation law only takes positive values on positive states.
  for (Eigen::Index j = 0; j < m; ++j) {
    if ((B.col(j).array() >= 0.0).all() && !(key.values[j] > 0.0))
      throw AnalysisError("class key component " + std::to_string(j + 1) +
                          " is not attainable by a positive equilibrium");
  }
  if (options.start) result.coefficients = *options.start;

  // The residual is the gradient of the strictly convex
  //   phi(c) = sum_i x_i + sum_k kappa_k m_k x^{y_k} - key . c,  x = x_ref o exp(Bc),
  // so its Jacobian B^T (diag x + sum_k kappa_k m_k x^{y_k} y_k y_k^T) B is SPD.
  auto point = [&](const Eigen::VectorXd& c) -> Eigen::VectorXd {
    return (x_ref.array() * (B * c).array().exp()).matrix();
  };
  auto residual = [&](const Eigen::VectorXd& c) -> Eigen::VectorXd {
    return B.transpose() * compute_h_constant(net, point(c)) - key.values;
  };
  auto jacobian = [&](const Eigen::VectorXd& c) {
    const Eigen::VectorXd x = point(c);
    Eigen::MatrixXd H = x.asDiagonal();
    for (const Reaction& r : net.reactions()) {
      const double w = r.rate * r.kernel.first_moment() * monomial(x, r.source);
      if (w == 0.0) continue;
      const Eigen::VectorXd y = r.source.coeffs.cast<double>();
      H += w * y * y.transpose();
    }
    return Eigen::MatrixXd(B.transpose() * H * B);
  };

  const double scale = std::max(1.0, key.values.cwiseAbs().maxCoeff());
  Eigen::VectorXd c = result.coefficients;
  Eigen::VectorXd F = residual(c);
  double norm = F.cwiseAbs().maxCoeff();
  int it = 0;
  for (; it < options.max_iterations && norm > 1e-15 * scale; ++it) {
    const Eigen::VectorXd step = jacobian(c).ldlt().solve(-F);
    double lambda = 1.0;
    bool improved = false;
    while (lambda >= std::ldexp(1.0, -20)) {
      const Eigen::VectorXd trial = c + lambda * step;
      const Eigen::VectorXd Ft = residual(trial);
      const double nt = Ft.cwiseAbs().maxCoeff();
      if (std::isfinite(nt) && nt < norm) {
        c = trial;
        F = Ft;
        norm = nt;
        improved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!improved) break;
  }

  result.coefficients = c;
  result.point = point(c);
  result.residual = norm;
  result.iterations = it;
  if (!(norm <= options.tol * scale)) throw NewtonFailure(it, norm);
  return result;
}

}  // namespace dcrn
