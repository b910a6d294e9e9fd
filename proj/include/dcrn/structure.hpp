#pragma once

#include <Eigen/Core>

#include <vector>

#include "dcrn/network.hpp"

namespace dcrn {

/// Multigraph of distinct complexes; one edge per reaction, weighted by its rate.
struct ComplexGraph {
  struct Edge {
    int from = 0;
    int to = 0;
    double weight = 0.0;
    int reaction = 0;
  };
  std::vector<Complex> nodes;
  std::vector<Edge> edges;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int index_of(const Complex& c) const;
};

ComplexGraph complex_graph(const ReactionNetwork& net);

/// Connected components of the underlying undirected graph, each sorted.
std::vector<std::vector<int>> linkage_classes(const ComplexGraph& g);
/// Strongly connected component id of every node (Tarjan).
std::vector<int> strong_components(const ComplexGraph& g);
/// Every linkage class is strongly connected.
bool is_weakly_reversible(const ComplexGraph& g);

/// Delay-independent structure of a network.
struct StoichInfo {
  Eigen::MatrixXi stoich;  ///< n x r, columns y'_k - y_k
  int rank = 0;
  /// n x (n - rank); columns span the orthogonal complement of the
  /// stoichiometric subspace, coprime integers with positive leading entry.
  Eigen::MatrixXi ortho_basis;
  std::vector<Complex> complexes;
  std::vector<std::vector<int>> linkage;
  bool weakly_reversible = false;
  int deficiency = 0;

  int num_conservation_laws() const { return static_cast<int>(ortho_basis.cols()); }
  Eigen::MatrixXd basis() const { return ortho_basis.cast<double>(); }
};

StoichInfo analyze_structure(const ReactionNetwork& net);

}  // namespace dcrn
