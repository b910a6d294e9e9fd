#include "dcrn/structure.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "dcrn/rational.hpp"

namespace dcrn {

int ComplexGraph::index_of(const Complex& c) const {
  for (int i = 0; i < num_nodes(); ++i)
    if (nodes[i] == c) return i;
  return -1;
}

ComplexGraph complex_graph(const ReactionNetwork& net) {
  ComplexGraph g;
  auto intern = [&](const Complex& c) {
    int i = g.index_of(c);
    if (i >= 0) return i;
    g.nodes.push_back(c);
    return g.num_nodes() - 1;
  };
  for (int k = 0; k < net.num_reactions(); ++k) {
    const auto& r = net.reaction(k);
    const int from = intern(r.source);
    const int to = intern(r.product);
    g.edges.push_back({from, to, r.rate, k});
  }
  return g;
}

std::vector<std::vector<int>> linkage_classes(const ComplexGraph& g) {
  std::vector<int> parent(g.num_nodes());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
  for (const auto& e : g.edges) parent[find(e.from)] = find(e.to);

  std::vector<std::vector<int>> classes;
  std::vector<int> slot(g.num_nodes(), -1);
  for (int i = 0; i < g.num_nodes(); ++i) {
    const int root = find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(classes.size());
      classes.emplace_back();
    }
    classes[slot[root]].push_back(i);
  }
  return classes;
}

std::vector<int> strong_components(const ComplexGraph& g) {
  const int n = g.num_nodes();
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : g.edges) adj[e.from].push_back(e.to);

  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<bool> on_stack(n, false);
  int counter = 0, ncomp = 0;
  std::function<void(int)> visit = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (int w : adj[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = ncomp;
      } while (w != v);
      ++ncomp;
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  return comp;
}

bool is_weakly_reversible(const ComplexGraph& g) {
  const auto comp = strong_components(g);
  for (const auto& cls : linkage_classes(g)) {
    for (int i : cls)
      if (comp[i] != comp[cls.front()]) return false;
  }
  return true;
}

StoichInfo analyze_structure(const ReactionNetwork& net) {
  StoichInfo info;
  const int n = net.num_species();
  const int r = net.num_reactions();
  info.stoich.resize(n, r);
  for (int k = 0; k < r; ++k)
    info.stoich.col(k) = net.reaction(k).product.coeffs - net.reaction(k).source.coeffs;

  // S-perp is the null space of S^T.
  RationalMatrix st(r, std::vector<Rational>(n));
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < n; ++i) st[k][i] = Rational(info.stoich(i, k));
  const auto basis = integer_nullspace(st, n);
  info.rank = n - static_cast<int>(basis.size());
  info.ortho_basis.resize(n, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (int i = 0; i < n; ++i) info.ortho_basis(i, j) = static_cast<int>(basis[j][i]);

  const ComplexGraph g = complex_graph(net);
  info.complexes = g.nodes;
  info.linkage = linkage_classes(g);
  info.weakly_reversible = is_weakly_reversible(g);
  info.deficiency = g.num_nodes() - static_cast<int>(info.linkage.size()) - info.rank;
  return info;
}

}  // namespace dcrn
