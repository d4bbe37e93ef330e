#pragma once

#include <vector>

#include "arbx/instance.hpp"

namespace arbx {

/// Weighted digraph used by the combinatorial kernels. Weights are doubles so
/// the same structure carries integer instance costs and fractional LP values.
struct DiGraph {
  struct Arc {
    int from = 0;
    int to = 0;
    double weight = 0.0;
  };

  explicit DiGraph(int n = 0) : n(n), out(n), in(n) {}

  int add_arc(int from, int to, double weight) {
    int id = static_cast<int>(arcs.size());
    arcs.push_back({from, to, weight});
    out[from].push_back(id);
    in[to].push_back(id);
    return id;
  }

  int n = 0;
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> out;  // arc ids by source
  std::vector<std::vector<int>> in;   // arc ids by target
};

struct EdmondsResult {
  bool feasible = false;
  std::vector<int> parent;       // parent[v] for v != root, -1 at root
  std::vector<int> parent_arc;   // arc id chosen for v, -1 at root
  double cost = 0.0;
  std::vector<int> unreachable;  // populated when infeasible
};

/// Minimum-cost spanning arborescence rooted at `root` (Chu-Liu/Edmonds).
/// Among equal-cost in-arcs the one with the smallest source id wins, so the
/// result is deterministic. Infeasible when some vertex is unreachable.
EdmondsResult edmonds_mca(const DiGraph& g, int root);

struct CutSet {
  std::vector<int> source_side;       // vertices reachable from s in the residual
  std::vector<char> in_source_side;   // indicator over all vertices
  std::vector<int> crossing_arcs;     // arc ids from source side to sink side
  double value = 0.0;
};

/// Minimum s-t cut via Dinic blocking flows. Asserts max-flow == cut value.
/// The source side is the set of vertices reachable from s in the final
/// residual graph, which makes the returned cut canonical.
CutSet min_cut(const DiGraph& g, int s, int t);

/// V_j = { i : (j,i) not in R }: the vertices allowed to precede j on the
/// root-j path. Always contains the root and j itself.
std::vector<int> allowed_predecessors(const Instance& inst, int j);
std::vector<char> allowed_predecessor_mask(const Instance& inst, int j);

/// Vertices reachable from `start` following arcs with weight > eps.
std::vector<char> reachable_from(const DiGraph& g, int start, double eps = 0.0);

}  // namespace arbx
