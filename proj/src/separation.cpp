#include "arbx/separation.hpp"

#include <algorithm>
#include <cassert>

namespace arbx {

FractionalSolution FractionalSolution::from_parent_map(const Instance& inst,
                                                       const std::vector<int>& parent) {
  FractionalSolution sol = zeros(inst);
  for (int v = 0; v < inst.n(); ++v) {
    if (v == inst.root()) continue;
    int a = inst.arc_index(parent[v], v);
    if (a < 0) throw DomainError("parent arc missing from instance");
    sol.x[a] = 1.0;
  }
  return sol;
}

DiGraph build_dj(const Instance& inst, int j, const FractionalSolution& x) {
  if (j == inst.root()) throw DomainError("build_dj undefined for the root");
  assert(x.x.size() == inst.arcs().size());
  auto allowed = allowed_predecessor_mask(inst, j);
  DiGraph g(inst.n());
  for (int a = 0; a < static_cast<int>(inst.arcs().size()); ++a) {
    const auto& arc = inst.arcs()[a];
    if (!allowed[arc.from] || !allowed[arc.to]) continue;
    g.add_arc(arc.from, arc.to, std::max(0.0, x.x[a]));
  }
  return g;
}

namespace {

// Min (root, j)-cut in D_j; returns the inequality when the value is < 1-eps.
std::optional<CutInequality> separate_for_vertex(const Instance& inst, int j,
                                                 const FractionalSolution& x) {
  DiGraph dj = build_dj(inst, j, x);
  CutSet cut = min_cut(dj, inst.root(), j);
  if (cut.value >= 1.0 - kSeparationEps) return std::nullopt;

  auto allowed = allowed_predecessor_mask(inst, j);
  CutInequality ineq;
  ineq.target = j;
  ineq.cut_value = cut.value;
  ineq.violation = 1.0 - cut.value;
  std::vector<char> in_sink(inst.n(), 0);
  for (int v = 0; v < inst.n(); ++v) {
    if (allowed[v] && !cut.in_source_side[v]) {
      in_sink[v] = 1;
      ineq.sink_side.push_back(v);
    }
  }
  assert(in_sink[j]);
  assert(!in_sink[inst.root()]);
  // Crossing arcs come from the instance arc set, per the inequality itself,
  // not from the flow network; zero-weight arcs count.
  for (const auto& arc : inst.arcs()) {
    if (allowed[arc.from] && !in_sink[arc.from] && in_sink[arc.to]) {
      ineq.crossing.emplace_back(arc.from, arc.to);
    }
  }
  return ineq;
}

}  // namespace

std::optional<CutInequality> find_violated_inequality(const Instance& inst,
                                                      const FractionalSolution& x) {
  for (int j = 0; j < inst.n(); ++j) {
    if (j == inst.root()) continue;
    if (auto ineq = separate_for_vertex(inst, j, x)) return ineq;
  }
  return std::nullopt;
}

std::vector<CutInequality> separate_all_serial(const Instance& inst, const FractionalSolution& x) {
  std::vector<CutInequality> cuts;
  for (int j = 0; j < inst.n(); ++j) {
    if (j == inst.root()) continue;
    if (auto ineq = separate_for_vertex(inst, j, x)) cuts.push_back(std::move(*ineq));
  }
  std::stable_sort(cuts.begin(), cuts.end(), [](const CutInequality& a, const CutInequality& b) {
    return a.violation > b.violation;
  });
  return cuts;
}

std::vector<CutInequality> separate_all(const Instance& inst, const FractionalSolution& x) {
  const int n = inst.n();
  std::vector<std::optional<CutInequality>> found(n);
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < n; ++j) {
    if (j == inst.root()) continue;
    found[j] = separate_for_vertex(inst, j, x);
  }
  std::vector<CutInequality> cuts;
  for (int j = 0; j < n; ++j) {
    if (found[j]) cuts.push_back(std::move(*found[j]));
  }
  std::stable_sort(cuts.begin(), cuts.end(), [](const CutInequality& a, const CutInequality& b) {
    return a.violation > b.violation;
  });
  return cuts;
}

double evaluate_cut(const CutInequality& cut, const Instance& inst, const FractionalSolution& x) {
  double lhs = 0.0;
  for (auto [i, k] : cut.crossing) {
    int a = inst.arc_index(i, k);
    if (a < 0) throw DomainError("cut references a missing arc");
    lhs += x.x[a];
  }
  return lhs;
}

}  // namespace arbx
