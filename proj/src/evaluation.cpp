#include "arbx/evaluation.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace arbx {

std::string TreeViolation::describe() const {
  switch (kind) {
    case Kind::MissingParent:
      return "vertex " + std::to_string(vertex) + " has no parent";
    case Kind::UnknownArc:
      return "parent arc into vertex " + std::to_string(vertex) + " is not an instance arc";
    case Kind::BadRootEntry:
      return "root vertex " + std::to_string(vertex) + " must not have a parent";
    case Kind::Cycle: {
      std::string s = "cycle:";
      for (int v : cycle) s += " " + std::to_string(v);
      return s;
    }
  }
  return "unknown violation";
}

std::vector<TreeViolation> validate_arborescence(const Instance& inst,
                                                 const std::vector<int>& parent) {
  std::vector<TreeViolation> out;
  const int n = inst.n();
  const int root = inst.root();
  if (static_cast<int>(parent.size()) != n) {
    throw DomainError("parent map must cover all vertices");
  }
  if (parent[root] != -1) out.push_back({TreeViolation::Kind::BadRootEntry, root, {}});

  for (int v = 0; v < n; ++v) {
    if (v == root) continue;
    if (parent[v] < 0 || parent[v] >= n) {
      out.push_back({TreeViolation::Kind::MissingParent, v, {}});
    } else if (!inst.has_arc(parent[v], v)) {
      out.push_back({TreeViolation::Kind::UnknownArc, v, {}});
    }
  }

  // Cycle detection over the parent relation; each cycle reported once.
  std::vector<int> state(n, 0);  // 0 unseen, 1 on current chain, 2 done
  state[root] = 2;
  for (int v = 0; v < n; ++v) {
    if (state[v] != 0) continue;
    std::vector<int> chain;
    int u = v;
    while (u >= 0 && u < n && state[u] == 0) {
      state[u] = 1;
      chain.push_back(u);
      u = parent[u];
    }
    if (u >= 0 && u < n && state[u] == 1) {
      auto it = std::find(chain.begin(), chain.end(), u);
      TreeViolation tv{TreeViolation::Kind::Cycle, u, {}};
      tv.cycle.assign(it, chain.end());
      out.push_back(std::move(tv));
    }
    for (int w : chain) state[w] = 2;
  }
  return out;
}

Arborescence make_arborescence(const Instance& inst, const std::vector<int>& parent) {
  auto violations = validate_arborescence(inst, parent);
  if (!violations.empty()) {
    throw DomainError("invalid arborescence: " + violations.front().describe());
  }
  Arborescence arbo;
  arbo.parent = parent;
  arbo.cost = 0;
  for (int v = 0; v < inst.n(); ++v) {
    if (v != inst.root()) arbo.cost += inst.arc_cost(parent[v], v);
  }
  return arbo;
}

std::vector<std::pair<int, int>> check_precedences(const Instance& inst,
                                                   const Arborescence& arbo) {
  const int n = inst.n();
  const int root = inst.root();
  // depth-limited ancestor walk; the tree is acyclic by precondition
  std::vector<std::pair<int, int>> violated;
  for (auto [s, t] : inst.precedences()) {
    int u = s;
    int steps = 0;
    bool hit = false;
    while (u != root && steps++ <= n) {
      if (u == t) {
        hit = true;
        break;
      }
      u = arbo.parent[u];
    }
    if (hit) violated.emplace_back(s, t);
  }
  return violated;
}

std::optional<TimedSolution> entry_times(const Instance& inst, const Arborescence& arbo) {
  const int n = inst.n();
  const int root = inst.root();

  // Constraint digraph: tree arc i->j with weight c_ij, precedence arc s->t
  // with weight 0. d is the least fixpoint of d[j] >= d[i] + w(i,j), d[root]=0.
  struct Edge {
    int from, to;
    std::int64_t w;
  };
  std::vector<Edge> edges;
  edges.reserve(n + inst.precedences().size());
  for (int v = 0; v < n; ++v) {
    if (v != root) edges.push_back({arbo.parent[v], v, inst.arc_cost(arbo.parent[v], v)});
  }
  for (auto [s, t] : inst.precedences()) edges.push_back({s, t, 0});

  std::vector<std::int64_t> d(n, 0);
  bool changed = true;
  for (int round = 0; round < n && changed; ++round) {
    changed = false;
    for (const auto& e : edges) {
      if (d[e.from] + e.w > d[e.to]) {
        d[e.to] = d[e.from] + e.w;
        changed = true;
      }
    }
  }
  if (changed) {
    // One extra relaxation round still improved: strictly positive cycle.
    for (const auto& e : edges) {
      if (d[e.from] + e.w > d[e.to]) return std::nullopt;
    }
  }

  TimedSolution ts;
  ts.tree = arbo;
  ts.entry = std::move(d);
  ts.waiting.assign(n, 0);
  for (int v = 0; v < n; ++v) {
    if (v == root) continue;
    ts.waiting[v] = ts.entry[v] - ts.entry[arbo.parent[v]] - inst.arc_cost(arbo.parent[v], v);
    assert(ts.waiting[v] >= 0);
  }
  std::int64_t wait_sum = 0;
  for (int v = 0; v < n; ++v) wait_sum += ts.waiting[v];
  ts.objective = arbo.cost + wait_sum;

  // Telescoping identity: the objective equals sum_j (d_j - d_parent(j)).
  std::int64_t telescoped = 0;
  for (int v = 0; v < n; ++v) {
    if (v != root) telescoped += ts.entry[v] - ts.entry[arbo.parent[v]];
  }
  assert(telescoped == ts.objective);
  (void)telescoped;
  return ts;
}

std::int64_t objective_pcmca(const Arborescence& arbo) { return arbo.cost; }

std::int64_t objective_pcmcawt(const TimedSolution& ts) {
  std::int64_t wait_sum = 0;
  for (auto w : ts.waiting) wait_sum += w;
  assert(ts.objective == ts.tree.cost + wait_sum);
  return ts.tree.cost + wait_sum;
}

double relative_gap(double reference, double bound) {
  if (reference <= 0.0) throw DomainError("relative gap needs a positive reference value");
  return 100.0 * (reference - bound) / reference;
}

}  // namespace arbx
