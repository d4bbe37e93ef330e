#include "arbx/digraph.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace arbx {

namespace {

constexpr double kFlowEps = 1e-9;

struct WorkArc {
  int from;
  int to;
  double weight;
  int link;  // arc index at the enclosing level
};

// One contraction level of Chu-Liu/Edmonds. Returns indices into `arcs` of the
// chosen spanning arborescence of the current graph.
std::vector<int> solve_level(int n, const std::vector<WorkArc>& arcs, int root) {
  std::vector<int> best(n, -1);
  for (int a = 0; a < static_cast<int>(arcs.size()); ++a) {
    const WorkArc& arc = arcs[a];
    if (arc.to == root || arc.from == arc.to) continue;
    int b = best[arc.to];
    if (b < 0 || arc.weight < arcs[b].weight - 0.0 ||
        (arc.weight == arcs[b].weight &&
         std::tie(arc.from, a) < std::tie(arcs[b].from, b))) {
      best[arc.to] = a;
    }
  }
  for (int v = 0; v < n; ++v) {
    if (v != root && best[v] < 0) throw std::logic_error("edmonds: vertex without in-arc");
  }

  // Find a cycle in the chosen-parent graph.
  std::vector<int> state(n, 0);  // 0 unseen, 1 on stack, 2 done
  std::vector<int> cycle;
  for (int v = 0; v < n && cycle.empty(); ++v) {
    int u = v;
    std::vector<int> path;
    while (u != root && state[u] == 0) {
      state[u] = 1;
      path.push_back(u);
      u = arcs[best[u]].from;
    }
    if (u != root && state[u] == 1) {
      auto it = std::find(path.begin(), path.end(), u);
      cycle.assign(it, path.end());
    }
    for (int w : path) state[w] = 2;
  }

  if (cycle.empty()) {
    std::vector<int> chosen;
    chosen.reserve(n - 1);
    for (int v = 0; v < n; ++v) {
      if (v != root) chosen.push_back(best[v]);
    }
    return chosen;
  }

  std::vector<char> in_cycle(n, 0);
  for (int v : cycle) in_cycle[v] = 1;

  std::vector<int> remap(n, -1);
  int next_id = 0;
  for (int v = 0; v < n; ++v) {
    if (!in_cycle[v]) remap[v] = next_id++;
  }
  int super = next_id++;
  for (int v : cycle) remap[v] = super;

  std::vector<WorkArc> contracted;
  contracted.reserve(arcs.size());
  for (int a = 0; a < static_cast<int>(arcs.size()); ++a) {
    const WorkArc& arc = arcs[a];
    int u = remap[arc.from], v = remap[arc.to];
    if (u == v) continue;
    double w = arc.weight;
    if (in_cycle[arc.to]) w -= arcs[best[arc.to]].weight;
    contracted.push_back({u, v, w, a});
  }

  std::vector<int> sub = solve_level(next_id, contracted, remap[root]);

  std::vector<int> chosen;
  chosen.reserve(n - 1);
  int cycle_entry = -1;  // vertex of the cycle entered from outside
  for (int idx : sub) {
    const WorkArc& carc = contracted[idx];
    int orig = carc.link;
    chosen.push_back(orig);
    if (carc.to == super) cycle_entry = arcs[orig].to;
  }
  assert(cycle_entry >= 0);
  for (int v : cycle) {
    if (v != cycle_entry) chosen.push_back(best[v]);
  }
  return chosen;
}

}  // namespace

EdmondsResult edmonds_mca(const DiGraph& g, int root) {
  EdmondsResult res;
  res.parent.assign(g.n, -1);
  res.parent_arc.assign(g.n, -1);

  // All arcs count for reachability here; weights are costs, not capacities.
  std::vector<char> seen(g.n, 0);
  std::queue<int> bfs;
  bfs.push(root);
  seen[root] = 1;
  while (!bfs.empty()) {
    int u = bfs.front();
    bfs.pop();
    for (int a : g.out[u]) {
      int v = g.arcs[a].to;
      if (!seen[v]) {
        seen[v] = 1;
        bfs.push(v);
      }
    }
  }
  for (int v = 0; v < g.n; ++v) {
    if (!seen[v]) res.unreachable.push_back(v);
  }
  if (!res.unreachable.empty()) {
    res.feasible = false;
    return res;
  }

  std::vector<WorkArc> arcs;
  arcs.reserve(g.arcs.size());
  for (int a = 0; a < static_cast<int>(g.arcs.size()); ++a) {
    arcs.push_back({g.arcs[a].from, g.arcs[a].to, g.arcs[a].weight, a});
  }
  std::vector<int> chosen = solve_level(g.n, arcs, root);

  res.feasible = true;
  res.cost = 0.0;
  for (int a : chosen) {
    const auto& arc = g.arcs[a];
    res.parent[arc.to] = arc.from;
    res.parent_arc[arc.to] = a;
    res.cost += arc.weight;
  }
  return res;
}

namespace {

// Residual network for Dinic. Each graph arc becomes a forward/backward pair.
struct FlowNet {
  struct Edge {
    int to;
    double cap;
    int rev;
    int graph_arc;  // -1 for reverse edges
  };

  explicit FlowNet(int n) : adj(n) {}

  void add(int u, int v, double cap, int graph_arc) {
    adj[u].push_back({v, cap, static_cast<int>(adj[v].size()), graph_arc});
    adj[v].push_back({u, 0.0, static_cast<int>(adj[u].size()) - 1, -1});
  }

  std::vector<std::vector<Edge>> adj;
};

bool dinic_levels(const FlowNet& net, int s, int t, std::vector<int>& level) {
  std::fill(level.begin(), level.end(), -1);
  std::queue<int> q;
  q.push(s);
  level[s] = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (const auto& e : net.adj[u]) {
      if (e.cap > kFlowEps && level[e.to] < 0) {
        level[e.to] = level[u] + 1;
        q.push(e.to);
      }
    }
  }
  return level[t] >= 0;
}

double dinic_push(FlowNet& net, const std::vector<int>& level, std::vector<int>& it, int u, int t,
                  double limit) {
  if (u == t) return limit;
  for (int& i = it[u]; i < static_cast<int>(net.adj[u].size()); ++i) {
    auto& e = net.adj[u][i];
    if (e.cap > kFlowEps && level[e.to] == level[u] + 1) {
      double pushed = dinic_push(net, level, it, e.to, t, std::min(limit, e.cap));
      if (pushed > kFlowEps) {
        e.cap -= pushed;
        net.adj[e.to][e.rev].cap += pushed;
        return pushed;
      }
    }
  }
  return 0.0;
}

}  // namespace

CutSet min_cut(const DiGraph& g, int s, int t) {
  if (s == t) throw std::invalid_argument("min_cut requires s != t");

  FlowNet net(g.n);
  for (int a = 0; a < static_cast<int>(g.arcs.size()); ++a) {
    const auto& arc = g.arcs[a];
    if (arc.weight < 0.0) throw std::invalid_argument("min_cut requires non-negative weights");
    net.add(arc.from, arc.to, arc.weight, a);
  }

  double flow = 0.0;
  std::vector<int> level(g.n);
  while (dinic_levels(net, s, t, level)) {
    std::vector<int> it(g.n, 0);
    for (;;) {
      double pushed = dinic_push(net, level, it, s, t, std::numeric_limits<double>::infinity());
      if (pushed <= kFlowEps) break;
      flow += pushed;
    }
  }

  CutSet cut;
  cut.in_source_side.assign(g.n, 0);
  std::queue<int> q;
  q.push(s);
  cut.in_source_side[s] = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (const auto& e : net.adj[u]) {
      if (e.cap > kFlowEps && !cut.in_source_side[e.to]) {
        cut.in_source_side[e.to] = 1;
        q.push(e.to);
      }
    }
  }
  for (int v = 0; v < g.n; ++v) {
    if (cut.in_source_side[v]) cut.source_side.push_back(v);
  }

  cut.value = 0.0;
  for (int a = 0; a < static_cast<int>(g.arcs.size()); ++a) {
    const auto& arc = g.arcs[a];
    if (cut.in_source_side[arc.from] && !cut.in_source_side[arc.to]) {
      cut.crossing_arcs.push_back(a);
      cut.value += arc.weight;
    }
  }

  // Strong duality must hold on every invocation.
  if (std::fabs(flow - cut.value) > 1e-7 * std::max(1.0, std::fabs(cut.value))) {
    throw std::logic_error("max-flow / min-cut mismatch: flow=" + std::to_string(flow) +
                           " cut=" + std::to_string(cut.value));
  }
  return cut;
}

std::vector<char> allowed_predecessor_mask(const Instance& inst, int j) {
  if (j == inst.root()) throw DomainError("allowed_predecessors undefined for the root");
  std::vector<char> mask(inst.n(), 1);
  for (auto [s, t] : inst.precedences()) {
    if (s == j) mask[t] = 0;
  }
  return mask;
}

std::vector<int> allowed_predecessors(const Instance& inst, int j) {
  auto mask = allowed_predecessor_mask(inst, j);
  std::vector<int> out;
  for (int v = 0; v < inst.n(); ++v) {
    if (mask[v]) out.push_back(v);
  }
  return out;
}

std::vector<char> reachable_from(const DiGraph& g, int start, double eps) {
  std::vector<char> seen(g.n, 0);
  std::queue<int> q;
  q.push(start);
  seen[start] = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int a : g.out[u]) {
      const auto& arc = g.arcs[a];
      if (arc.weight > eps && !seen[arc.to]) {
        seen[arc.to] = 1;
        q.push(arc.to);
      }
    }
  }
  return seen;
}

}  // namespace arbx
