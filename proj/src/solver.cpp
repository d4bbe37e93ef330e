#include "arbx/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>

#include "arbx/cutting_plane.hpp"
#include "arbx/digraph.hpp"
#include "arbx/log.hpp"
#include "arbx/models.hpp"
#include "arbx/simplex.hpp"

namespace arbx {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Limit: return "limit";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Candidate parent arcs per non-root vertex, ascending by source id.
std::vector<std::vector<int>> parent_choices(const Instance& inst) {
  std::vector<std::vector<int>> choices(inst.n());
  for (int v = 0; v < inst.n(); ++v) {
    if (v == inst.root()) continue;
    choices[v] = inst.in_arcs(v);
    std::sort(choices[v].begin(), choices[v].end(), [&](int a, int b) {
      return inst.arcs()[a].from < inst.arcs()[b].from;
    });
  }
  return choices;
}

struct BruteBest {
  bool found = false;
  std::int64_t objective = 0;
  std::vector<int> parent;

  void offer(std::int64_t obj, const std::vector<int>& p) {
    if (!found || obj < objective || (obj == objective && p < parent)) {
      found = true;
      objective = obj;
      parent = p;
    }
  }
  void merge(const BruteBest& other) {
    if (other.found) offer(other.objective, other.parent);
  }
};

// Walks every parent-map combination; `evaluate` returns the objective of a
// feasible map or nothing. First digit range allows splitting across threads.
template <typename Eval>
BruteBest enumerate_maps(const Instance& inst, const std::vector<int>& vertices,
                         const std::vector<std::vector<int>>& choices, size_t first_begin,
                         size_t first_end, Eval&& evaluate) {
  BruteBest best;
  const int k = static_cast<int>(vertices.size());
  std::vector<int> parent(inst.n(), -1);
  std::vector<size_t> idx(k, 0);
  if (k == 0) {
    if (auto obj = evaluate(parent)) best.offer(*obj, parent);
    return best;
  }
  for (size_t first = first_begin; first < first_end; ++first) {
    idx.assign(k, 0);
    idx[0] = first;
    for (;;) {
      for (int i = 0; i < k; ++i) {
        int arc = choices[vertices[i]][idx[i]];
        parent[vertices[i]] = inst.arcs()[arc].from;
      }
      if (auto obj = evaluate(parent)) best.offer(*obj, parent);
      int pos = k - 1;
      while (pos >= 1) {
        if (++idx[pos] < choices[vertices[pos]].size()) break;
        idx[pos] = 0;
        --pos;
      }
      if (pos < 1) break;
    }
  }
  return best;
}

// Cheap feasibility check: parent relation acyclic (arc existence holds by
// construction) and every precedence pair respected.
bool tree_ok(const Instance& inst, const std::vector<int>& parent, std::int64_t* cost_out) {
  const int n = inst.n();
  const int root = inst.root();
  // ascend from every vertex; >n steps means a cycle
  for (int v = 0; v < n; ++v) {
    if (v == root) continue;
    int u = v, steps = 0;
    while (u != root) {
      u = parent[u];
      if (++steps > n) return false;
    }
  }
  for (auto [s, t] : inst.precedences()) {
    int u = s;
    while (u != root) {
      if (u == t) return false;
      u = parent[u];
    }
  }
  std::int64_t cost = 0;
  for (int v = 0; v < n; ++v) {
    if (v != root) cost += inst.arc_cost(parent[v], v);
  }
  *cost_out = cost;
  return true;
}

template <typename Eval>
BruteBest brute_force_run(const Instance& inst, const SolverLimits& limits, bool parallel,
                          Eval&& evaluate) {
  if (inst.n() > limits.brute_force_cap) {
    throw DomainError("brute force refused: " + std::to_string(inst.n()) +
                      " vertices exceed cap " + std::to_string(limits.brute_force_cap));
  }
  std::vector<int> vertices;
  for (int v = 0; v < inst.n(); ++v) {
    if (v != inst.root()) vertices.push_back(v);
  }
  auto choices = parent_choices(inst);
  for (int v : vertices) {
    if (choices[v].empty()) return {};  // some vertex has no in-arc at all
  }

  BruteBest best;
  if (vertices.empty()) {
    return enumerate_maps(inst, vertices, choices, 0, 0, evaluate);
  }
  const size_t first_n = choices[vertices[0]].size();
  if (!parallel) {
    return enumerate_maps(inst, vertices, choices, 0, first_n, evaluate);
  }
  std::vector<BruteBest> partial(first_n);
#pragma omp parallel for schedule(dynamic)
  for (size_t f = 0; f < first_n; ++f) {
    partial[f] = enumerate_maps(inst, vertices, choices, f, f + 1, evaluate);
  }
  for (const auto& p : partial) best.merge(p);
  return best;
}

PcmcaResult brute_pcmca_impl(const Instance& inst, const SolverLimits& limits, bool parallel) {
  auto start = Clock::now();
  auto eval = [&](const std::vector<int>& parent) -> std::optional<std::int64_t> {
    std::int64_t cost = 0;
    if (!tree_ok(inst, parent, &cost)) return std::nullopt;
    return cost;
  };
  BruteBest best = brute_force_run(inst, limits, parallel, eval);
  PcmcaResult res;
  res.stats.wall_seconds = seconds_since(start);
  if (!best.found) {
    res.status = res.stats.status = SolveStatus::Infeasible;
    return res;
  }
  res.status = res.stats.status = SolveStatus::Optimal;
  res.best = make_arborescence(inst, best.parent);
  res.stats.lower_bound = res.stats.upper_bound = best.objective;
  return res;
}

PcmcawtResult brute_pcmcawt_impl(const Instance& inst, const SolverLimits& limits, bool parallel) {
  auto start = Clock::now();
  auto eval = [&](const std::vector<int>& parent) -> std::optional<std::int64_t> {
    std::int64_t cost = 0;
    if (!tree_ok(inst, parent, &cost)) return std::nullopt;
    Arborescence arbo{parent, cost};
    auto timed = entry_times(inst, arbo);
    if (!timed) return std::nullopt;  // unsatisfiable waiting constraints
    return timed->objective;
  };
  BruteBest best = brute_force_run(inst, limits, parallel, eval);
  PcmcawtResult res;
  res.stats.wall_seconds = seconds_since(start);
  if (!best.found) {
    res.status = res.stats.status = SolveStatus::Infeasible;
    return res;
  }
  res.status = res.stats.status = SolveStatus::Optimal;
  auto timed = entry_times(inst, make_arborescence(inst, best.parent));
  res.best = std::move(*timed);
  res.stats.lower_bound = res.stats.upper_bound = best.objective;
  return res;
}

}  // namespace

PcmcaResult brute_force_pcmca(const Instance& inst, const SolverLimits& limits) {
  return brute_pcmca_impl(inst, limits, true);
}
PcmcaResult brute_force_pcmca_serial(const Instance& inst, const SolverLimits& limits) {
  return brute_pcmca_impl(inst, limits, false);
}
PcmcawtResult brute_force_pcmcawt(const Instance& inst, const SolverLimits& limits) {
  return brute_pcmcawt_impl(inst, limits, true);
}
PcmcawtResult brute_force_pcmcawt_serial(const Instance& inst, const SolverLimits& limits) {
  return brute_pcmcawt_impl(inst, limits, false);
}

namespace {

constexpr std::int64_t kNoBound = std::numeric_limits<std::int64_t>::max();

struct SearchNode {
  std::vector<int> forbidden;  // arc ids
  std::vector<int> forced;     // arc ids
  std::int64_t lb = 0;
  long long id = 0;
  bool lp_bounded = false;  // timing relaxation already applied to this node
};

struct NodeOrder {
  bool operator()(const SearchNode& a, const SearchNode& b) const {
    if (a.lb != b.lb) return a.lb > b.lb;  // min-heap on bound
    return a.id > b.id;                    // then FIFO
  }
};

// Arborescence problem restricted to a node: forbidden arcs removed, forced
// arcs made the only way into their target.
std::optional<EdmondsResult> restricted_mca(const Instance& inst, const SearchNode& node) {
  const int n = inst.n();
  std::vector<char> arc_ok(inst.arcs().size(), 1);
  for (int a : node.forbidden) arc_ok[a] = 0;
  for (int a : node.forced) {
    if (!arc_ok[a]) return std::nullopt;  // forced and forbidden: empty subspace
    int target = inst.arcs()[a].to;
    for (int other : inst.in_arcs(target)) {
      if (other != a) arc_ok[other] = 0;
    }
  }
  for (int a : node.forced) {
    if (!arc_ok[a]) return std::nullopt;  // two forced arcs into one vertex
  }
  DiGraph g(n);
  for (size_t a = 0; a < inst.arcs().size(); ++a) {
    if (arc_ok[a]) {
      g.add_arc(inst.arcs()[a].from, inst.arcs()[a].to, static_cast<double>(inst.arcs()[a].cost));
    }
  }
  EdmondsResult res = edmonds_mca(g, inst.root());
  if (!res.feasible) return std::nullopt;
  return res;
}

// Tree path t -> ... -> s as instance arc ids, for a violated pair (s,t).
std::vector<int> violating_path_arcs(const Instance& inst, const std::vector<int>& parent, int s,
                                     int t) {
  std::vector<int> chain;  // vertices from s up to t
  int u = s;
  while (u != t) {
    chain.push_back(u);
    u = parent[u];
  }
  chain.push_back(t);
  std::reverse(chain.begin(), chain.end());  // now t ... s
  std::vector<int> arcs;
  for (size_t i = 0; i + 1 < chain.size(); ++i) {
    arcs.push_back(inst.arc_index(chain[i], chain[i + 1]));
  }
  return arcs;
}

// The violated pair whose tree path is shortest branches best; ties keep the
// precedence-list order.
std::pair<int, int> pick_violation(const Instance& inst, const std::vector<int>& parent,
                                   const std::vector<std::pair<int, int>>& violated) {
  std::pair<int, int> best = violated.front();
  size_t best_len = violating_path_arcs(inst, parent, best.first, best.second).size();
  for (size_t i = 1; i < violated.size(); ++i) {
    size_t len = violating_path_arcs(inst, parent, violated[i].first, violated[i].second).size();
    if (len < best_len) {
      best = violated[i];
      best_len = len;
    }
  }
  return best;
}

// Reorders branching arcs so that forbidding the most expensive-to-replace
// arc comes first; its child carries the highest bound and dies earliest.
// Any order keeps the partition exhaustive, so this is purely a search bias.
std::vector<int> order_by_removal_impact(const Instance& inst, const SearchNode& node,
                                         std::vector<int> arcs) {
  if (arcs.size() <= 1) return arcs;
  std::vector<std::pair<double, int>> scored;
  scored.reserve(arcs.size());
  SearchNode probe = node;
  for (int a : arcs) {
    probe.forbidden.push_back(a);
    auto mca = restricted_mca(inst, probe);
    probe.forbidden.pop_back();
    double cost = mca ? mca->cost : std::numeric_limits<double>::infinity();
    scored.emplace_back(cost, a);
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });
  for (size_t i = 0; i < arcs.size(); ++i) arcs[i] = scored[i].second;
  return arcs;
}

// Children forbidding one path arc each; forcing the earlier arcs keeps the
// subspaces disjoint. Arcs the node already pins stay out of the fixing lists.
template <typename Push>
void branch_on_arcs(const SearchNode& node, const std::vector<int>& arcs, Push&& push) {
  auto contains = [](const std::vector<int>& v, int x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  for (size_t i = 0; i < arcs.size(); ++i) {
    if (contains(node.forced, arcs[i])) continue;  // cannot forbid a forced arc
    SearchNode child;
    child.forbidden = node.forbidden;
    child.forbidden.push_back(arcs[i]);
    child.forced = node.forced;
    for (size_t j = 0; j < i; ++j) {
      if (!contains(child.forced, arcs[j])) child.forced.push_back(arcs[j]);
    }
    push(std::move(child));
  }
}

struct NodeBounder {
  LinearModel model;        // timing relaxation incl. the root's separated rows
  std::vector<int> x_vars;  // model variable per instance arc
  const Instance* inst = nullptr;
};

std::int64_t lp_lower_bound(NodeBounder& bounder, const SearchNode& node, std::int64_t fallback) {
  LinearModel& model = bounder.model;
  // Fix node decisions, solve the relaxation, then restore the bounds.
  std::vector<std::pair<int, std::pair<double, double>>> saved;
  auto pin = [&](int arc, double value) {
    int var = bounder.x_vars[arc];
    saved.push_back({var, {model.variables()[var].lb, model.variables()[var].ub}});
    model.fix_variable(var, value);
  };
  for (int a : node.forbidden) pin(a, 0.0);
  for (int a : node.forced) pin(a, 1.0);
  SimplexOptions opt;
  opt.max_iterations = 20000;
  LpSolution sol;
  bool broken = false;
  try {
    sol = solve_lp(model, opt);
  } catch (const std::logic_error&) {
    broken = true;  // numerically degenerate subproblem, keep the weaker bound
  }
  // reverse order, so a doubly pinned variable ends on its original bounds
  for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
    model.set_bounds(it->first, it->second.first, it->second.second);
  }
  if (broken) return fallback;
  if (sol.status == LpStatus::Infeasible) return kNoBound;
  if (sol.status != LpStatus::Optimal) return fallback;
  return std::max<std::int64_t>(fallback,
                                static_cast<std::int64_t>(std::ceil(sol.objective - 1e-6)));
}

// The greedy sequencing that certifies the big-M value is itself a feasible
// solution (a path enters vertices in precedence order and never waits); it
// seeds the incumbent so bound pruning starts working immediately.
std::optional<Arborescence> greedy_path_tree(const Instance& inst) {
  BigM big_m = compute_big_m(inst);
  if (big_m.fallback || big_m.tour.size() != static_cast<size_t>(inst.n())) return std::nullopt;
  std::vector<int> parent(inst.n(), -1);
  for (size_t i = 1; i < big_m.tour.size(); ++i) parent[big_m.tour[i]] = big_m.tour[i - 1];
  return make_arborescence(inst, parent);
}

}  // namespace

PcmcaResult solve_pcmca(const Instance& inst, const SolverLimits& limits) {
  auto start = Clock::now();
  PcmcaResult res;
  SolveStats& st = res.stats;

  std::int64_t root_lr_bound = 0;
  if (limits.use_lp_root_bound && inst.n() <= 60) {
    try {
      CuttingPlaneOptions opt;
      auto lr = solve_lr_with_cuts(inst, "set-based", opt);
      if (lr.status == LpStatus::Optimal) {
        root_lr_bound = static_cast<std::int64_t>(std::ceil(lr.value - 1e-6));
      } else if (lr.status == LpStatus::Infeasible) {
        res.status = st.status = SolveStatus::Infeasible;
        st.wall_seconds = seconds_since(start);
        return res;
      }
    } catch (const std::exception& e) {
      ARBX_LOG_INFO("root relaxation skipped: " << e.what());
    }
  }

  std::priority_queue<SearchNode, std::vector<SearchNode>, NodeOrder> open;
  long long next_id = 0;
  bool incumbent_set = false;
  std::vector<int> incumbent_parent;
  std::int64_t ub = kNoBound;

  auto offer = [&](const Arborescence& cand) {
    if (!incumbent_set || cand.cost < ub || (cand.cost == ub && cand.parent < incumbent_parent)) {
      ub = cand.cost;
      incumbent_parent = cand.parent;
      incumbent_set = true;
    }
  };
  // warm start: the precedence-ordered greedy path is always feasible
  if (auto path = greedy_path_tree(inst)) offer(*path);

  auto push_node = [&](SearchNode&& node, std::int64_t inherited_lb) {
    auto mca = restricted_mca(inst, node);
    if (!mca) return;
    node.lb = std::max({static_cast<std::int64_t>(llround(mca->cost)), root_lr_bound, inherited_lb});
    if (incumbent_set && node.lb >= ub) return;
    node.id = next_id++;
    open.push(std::move(node));
  };

  push_node(SearchNode{}, 0);
  bool hit_limit = false;
  while (!open.empty()) {
    if (limits.node_limit >= 0 && st.nodes >= limits.node_limit) {
      hit_limit = true;
      break;
    }
    if (limits.time_limit_s > 0 && seconds_since(start) > limits.time_limit_s) {
      hit_limit = true;
      break;
    }
    SearchNode node = open.top();
    open.pop();
    if (incumbent_set && node.lb >= ub) continue;
    ++st.nodes;

    auto mca = restricted_mca(inst, node);
    if (!mca) continue;
    std::int64_t lb = std::max<std::int64_t>(llround(mca->cost), node.lb);
    if (incumbent_set && lb >= ub) continue;

    Arborescence cand{mca->parent, llround(mca->cost)};
    auto violated = check_precedences(inst, cand);
    if (violated.empty()) {
      // The node's cheapest tree is feasible, hence optimal for the node.
      offer(cand);
      continue;
    }
    auto [s, t] = pick_violation(inst, cand.parent, violated);
    ++st.cuts;
    branch_on_arcs(node, violating_path_arcs(inst, cand.parent, s, t),
                   [&](SearchNode&& child) { push_node(std::move(child), node.lb); });
  }

  st.wall_seconds = seconds_since(start);
  std::int64_t open_min = open.empty() ? kNoBound : open.top().lb;
  if (!hit_limit) {
    if (!incumbent_set) {
      res.status = st.status = SolveStatus::Infeasible;
      return res;
    }
    st.lower_bound = st.upper_bound = ub;
    res.status = st.status = SolveStatus::Optimal;
    res.best = make_arborescence(inst, incumbent_parent);
    return res;
  }
  st.lower_bound = std::min(open_min, ub);
  if (incumbent_set) {
    st.upper_bound = ub;
    res.status = st.status = SolveStatus::Feasible;
    res.best = make_arborescence(inst, incumbent_parent);
  } else {
    st.upper_bound = kNoBound;
    res.status = st.status = SolveStatus::Limit;
  }
  return res;
}

PcmcawtResult solve_pcmcawt(const Instance& inst, const SolverLimits& limits) {
  auto start = Clock::now();
  PcmcawtResult res;
  SolveStats& st = res.stats;

  // Root relaxation of the timing model, cuts included; its rows stay valid in
  // every subproblem, so the final model doubles as the per-node bounder.
  std::int64_t root_lr_bound = 0;
  std::optional<NodeBounder> bounder;
  if (limits.use_lp_root_bound && inst.n() <= 60) {
    try {
      CuttingPlaneOptions opt;
      auto lr = solve_lr_with_cuts(inst, "da", opt);
      if (lr.status == LpStatus::Optimal) {
        root_lr_bound = static_cast<std::int64_t>(std::ceil(lr.value - 1e-6));
        bounder.emplace();
        bounder->model = std::move(lr.model);
        bounder->inst = &inst;
        bounder->x_vars.assign(inst.arcs().size(), -1);
        for (size_t a = 0; a < inst.arcs().size(); ++a) {
          const auto& arc = inst.arcs()[a];
          bounder->x_vars[a] = bounder->model.variable_index(
              "x_" + std::to_string(arc.from) + "_" + std::to_string(arc.to));
        }
      } else if (lr.status == LpStatus::Infeasible) {
        res.status = st.status = SolveStatus::Infeasible;
        st.wall_seconds = seconds_since(start);
        return res;
      }
    } catch (const std::exception& e) {
      ARBX_LOG_INFO("root relaxation skipped: " << e.what());
    }
  }
  const bool node_lp = limits.use_lp_node_bound && bounder.has_value();

  std::priority_queue<SearchNode, std::vector<SearchNode>, NodeOrder> open;
  long long next_id = 0;
  bool incumbent_set = false;
  std::optional<TimedSolution> incumbent;
  std::int64_t ub = kNoBound;

  auto offer = [&](const TimedSolution& timed) {
    if (!incumbent_set || timed.objective < ub ||
        (timed.objective == ub && timed.tree.parent < incumbent->tree.parent)) {
      ub = timed.objective;
      incumbent = timed;
      incumbent_set = true;
    }
  };
  // warm start: the greedy sequencing enters vertices in precedence order,
  // so its minimal entry times carry zero waiting
  if (auto path = greedy_path_tree(inst)) {
    if (auto timed = entry_times(inst, *path)) offer(*timed);
  }

  auto push_node = [&](SearchNode&& node, std::int64_t inherited_lb) {
    auto mca = restricted_mca(inst, node);
    if (!mca) return;
    node.lb = std::max({static_cast<std::int64_t>(llround(mca->cost)), root_lr_bound, inherited_lb});
    if (incumbent_set && node.lb >= ub) return;
    node.id = next_id++;
    open.push(std::move(node));
  };

  push_node(SearchNode{}, 0);
  bool hit_limit = false;
  while (!open.empty()) {
    if (limits.node_limit >= 0 && st.nodes >= limits.node_limit) {
      hit_limit = true;
      break;
    }
    if (limits.time_limit_s > 0 && seconds_since(start) > limits.time_limit_s) {
      hit_limit = true;
      break;
    }
    SearchNode node = open.top();
    open.pop();
    if (incumbent_set && node.lb >= ub) continue;

    // The timing relaxation is strong but costly: apply it once per node,
    // only when the node is actually selected, and re-queue when it moves
    // the bound behind another open node.
    if (node_lp && !node.lp_bounded) {
      node.lp_bounded = true;
      std::int64_t strengthened = lp_lower_bound(*bounder, node, node.lb);
      if (strengthened == kNoBound) continue;  // relaxation infeasible
      if (strengthened > node.lb) {
        node.lb = strengthened;
        if (incumbent_set && node.lb >= ub) continue;
        if (!open.empty() && open.top().lb < node.lb) {
          open.push(std::move(node));
          continue;
        }
      }
    }
    ++st.nodes;

    auto mca = restricted_mca(inst, node);
    if (!mca) continue;

    Arborescence cand{mca->parent, llround(mca->cost)};
    auto violated = check_precedences(inst, cand);
    if (!violated.empty()) {
      auto [s, t] = pick_violation(inst, cand.parent, violated);
      ++st.cuts;
      branch_on_arcs(node,
                     order_by_removal_impact(inst, node,
                                             violating_path_arcs(inst, cand.parent, s, t)),
                     [&](SearchNode&& child) { push_node(std::move(child), node.lb); });
      continue;
    }

    auto timed = entry_times(inst, cand);
    if (timed) {
      offer(*timed);
      if (timed->objective <= node.lb) continue;  // no cheaper tree exists below
    }
    // Other trees of this subspace may pay less waiting (or be satisfiable at
    // all): partition around the candidate, excluding it.
    std::vector<char> forced_mask(inst.arcs().size(), 0);
    for (int a : node.forced) forced_mask[a] = 1;
    std::vector<int> tree_arcs;
    for (int v = 0; v < inst.n(); ++v) {
      if (v == inst.root()) continue;
      int a = inst.arc_index(cand.parent[v], v);
      if (!forced_mask[a]) tree_arcs.push_back(a);
    }
    branch_on_arcs(node, order_by_removal_impact(inst, node, tree_arcs),
                   [&](SearchNode&& child) { push_node(std::move(child), node.lb); });
  }

  st.wall_seconds = seconds_since(start);
  std::int64_t open_min = open.empty() ? kNoBound : open.top().lb;
  if (!hit_limit) {
    if (!incumbent_set) {
      res.status = st.status = SolveStatus::Infeasible;
      return res;
    }
    st.lower_bound = st.upper_bound = ub;
    res.status = st.status = SolveStatus::Optimal;
    res.best = std::move(incumbent);
    return res;
  }
  st.lower_bound = std::min(open_min, ub);
  if (incumbent_set) {
    st.upper_bound = ub;
    res.status = st.status = SolveStatus::Feasible;
    res.best = std::move(incumbent);
  } else {
    st.upper_bound = kNoBound;
    res.status = st.status = SolveStatus::Limit;
  }
  return res;
}

}  // namespace arbx
