#include "arbx/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "arbx/digraph.hpp"

namespace arbx {

CnfFormula read_dimacs_cnf(std::istream& in) {
  CnfFormula f;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  int declared_clauses = -1;
  std::vector<int> current;

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == 'c') continue;
    if (line[0] == '%') break;
    std::istringstream row(line);
    if (line[0] == 'p') {
      std::string p, fmt;
      row >> p >> fmt >> f.variable_count >> declared_clauses;
      if (fmt != "cnf" || f.variable_count <= 0) {
        throw ParseError("bad DIMACS header", lineno);
      }
      header_seen = true;
      continue;
    }
    if (!header_seen) throw ParseError("clause before 'p cnf' header", lineno);
    int lit;
    while (row >> lit) {
      if (lit == 0) {
        if (current.size() != 3) {
          throw ParseError("clause with " + std::to_string(current.size()) +
                           " literals; exactly 3 required", lineno);
        }
        f.clauses.push_back({current[0], current[1], current[2]});
        current.clear();
        continue;
      }
      if (std::abs(lit) > f.variable_count) throw ParseError("literal out of range", lineno);
      current.push_back(lit);
    }
  }
  if (!current.empty()) throw ParseError("unterminated clause", lineno);
  if (declared_clauses >= 0 && static_cast<int>(f.clauses.size()) != declared_clauses) {
    throw ParseError("clause count mismatch with header", lineno);
  }
  return f;
}

CnfFormula read_dimacs_cnf_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  return read_dimacs_cnf(in);
}

bool clause_satisfied(const std::array<int, 3>& clause, const std::vector<bool>& assignment) {
  for (int lit : clause) {
    bool value = assignment[std::abs(lit) - 1];
    if (lit > 0 ? value : !value) return true;
  }
  return false;
}

bool formula_satisfied(const CnfFormula& f, const std::vector<bool>& assignment) {
  return std::all_of(f.clauses.begin(), f.clauses.end(),
                     [&](const auto& c) { return clause_satisfied(c, assignment); });
}

bool formula_satisfiable(const CnfFormula& f) {
  const int t = f.variable_count;
  for (unsigned mask = 0; mask < (1u << t); ++mask) {
    std::vector<bool> assignment(t);
    for (int v = 0; v < t; ++v) assignment[v] = (mask >> v) & 1u;
    if (formula_satisfied(f, assignment)) return true;
  }
  return f.clauses.empty();
}

Instance from_3sat(const CnfFormula& f, bool symmetric_pairs) {
  const int m = static_cast<int>(f.clauses.size());
  if (m == 0) throw DomainError("from_3sat needs at least one clause");
  SatInstanceLayout layout;
  const int n = 3 * m + 4;

  std::vector<InstanceArc> arcs;
  arcs.push_back({layout.root, layout.source, 1});
  arcs.push_back({layout.root, layout.collector, 1});
  for (int k = 0; k < 3; ++k) arcs.push_back({layout.source, layout.literal_vertex(0, k), 1});
  for (int k = 0; k < 3; ++k) arcs.push_back({layout.literal_vertex(m - 1, k), layout.sink, 1});
  for (int i = 0; i + 1 < m; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        arcs.push_back({layout.literal_vertex(i, j), layout.literal_vertex(i + 1, k), 1});
      }
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < 3; ++k) arcs.push_back({layout.collector, layout.literal_vertex(i, k), 1});
  }

  std::vector<std::pair<int, int>> prec;
  prec.emplace_back(layout.sink, layout.collector);
  for (int h = 0; h < m; ++h) {
    for (int i = 0; i < h; ++i) {
      for (int k = 0; k < 3; ++k) {
        for (int j = 0; j < 3; ++j) {
          int lit_h = f.clauses[h][k];
          int lit_i = f.clauses[i][j];
          if (std::abs(lit_h) == std::abs(lit_i) && lit_h == -lit_i) {
            prec.emplace_back(layout.literal_vertex(h, k), layout.literal_vertex(i, j));
            if (symmetric_pairs) {
              prec.emplace_back(layout.literal_vertex(i, j), layout.literal_vertex(h, k));
            }
          }
        }
      }
    }
  }
  return normalize(n, layout.root, std::move(arcs), std::move(prec),
                   "sat_m" + std::to_string(m));
}

std::optional<std::vector<bool>> satisfiability_from_solution(const CnfFormula& f,
                                                              const Instance& reduced,
                                                              const Arborescence& arbo) {
  if (!validate_arborescence(reduced, arbo.parent).empty()) return std::nullopt;
  if (!check_precedences(reduced, arbo).empty()) return std::nullopt;

  SatInstanceLayout layout;
  const int m = static_cast<int>(f.clauses.size());
  std::vector<int> path;  // sink up to root
  for (int u = layout.sink; u != layout.root; u = arbo.parent[u]) path.push_back(u);
  path.push_back(layout.root);
  std::reverse(path.begin(), path.end());

  // By construction the path is root, source, one literal per clause, sink.
  if (static_cast<int>(path.size()) != m + 3 || path[1] != layout.source) {
    throw std::logic_error("solution path does not step through every clause layer");
  }
  std::vector<bool> assignment(f.variable_count, false);
  std::vector<char> assigned(f.variable_count, 0);
  for (int i = 0; i < m; ++i) {
    int v = path[2 + i];
    int slot = v - layout.literal_vertex(i, 0);
    if (slot < 0 || slot > 2) {
      throw std::logic_error("solution path skips clause layer " + std::to_string(i));
    }
    int lit = f.clauses[i][slot];
    int var = std::abs(lit) - 1;
    bool value = lit > 0;
    if (assigned[var] && assignment[var] != value) {
      throw std::logic_error("contradictory literals survived the precedence constraints");
    }
    assigned[var] = 1;
    assignment[var] = value;
  }
  if (!formula_satisfied(f, assignment)) {
    throw std::logic_error("extracted assignment does not satisfy the formula");
  }
  return assignment;
}

RsaPointSet read_points(std::istream& in) {
  RsaPointSet pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream row(line);
    long long x, y;
    if (!(row >> x)) continue;
    if (!(row >> y)) throw ParseError("point needs two coordinates", lineno);
    if (x < 0 || y < 0) throw ParseError("coordinates must be non-negative", lineno);
    pts.points.emplace_back(static_cast<int>(x), static_cast<int>(y));
  }
  return pts;
}

RsaPointSet read_points_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  return read_points(in);
}

namespace {

struct HananGrid {
  std::vector<int> xs, ys;                       // sorted distinct coordinates
  std::vector<std::pair<int, int>> vertex_coord; // per vertex id
  std::map<std::pair<int, int>, int> at;         // coord -> vertex id
  int terminal_count = 0;
};

HananGrid make_grid(const RsaPointSet& pts) {
  if (pts.points.empty()) throw DomainError("empty point set");
  if (pts.points.front() != std::make_pair(0, 0)) {
    throw DomainError("the first point must be the origin");
  }
  std::set<std::pair<int, int>> distinct(pts.points.begin(), pts.points.end());
  if (distinct.size() != pts.points.size()) throw DomainError("duplicate points");

  HananGrid g;
  std::set<int> xset, yset;
  for (auto [x, y] : pts.points) {
    xset.insert(x);
    yset.insert(y);
  }
  g.xs.assign(xset.begin(), xset.end());
  g.ys.assign(yset.begin(), yset.end());
  g.terminal_count = static_cast<int>(pts.points.size());
  for (auto p : pts.points) {
    g.at.emplace(p, static_cast<int>(g.vertex_coord.size()));
    g.vertex_coord.push_back(p);
  }
  for (int x : g.xs) {
    for (int y : g.ys) {
      if (!g.at.count({x, y})) {
        g.at.emplace(std::make_pair(x, y), static_cast<int>(g.vertex_coord.size()));
        g.vertex_coord.emplace_back(x, y);
      }
    }
  }
  return g;
}

}  // namespace

RsaInstance from_rsa(const RsaPointSet& pts) {
  HananGrid g = make_grid(pts);
  const int total = static_cast<int>(g.vertex_coord.size());

  int far = 0;
  for (int i = 1; i < g.terminal_count; ++i) {
    auto [x, y] = pts.points[i];
    auto [fx, fy] = pts.points[far];
    if (x + y > fx + fy) far = i;
  }

  std::map<std::pair<int, int>, std::int64_t> arc_cost;
  for (int v = 0; v < total; ++v) {
    auto [x, y] = g.vertex_coord[v];
    auto xi = std::find(g.xs.begin(), g.xs.end(), x);
    auto yi = std::find(g.ys.begin(), g.ys.end(), y);
    if (std::next(xi) != g.xs.end()) {
      int to = g.at.at({*std::next(xi), y});
      arc_cost[{v, to}] = *std::next(xi) - x;
    }
    if (std::next(yi) != g.ys.end()) {
      int to = g.at.at({x, *std::next(yi)});
      arc_cost[{v, to}] = *std::next(yi) - y;
    }
  }
  // Zero-cost attachments from the farthest point to every Steiner vertex;
  // they take priority over a grid arc on the same pair.
  for (int v = g.terminal_count; v < total; ++v) arc_cost[{far, v}] = 0;

  std::vector<InstanceArc> arcs;
  for (const auto& [key, cost] : arc_cost) arcs.push_back({key.first, key.second, cost});
  std::vector<std::pair<int, int>> prec;
  for (int i = 0; i < g.terminal_count; ++i) {
    if (i != far) prec.emplace_back(i, far);
  }

  RsaInstance out;
  out.instance = normalize(total, 0, std::move(arcs), std::move(prec),
                           "rsa_n" + std::to_string(g.terminal_count));
  out.far_vertex = far;
  out.coords = g.vertex_coord;
  out.terminal_count = g.terminal_count;
  return out;
}

std::int64_t rsa_brute_force(const RsaPointSet& pts, int max_grid_vertices) {
  HananGrid g = make_grid(pts);
  const int total = static_cast<int>(g.vertex_coord.size());
  if (total > max_grid_vertices) {
    throw DomainError("rsa brute force refused: " + std::to_string(total) +
                      " grid vertices exceed cap " + std::to_string(max_grid_vertices));
  }
  const int steiner = total - g.terminal_count;

  // Grid arcs between all vertices; selections are restricted per subset.
  std::vector<std::tuple<int, int, std::int64_t>> grid_arcs;
  for (int v = 0; v < total; ++v) {
    auto [x, y] = g.vertex_coord[v];
    auto xi = std::find(g.xs.begin(), g.xs.end(), x);
    auto yi = std::find(g.ys.begin(), g.ys.end(), y);
    if (std::next(xi) != g.xs.end()) {
      grid_arcs.emplace_back(v, g.at.at({*std::next(xi), y}), *std::next(xi) - x);
    }
    if (std::next(yi) != g.ys.end()) {
      grid_arcs.emplace_back(v, g.at.at({x, *std::next(yi)}), *std::next(yi) - y);
    }
  }

  // For every Steiner subset, the cheapest tree spanning points + subset is a
  // minimum arborescence; pruning unused leaves can only improve, so the best
  // value over all subsets is the exact optimum.
  std::int64_t best = -1;
  std::vector<int> chosen_parent;
  for (unsigned mask = 0; mask < (1u << steiner); ++mask) {
    std::vector<char> active(total, 0);
    for (int i = 0; i < g.terminal_count; ++i) active[i] = 1;
    for (int b = 0; b < steiner; ++b) {
      if ((mask >> b) & 1u) active[g.terminal_count + b] = 1;
    }
    DiGraph dg(total);
    for (auto [u, v, c] : grid_arcs) {
      if (active[u] && active[v]) dg.add_arc(u, v, static_cast<double>(c));
    }
    // Inactive vertices would be unreachable; give them a free parent so the
    // arborescence routine only prices the active part.
    for (int v = 0; v < total; ++v) {
      if (!active[v]) dg.add_arc(0, v, 0.0);
    }
    EdmondsResult mca = edmonds_mca(dg, 0);
    if (!mca.feasible) continue;
    std::int64_t cost = llround(mca.cost);
    if (best < 0 || cost < best) {
      best = cost;
      chosen_parent = mca.parent;
    }
  }
  if (best < 0) throw DomainError("point set admits no rectilinear arborescence");

  // Any monotone tree path from the origin has length x + y.
  for (int i = 0; i < g.terminal_count; ++i) {
    std::int64_t len = 0;
    for (int u = i; u != 0; u = chosen_parent[u]) {
      auto [x, y] = g.vertex_coord[u];
      auto [px, py] = g.vertex_coord[chosen_parent[u]];
      len += std::abs(x - px) + std::abs(y - py);
    }
    if (len != g.vertex_coord[i].first + g.vertex_coord[i].second) {
      throw std::logic_error("non-monotone path in rectilinear tree");
    }
  }
  return best;
}

}  // namespace arbx
