#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "arbx/reductions.hpp"
#include "arbx/solver.hpp"

using namespace arbx;

namespace {

SolverLimits sat_limits() {
  SolverLimits limits;
  limits.brute_force_cap = 16;
  return limits;
}

CnfFormula formula(int vars, std::vector<std::array<int, 3>> clauses) {
  CnfFormula f;
  f.variable_count = vars;
  f.clauses = std::move(clauses);
  return f;
}

}  // namespace

TEST_CASE("dimacs reader") {
  std::istringstream in("c example\np cnf 2 2\n1 -2 1 0\n-1 2 2 0\n");
  CnfFormula f = read_dimacs_cnf(in);
  CHECK(f.variable_count == 2);
  REQUIRE(f.clauses.size() == 2);
  CHECK(f.clauses[0] == std::array<int, 3>{1, -2, 1});

  std::istringstream two("p cnf 2 1\n1 -2 0\n");
  CHECK_THROWS_AS(read_dimacs_cnf(two), ParseError);
  std::istringstream open_clause("p cnf 2 1\n1 -2 1\n");
  CHECK_THROWS_AS(read_dimacs_cnf(open_clause), ParseError);
}

TEST_CASE("reduction counts: vertices and layer arcs") {
  // identical positive literals: no precedence pairs, nothing normalized away
  CnfFormula f = formula(3, {{1, 2, 3}, {1, 2, 3}, {1, 2, 3}});
  Instance inst = from_3sat(f);
  const int m = 3;
  CHECK(inst.n() == 3 * m + 4);
  int layer_arcs = 0;
  for (const auto& arc : inst.arcs()) {
    if (arc.from >= 4 && arc.to >= 4) ++layer_arcs;
  }
  CHECK(layer_arcs == 9 * (m - 1));
  CHECK(inst.precedences().size() == 1);  // only (sink, collector)
  for (const auto& arc : inst.arcs()) CHECK(arc.cost == 1);
}

TEST_CASE("single-clause formulas are always feasible") {
  CnfFormula f = formula(1, {{1, 1, 1}});
  Instance inst = from_3sat(f);
  auto res = brute_force_pcmca(inst, sat_limits());
  REQUIRE(res.status == SolveStatus::Optimal);
  auto assignment = satisfiability_from_solution(f, inst, *res.best);
  REQUIRE(assignment.has_value());
  CHECK(formula_satisfied(f, *assignment));
}

TEST_CASE("contradictory clauses reduce to infeasible instances") {
  CnfFormula f = formula(1, {{1, 1, 1}, {-1, -1, -1}});
  Instance inst = from_3sat(f);
  CHECK(!formula_satisfiable(f));
  CHECK(brute_force_pcmca(inst, sat_limits()).status == SolveStatus::Infeasible);
  CHECK(solve_pcmca(inst, sat_limits()).status == SolveStatus::Infeasible);
}

TEST_CASE("forced literal appears on every feasible path") {
  // clause 2 forces x1 = false, so no feasible path may pick x1 in clause 1
  CnfFormula f = formula(2, {{1, -1, 2}, {-1, -1, -1}});
  REQUIRE(formula_satisfiable(f));
  Instance inst = from_3sat(f);
  auto res = solve_pcmca(inst, sat_limits());
  REQUIRE(res.status == SolveStatus::Optimal);
  auto assignment = satisfiability_from_solution(f, inst, *res.best);
  REQUIRE(assignment.has_value());
  CHECK((*assignment)[0] == false);
}

TEST_CASE("extraction rejects infeasible parent maps") {
  CnfFormula f = formula(1, {{1, 1, 1}});
  Instance inst = from_3sat(f);
  // hang everything under the collector, including the sink's chain broken
  std::vector<int> parent(inst.n(), 2);
  parent[0] = -1;
  parent[1] = 0;
  parent[2] = 0;
  parent[3] = 4;
  parent[4] = 1;
  // (sink, collector) precedence: collector on the root path of nothing; but
  // vertex 5,6 hang under the collector which is fine; break feasibility by
  // routing the sink through a literal fed by the collector
  parent[5] = 2;
  parent[6] = 2;
  Arborescence arbo = make_arborescence(inst, parent);
  // this tree is structurally fine; now corrupt it into a violating one
  // (the sink's path r -> s -> v -> t must not contain the collector)
  CHECK(satisfiability_from_solution(f, inst, arbo).has_value());

  std::vector<int> bad = parent;
  bad[4] = 2;  // sink's literal now fed by the collector: violates (t, s')
  Arborescence violating = make_arborescence(inst, bad);
  CHECK(!satisfiability_from_solution(f, inst, violating).has_value());
}

TEST_CASE("exhaustive equivalence on small formulas, both precedence variants") {
  // all clauses over 2 variables (4 literals, multisets of size 3), all
  // unordered pairs of clauses
  std::vector<std::array<int, 3>> clause_pool;
  std::vector<int> lits{1, -1, 2, -2};
  for (size_t a = 0; a < lits.size(); ++a) {
    for (size_t b = a; b < lits.size(); ++b) {
      for (size_t c = b; c < lits.size(); ++c) {
        clause_pool.push_back({lits[a], lits[b], lits[c]});
      }
    }
  }
  int checked = 0;
  for (size_t i = 0; i < clause_pool.size(); ++i) {
    for (size_t j = i; j < clause_pool.size(); ++j) {
      CnfFormula f = formula(2, {clause_pool[i], clause_pool[j]});
      bool sat = formula_satisfiable(f);
      Instance inst = from_3sat(f);
      auto res = brute_force_pcmca(inst, sat_limits());
      CHECK(sat == (res.status == SolveStatus::Optimal));
      Instance sym = from_3sat(f, /*symmetric_pairs=*/true);
      auto sym_res = brute_force_pcmca(sym, sat_limits());
      CHECK(sat == (sym_res.status == SolveStatus::Optimal));
      if (res.status == SolveStatus::Optimal) {
        auto assignment = satisfiability_from_solution(f, inst, *res.best);
        REQUIRE(assignment.has_value());
      }
      ++checked;
    }
  }
  CHECK(checked == 210);  // 20 clauses -> 20*21/2 formulas
}

TEST_CASE("rsa grid construction") {
  SUBCASE("two points on a line") {
    RsaInstance red = from_rsa({{{0, 0}, {1, 0}}});
    CHECK(red.instance.n() == 2);
    CHECK(red.terminal_count == 2);
    CHECK(red.far_vertex == 1);
    CHECK(red.instance.precedences().size() == 1);
  }
  SUBCASE("square grid with two steiner vertices") {
    RsaInstance red = from_rsa({{{0, 0}, {2, 3}}});
    CHECK(red.instance.n() == 4);
    CHECK(red.terminal_count == 2);
    // points (0,3) and (2,0) are steiner
    CHECK(red.instance.precedences().size() == 1);
    // the far point feeds both steiner vertices at cost zero
    int zero_arcs = 0;
    for (const auto& arc : red.instance.arcs()) {
      if (arc.from == red.far_vertex && arc.cost == 0) ++zero_arcs;
    }
    CHECK(zero_arcs == 2);
  }
  SUBCASE("five-point layout induces ten steiner vertices") {
    RsaInstance red = from_rsa({{{0, 0}, {2, 0}, {3, 1}, {5, 3}, {1, 3}}});
    CHECK(red.terminal_count == 5);
    CHECK(red.instance.n() == 15);
  }
  SUBCASE("the first point must be the origin") {
    CHECK_THROWS_AS(from_rsa({{{1, 0}, {0, 0}}}), DomainError);
  }
}

TEST_CASE("rsa brute force on pinned layouts") {
  CHECK(rsa_brute_force({{{0, 0}, {1, 0}}}) == 1);
  CHECK(rsa_brute_force({{{0, 0}, {1, 0}, {0, 1}}}) == 2);
  CHECK(rsa_brute_force({{{0, 0}, {1, 1}, {2, 2}}}) == 4);
  // sharing pays: both points reachable over one vertical stem
  CHECK(rsa_brute_force({{{0, 0}, {1, 2}, {2, 1}}}) == 4);
  CHECK_THROWS_AS(rsa_brute_force({{{0, 0}, {1, 2}, {2, 1}}}, 3), DomainError);
}

TEST_CASE("waiting-time optimum equals the rectilinear optimum") {
  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<int> coord(0, 3);
  std::uniform_int_distribution<int> extra(1, 3);
  int done = 0;
  while (done < 30) {
    std::set<std::pair<int, int>> pts{{0, 0}};
    int want = extra(rng);
    while (static_cast<int>(pts.size()) < want + 1) pts.emplace(coord(rng), coord(rng));
    RsaPointSet set;
    set.points.assign(pts.begin(), pts.end());
    std::sort(set.points.begin(), set.points.end());  // origin first
    RsaInstance red = from_rsa(set);
    if (red.instance.n() > 12) continue;  // keep the oracle affordable
    ++done;
    std::int64_t rsa_opt = rsa_brute_force(set, 16);
    SolverLimits limits;
    limits.brute_force_cap = 12;
    auto wt = brute_force_pcmcawt(red.instance, limits);
    REQUIRE(wt.status == SolveStatus::Optimal);
    CHECK(wt.best->objective == rsa_opt);
    // cost-zero in-arcs for every steiner leaf of the optimum
    for (int v = red.terminal_count; v < red.instance.n(); ++v) {
      bool is_leaf = true;
      for (int u = 0; u < red.instance.n(); ++u) {
        if (u != red.instance.root() && wt.best->tree.parent[u] == v) is_leaf = false;
      }
      if (is_leaf) {
        int p = wt.best->tree.parent[v];
        CHECK(red.instance.arc_cost(p, v) == 0);
      }
    }
  }
}

TEST_CASE("reduced instances pass normalization unchanged") {
  CnfFormula f = formula(2, {{1, -2, 2}, {-1, 2, 1}});
  Instance inst = from_3sat(f);
  Instance renorm = normalize(inst.n(), inst.root(), inst.arcs(), inst.precedences(),
                              inst.name());
  CHECK(renorm == inst);

  RsaInstance red = from_rsa({{{0, 0}, {2, 1}, {1, 2}}});
  Instance renorm2 = normalize(red.instance.n(), red.instance.root(), red.instance.arcs(),
                               red.instance.precedences(), red.instance.name());
  CHECK(renorm2 == red.instance);
}
