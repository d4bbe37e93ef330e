#include <doctest.h>

#include <random>

#include "arbx/randomgen.hpp"
#include "arbx/solver.hpp"
#include "support.hpp"

using namespace arbx;

TEST_CASE("brute force on the demo instances") {
  Instance prec = test::demo_precedence_instance();
  auto res = brute_force_pcmca(prec);
  REQUIRE(res.status == SolveStatus::Optimal);
  CHECK(res.best->cost == 4);

  SUBCASE("without precedences the plain optimum returns") {
    Instance no_r = normalize(4, 0,
                              {{0, 1, 1}, {0, 2, 3}, {0, 3, 2}, {1, 2, 1}, {2, 1, 3},
                               {2, 3, 1}, {3, 1, 3}, {3, 2, 3}},
                              {}, "no_r");
    auto plain = brute_force_pcmca(no_r);
    REQUIRE(plain.status == SolveStatus::Optimal);
    CHECK(plain.best->cost == 3);
  }
  SUBCASE("waiting variant") {
    Instance wt = test::demo_waiting_instance();
    auto as_pcmca = brute_force_pcmca(wt);
    REQUIRE(as_pcmca.status == SolveStatus::Optimal);
    CHECK(as_pcmca.best->cost == 3);
    auto as_wt = brute_force_pcmcawt(wt);
    REQUIRE(as_wt.status == SolveStatus::Optimal);
    CHECK(as_wt.best->objective == 4);
  }
}

TEST_CASE("brute force reports structural infeasibility") {
  // the only way to 1 runs through 2, but 1 must come first
  Instance line = normalize(3, 0, {{0, 2, 1}, {2, 1, 1}}, {{1, 2}}, "line");
  CHECK(brute_force_pcmca(line).status == SolveStatus::Infeasible);
  CHECK(brute_force_pcmcawt(line).status == SolveStatus::Infeasible);
}

TEST_CASE("brute force refuses oversized instances") {
  std::vector<InstanceArc> arcs;
  for (int j = 1; j < 10; ++j) arcs.push_back({0, j, 1});
  Instance big = normalize(10, 0, arcs, {}, "big");
  CHECK_THROWS_AS(brute_force_pcmca(big), DomainError);
  SolverLimits raised;
  raised.brute_force_cap = 10;
  CHECK(brute_force_pcmca(big, raised).status == SolveStatus::Optimal);
}

TEST_CASE("parallel and serial brute force agree") {
  std::mt19937_64 rng(1234);
  for (int it = 0; it < 15; ++it) {
    RandomInstanceParams params;
    params.min_n = 4;
    params.max_n = 7;
    Instance inst = random_instance(rng, params);
    auto a = brute_force_pcmca(inst);
    auto b = brute_force_pcmca_serial(inst);
    CHECK(a.status == b.status);
    if (a.status == SolveStatus::Optimal) {
      CHECK(a.best->cost == b.best->cost);
      CHECK(a.best->parent == b.best->parent);
    }
    auto c = brute_force_pcmcawt(inst);
    auto d = brute_force_pcmcawt_serial(inst);
    CHECK(c.status == d.status);
    if (c.status == SolveStatus::Optimal) {
      CHECK(c.best->objective == d.best->objective);
      CHECK(c.best->tree.parent == d.best->tree.parent);
    }
  }
}

TEST_CASE("branch and bound solves the demos") {
  auto prec = solve_pcmca(test::demo_precedence_instance());
  REQUIRE(prec.status == SolveStatus::Optimal);
  CHECK(prec.best->cost == 4);
  CHECK(prec.stats.lower_bound == 4);

  auto wt = solve_pcmcawt(test::demo_waiting_instance());
  REQUIRE(wt.status == SolveStatus::Optimal);
  CHECK(wt.best->objective == 4);

  auto wt_as_pcmca = solve_pcmca(test::demo_waiting_instance());
  REQUIRE(wt_as_pcmca.status == SolveStatus::Optimal);
  CHECK(wt_as_pcmca.best->cost == 3);
}

TEST_CASE("branch and bound agrees with the oracle on random instances") {
  std::mt19937_64 rng(424242);
  int infeasible_seen = 0;
  for (int it = 0; it < 60; ++it) {
    RandomInstanceParams params;
    params.min_n = 2;
    params.max_n = 7;
    Instance inst = random_instance(rng, params);
    auto oracle = brute_force_pcmca(inst);
    auto exact = solve_pcmca(inst);
    CHECK(oracle.status == exact.status);
    if (oracle.status == SolveStatus::Optimal) {
      CHECK(oracle.best->cost == exact.best->cost);
    } else {
      ++infeasible_seen;
    }

    auto wt_oracle = brute_force_pcmcawt(inst);
    auto wt_exact = solve_pcmcawt(inst);
    CHECK(wt_oracle.status == wt_exact.status);
    if (wt_oracle.status == SolveStatus::Optimal) {
      CHECK(wt_oracle.best->objective == wt_exact.best->objective);
    }
  }
  CHECK(infeasible_seen > 0);  // the sweep must exercise the infeasible path
}

TEST_CASE("returned solutions satisfy every structural check") {
  std::mt19937_64 rng(31337);
  int solved = 0;
  while (solved < 20) {
    Instance inst = random_instance(rng);
    auto res = solve_pcmcawt(inst);
    if (res.status != SolveStatus::Optimal) continue;
    ++solved;
    const TimedSolution& ts = *res.best;
    CHECK(validate_arborescence(inst, ts.tree.parent).empty());
    CHECK(check_precedences(inst, ts.tree).empty());
    for (auto [s, t] : inst.precedences()) CHECK(ts.entry[t] >= ts.entry[s]);
    for (int v = 0; v < inst.n(); ++v) CHECK(ts.waiting[v] >= 0);
  }
}

TEST_CASE("exhausted node limits stop the search with honest bounds") {
  Instance prec = test::demo_precedence_instance();
  SolverLimits limits;
  limits.node_limit = 0;
  limits.use_lp_root_bound = false;
  auto res = solve_pcmca(prec, limits);
  // the greedy warm start already provides an incumbent
  CHECK(res.status == SolveStatus::Feasible);
  CHECK(res.stats.lower_bound <= 4);
  CHECK(res.stats.upper_bound >= 4);
  CHECK(res.stats.nodes == 0);

  SUBCASE("without a warm start the status degrades to limit") {
    // no greedy sequencing exists here: 2 must wait for 1, 1 is only
    // reachable through 2 in a path ordering
    Instance stuck = normalize(4, 0, {{0, 2, 1}, {2, 1, 1}, {2, 3, 5}, {1, 3, 1}},
                               {{1, 3}, {3, 2}}, "stuck");
    SolverLimits zero;
    zero.node_limit = 0;
    zero.use_lp_root_bound = false;
    auto r = solve_pcmca(stuck, zero);
    CHECK(r.status == SolveStatus::Limit);
  }
}

TEST_CASE("determinism: identical runs produce identical statistics") {
  std::mt19937_64 rng(5150);
  for (int it = 0; it < 10; ++it) {
    Instance inst = random_instance(rng);
    auto a = solve_pcmca(inst);
    auto b = solve_pcmca(inst);
    CHECK(a.status == b.status);
    CHECK(a.stats.nodes == b.stats.nodes);
    CHECK(a.stats.cuts == b.stats.cuts);
    if (a.best && b.best) CHECK(a.best->parent == b.best->parent);

    auto c = solve_pcmcawt(inst);
    auto d = solve_pcmcawt(inst);
    CHECK(c.status == d.status);
    CHECK(c.stats.nodes == d.stats.nodes);
    if (c.best && d.best) CHECK(c.best->tree.parent == d.best->tree.parent);
  }
}
