#include <doctest.h>

#include <random>

#include "arbx/evaluation.hpp"
#include "arbx/randomgen.hpp"
#include "arbx/solver.hpp"
#include "support.hpp"

using namespace arbx;

TEST_CASE("validate accepts the demo tree and rejects corruptions") {
  Instance demo = test::demo_precedence_instance();
  std::vector<int> chain{-1, 0, 1, 2};
  CHECK(validate_arborescence(demo, chain).empty());

  SUBCASE("two-cycle") {
    Instance plain = normalize(3, 0, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}, {2, 1, 1}}, {}, "p");
    auto v = validate_arborescence(plain, {-1, 2, 1});
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == TreeViolation::Kind::Cycle);
    CHECK(v[0].cycle.size() == 2);
  }
  SUBCASE("missing arc") {
    auto v = validate_arborescence(demo, {-1, 0, 1, 1});  // no arc 1->3
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == TreeViolation::Kind::UnknownArc);
    CHECK(v[0].vertex == 3);
  }
  SUBCASE("single-edit corruptions yield exactly one violation") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> pick(1, 3);
    for (int it = 0; it < 50; ++it) {
      auto parent = chain;
      int v = pick(rng);
      // swap in a different in-arc source for v
      for (int cand : demo.in_arcs(v)) {
        int src = demo.arcs()[cand].from;
        if (src != parent[v]) {
          parent[v] = src;
          break;
        }
      }
      auto violations = validate_arborescence(demo, parent);
      auto timed_ok = violations.empty();
      CHECK((timed_ok || violations.size() == 1));
    }
  }
}

TEST_CASE("check_precedences flags the blocked tree and passes the detour") {
  Instance demo = test::demo_precedence_instance();
  Arborescence chain = make_arborescence(demo, {-1, 0, 1, 2});
  CHECK(chain.cost == 3);
  auto violated = check_precedences(demo, chain);
  REQUIRE(violated.size() == 1);
  CHECK(violated[0] == std::pair<int, int>{3, 1});

  Arborescence detour = make_arborescence(demo, {-1, 0, 1, 0});
  CHECK(detour.cost == 4);
  CHECK(check_precedences(demo, detour).empty());

  Instance no_r = normalize(4, 0, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}}, {}, "p");
  Arborescence line = make_arborescence(no_r, {-1, 0, 1, 2});
  CHECK(check_precedences(no_r, line).empty());
}

TEST_CASE("entry times on the waiting demo") {
  Instance demo = test::demo_waiting_instance();
  Arborescence tree = make_arborescence(demo, {-1, 0, 1, 0});
  CHECK(tree.cost == 3);
  auto timed = entry_times(demo, tree);
  REQUIRE(timed.has_value());
  CHECK(timed->entry == std::vector<std::int64_t>{0, 1, 2, 2});
  CHECK(timed->waiting == std::vector<std::int64_t>{0, 0, 0, 1});
  CHECK(timed->objective == 4);
  CHECK(objective_pcmcawt(*timed) == 4);
  CHECK(objective_pcmca(timed->tree) == 3);

  SUBCASE("idempotent: recomputing changes nothing") {
    auto again = entry_times(demo, timed->tree);
    REQUIRE(again.has_value());
    CHECK(again->entry == timed->entry);
    CHECK(again->waiting == timed->waiting);
    CHECK(again->objective == timed->objective);
  }
}

TEST_CASE("entry times without precedences reproduce path costs") {
  Instance plain = normalize(4, 0, {{0, 1, 2}, {1, 2, 3}, {1, 3, 5}}, {}, "p");
  Arborescence tree = make_arborescence(plain, {-1, 0, 1, 1});
  auto timed = entry_times(plain, tree);
  REQUIRE(timed.has_value());
  CHECK(timed->entry == std::vector<std::int64_t>{0, 2, 5, 7});
  CHECK(timed->waiting == std::vector<std::int64_t>{0, 0, 0, 0});
  CHECK(timed->objective == tree.cost);
}

TEST_CASE("positive precedence cycles are wt-infeasible, zero cycles are fine") {
  // Two branches with mutual precedences force d_2 >= d_3 and d_3 >= d_2.
  SUBCASE("zero-length cycle accepted") {
    Instance inst = normalize(4, 0, {{0, 1, 1}, {0, 2, 0}, {0, 3, 0}}, {{2, 3}, {3, 2}}, "z");
    Arborescence tree = make_arborescence(inst, {-1, 0, 0, 0});
    auto timed = entry_times(inst, tree);
    REQUIRE(timed.has_value());
    CHECK(timed->entry[2] == timed->entry[3]);
  }
  SUBCASE("strictly positive cycle across two branches rejected") {
    // Chains 0->1->2 and 0->3->4 with d_3 >= d_2 and d_1 >= d_4: the
    // constraints chase each other upward and never settle.
    Instance inst = normalize(5, 0, {{0, 1, 1}, {1, 2, 1}, {0, 3, 1}, {3, 4, 1}},
                              {{2, 3}, {4, 1}}, "pos");
    Arborescence tree = make_arborescence(inst, {-1, 0, 1, 0, 3});
    CHECK(check_precedences(inst, tree).empty());  // structurally fine
    CHECK(!entry_times(inst, tree).has_value());
  }
}

TEST_CASE("telescoping identity holds on random feasible trees") {
  std::mt19937_64 rng(77);
  int checked = 0;
  while (checked < 30) {
    RandomInstanceParams params;
    params.min_n = 3;
    params.max_n = 7;
    Instance inst = random_instance(rng, params);
    auto res = brute_force_pcmcawt(inst);
    if (res.status != SolveStatus::Optimal) continue;
    ++checked;
    const TimedSolution& ts = *res.best;
    std::int64_t telescoped = 0;
    for (int v = 0; v < inst.n(); ++v) {
      if (v != inst.root()) telescoped += ts.entry[v] - ts.entry[ts.tree.parent[v]];
    }
    CHECK(telescoped == ts.objective);
    // with empty R both objectives coincide
    if (inst.precedences().empty()) CHECK(ts.objective == ts.tree.cost);
  }
}

TEST_CASE("relative gap") {
  CHECK(relative_gap(44, 35) == doctest::Approx(20.455).epsilon(1e-3));
  CHECK(relative_gap(25, 25) == 0.0);
  CHECK(relative_gap(25, 25.17) == doctest::Approx(-0.68));
  CHECK_THROWS_AS(relative_gap(0, 1), DomainError);
  CHECK_THROWS_AS(relative_gap(-3, 1), DomainError);
}
