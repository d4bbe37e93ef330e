#pragma once

#include <cstdint>
#include <random>

#include "arbx/instance.hpp"

namespace arbx {

struct RandomInstanceParams {
  int min_n = 2;
  int max_n = 7;
  double arc_prob = 0.65;
  std::int64_t max_cost = 9;
  int max_precedences = 6;
};

/// Seeded random instance for fuzzing and oracle comparisons. Drawn arcs and
/// precedence pairs go through the usual normalization, so the result always
/// satisfies the instance invariants (it may well be infeasible to solve).
Instance random_instance(std::mt19937_64& rng, const RandomInstanceParams& params = {});

}  // namespace arbx
