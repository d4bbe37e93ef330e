#pragma once

#include "arbx/linear_model.hpp"

namespace arbx {

struct SimplexOptions {
  long long max_iterations = 200000;
  double pivot_tol = 1e-9;
  double feas_tol = 1e-7;
  /// Consecutive degenerate pivots before Bland's rule takes over.
  int bland_after = 100;
};

/// Solves the continuous relaxation of the model (binaries relaxed to [0,1])
/// with a dense two-phase simplex. Deterministic for a given model.
LpSolution solve_lp(const LinearModel& model, const SimplexOptions& options = {});

}  // namespace arbx
