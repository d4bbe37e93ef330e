#pragma once

#include <string>

#include "arbx/instance.hpp"
#include "arbx/linear_model.hpp"
#include "arbx/simplex.hpp"

namespace arbx {

struct CuttingPlaneResult {
  LpStatus status = LpStatus::IterationLimit;
  double value = 0.0;
  int cuts_added = 0;
  int rounds = 0;
  LinearModel model;        // final model including the separated rows
  LpSolution last_solution;
};

struct CuttingPlaneOptions {
  int max_rounds = 500;
  bool with_valid_ineqs = true;  // aac only
  SimplexOptions simplex;
};

/// Linear relaxation via lazy separation: solve, separate, add every violated
/// row, repeat until none is violated. `tag` is one of set-based | da | aac.
CuttingPlaneResult solve_lr_with_cuts(const Instance& inst, const std::string& tag,
                                      const CuttingPlaneOptions& options = {});

}  // namespace arbx
