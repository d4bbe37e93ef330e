#pragma once

#include <cstdint>
#include <optional>

#include "arbx/evaluation.hpp"
#include "arbx/instance.hpp"

namespace arbx {

struct SolverLimits {
  double time_limit_s = 3600.0;
  long long node_limit = -1;  // negative: unlimited
  int brute_force_cap = 8;
  bool use_lp_root_bound = true;   // root relaxation bound when n <= 60
  bool use_lp_node_bound = true;   // per-node timing bound for the WT search
};

enum class SolveStatus { Optimal, Feasible, Infeasible, Limit };
const char* to_string(SolveStatus status);

struct SolveStats {
  long long nodes = 0;
  long long cuts = 0;  // violated-precedence branchings performed
  double wall_seconds = 0.0;
  SolveStatus status = SolveStatus::Infeasible;
  std::int64_t upper_bound = 0;  // incumbent objective, valid when incumbent set
  std::int64_t lower_bound = 0;
};

struct PcmcaResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Arborescence> best;
  SolveStats stats;
};

struct PcmcawtResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<TimedSolution> best;
  SolveStats stats;
};

/// Exhaustive parent-map enumeration; refuses instances above the size cap.
/// Ties between equal-objective trees go to the lexicographically smallest
/// parent vector, so serial and parallel enumeration agree exactly.
PcmcaResult brute_force_pcmca(const Instance& inst, const SolverLimits& limits = {});
PcmcaResult brute_force_pcmca_serial(const Instance& inst, const SolverLimits& limits = {});
PcmcawtResult brute_force_pcmcawt(const Instance& inst, const SolverLimits& limits = {});
PcmcawtResult brute_force_pcmcawt_serial(const Instance& inst, const SolverLimits& limits = {});

/// Exact branch-and-bound with best-bound node selection. Node bounds come
/// from the minimum arborescence on the node's restricted arc set; integral
/// candidates that violate a precedence trigger infeasible-path branching.
PcmcaResult solve_pcmca(const Instance& inst, const SolverLimits& limits = {});

/// Exact branch-and-bound over trees for the waiting-time variant. Structural
/// candidates are timed with entry_times; feasible but wait-paying candidates
/// trigger a partition step so cheaper-waiting trees are still reachable.
PcmcawtResult solve_pcmcawt(const Instance& inst, const SolverLimits& limits = {});

}  // namespace arbx
