#pragma once

#include <optional>
#include <vector>

#include "arbx/digraph.hpp"
#include "arbx/instance.hpp"

namespace arbx {

/// Arc-variable values in [0, 1+eps], indexed like Instance::arcs().
struct FractionalSolution {
  std::vector<double> x;

  static FractionalSolution zeros(const Instance& inst) {
    return FractionalSolution{std::vector<double>(inst.arcs().size(), 0.0)};
  }
  /// Integral encoding of a tree: x = 1 exactly on the parent arcs.
  static FractionalSolution from_parent_map(const Instance& inst, const std::vector<int>& parent);
};

/// A connectivity-with-precedence inequality violated by some x:
/// sum of x over arcs from V_j \ S into S must be >= 1.
struct CutInequality {
  int target = -1;                               // vertex j
  std::vector<int> sink_side;                    // S, contains j, excludes root
  std::vector<std::pair<int, int>> crossing;     // instance arcs (i,k), i in V_j\S, k in S
  double cut_value = 0.0;
  double violation = 0.0;                        // 1 - cut_value
};

/// Tolerance for "cut value < 1" in the separation test.
inline constexpr double kSeparationEps = 1e-6;

/// The auxiliary graph D_j: vertices V_j, arcs of the instance with both ends
/// in V_j, weighted by the current x. Kept over the full vertex range; vertices
/// outside V_j are isolated.
DiGraph build_dj(const Instance& inst, int j, const FractionalSolution& x);

/// Scans j in ascending order and returns the first inequality whose min
/// (root, j)-cut in D_j has value below 1 - eps, or nothing.
std::optional<CutInequality> find_violated_inequality(const Instance& inst,
                                                      const FractionalSolution& x);

/// Most-violated inequality per target vertex, sorted by violation descending
/// (ties by vertex id). Parallelized over target vertices; identical output to
/// separate_all_serial.
std::vector<CutInequality> separate_all(const Instance& inst, const FractionalSolution& x);
std::vector<CutInequality> separate_all_serial(const Instance& inst, const FractionalSolution& x);

/// Re-evaluates an inequality against x; used to confirm returned cuts.
double evaluate_cut(const CutInequality& cut, const Instance& inst, const FractionalSolution& x);

}  // namespace arbx
