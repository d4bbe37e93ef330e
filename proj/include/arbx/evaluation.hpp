#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arbx/instance.hpp"

namespace arbx {

/// Parent map over the non-root vertices plus the summed arc cost.
struct Arborescence {
  std::vector<int> parent;  // parent[v], -1 at the root
  std::int64_t cost = 0;

  friend bool operator==(const Arborescence&, const Arborescence&) = default;
};

/// An arborescence with flow entry times d and waiting times w.
/// d[root] = 0 and d[j] = d[parent[j]] + c(parent[j], j) + w[j].
struct TimedSolution {
  Arborescence tree;
  std::vector<std::int64_t> entry;    // d
  std::vector<std::int64_t> waiting;  // w, 0 at the root
  std::int64_t objective = 0;         // arc costs + waiting times
};

struct TreeViolation {
  enum class Kind { MissingParent, UnknownArc, Cycle, BadRootEntry };
  Kind kind;
  int vertex = -1;             // offending vertex (cycle: one vertex on it)
  std::vector<int> cycle;      // populated for Kind::Cycle
  std::string describe() const;
};

/// Checks that `parent` encodes a spanning arborescence of the instance:
/// exactly one existing in-arc per non-root vertex and no cycles.
std::vector<TreeViolation> validate_arborescence(const Instance& inst,
                                                 const std::vector<int>& parent);

/// Builds an Arborescence (with cost) from a parent map, after validation.
/// Throws DomainError when the map does not validate.
Arborescence make_arborescence(const Instance& inst, const std::vector<int>& parent);

/// Precedence pairs (s,t) such that t lies on the root->s tree path.
/// Empty result means the tree is PCMCA-feasible.
std::vector<std::pair<int, int>> check_precedences(const Instance& inst,
                                                   const Arborescence& arbo);

/// Componentwise-minimal entry times for a fixed PCMCA-feasible tree:
/// longest-path fixpoint over tree arcs (weight c) and precedence arcs
/// (weight 0). Returns nothing when a strictly positive cycle makes the
/// waiting-time constraints unsatisfiable.
std::optional<TimedSolution> entry_times(const Instance& inst, const Arborescence& arbo);

std::int64_t objective_pcmca(const Arborescence& arbo);
std::int64_t objective_pcmcawt(const TimedSolution& ts);

/// 100 * (reference - bound) / reference; requires reference > 0.
double relative_gap(double reference, double bound);

}  // namespace arbx
