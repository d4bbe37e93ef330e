#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <vector>

#include "arbx/evaluation.hpp"
#include "arbx/instance.hpp"

namespace arbx {

/// 3-CNF formula: clauses of exactly three signed variable indices
/// (1-based, negative = negated). Duplicate literals inside a clause are fine.
struct CnfFormula {
  int variable_count = 0;
  std::vector<std::array<int, 3>> clauses;
};

/// DIMACS CNF reader restricted to three-literal clauses.
CnfFormula read_dimacs_cnf(std::istream& in);
CnfFormula read_dimacs_cnf_file(const std::string& path);

/// Truth-table evaluation (variable_count is small by construction here).
bool clause_satisfied(const std::array<int, 3>& clause, const std::vector<bool>& assignment);
bool formula_satisfied(const CnfFormula& f, const std::vector<bool>& assignment);
bool formula_satisfiable(const CnfFormula& f);

/// Layout of the instance produced by from_3sat: fixed vertices + one vertex
/// per literal occurrence, clause by clause.
struct SatInstanceLayout {
  int root = 0;
  int source = 1;       // the path entry vertex
  int collector = 2;    // picks up the literal vertices left off the path
  int sink = 3;
  static int literal_vertex(int clause, int slot) { return 4 + 3 * clause + slot; }
};

/// Feasibility-preserving instance: a spanning arborescence respecting the
/// precedences exists iff the formula is satisfiable. All arcs cost 1.
/// `symmetric_pairs` additionally adds the mirrored precedence for every
/// opposite-literal pair; the equivalence holds either way.
Instance from_3sat(const CnfFormula& f, bool symmetric_pairs = false);

/// Reads the chosen literals off the root-sink path of a feasible solution and
/// returns the induced satisfying assignment (one bool per variable).
std::optional<std::vector<bool>> satisfiability_from_solution(const CnfFormula& f,
                                                              const Instance& reduced,
                                                              const Arborescence& arbo);

/// Points in the first quadrant; the first one must be the origin.
struct RsaPointSet {
  std::vector<std::pair<int, int>> points;
};

RsaPointSet read_points(std::istream& in);
RsaPointSet read_points_file(const std::string& path);

struct RsaInstance {
  Instance instance;
  int far_vertex = -1;                       // the argmax x+y point
  std::vector<std::pair<int, int>> coords;   // per vertex
  int terminal_count = 0;                    // vertices 0..terminal_count-1 are the points
};

/// Grid reduction: vertices are the grid intersections induced by the point
/// coordinates, arcs go right/up with Manhattan costs, the farthest point
/// feeds every Steiner vertex at cost zero and must be entered last.
RsaInstance from_rsa(const RsaPointSet& pts);

/// Exhaustive minimum-length rectilinear arborescence spanning the points;
/// refuses grids beyond `max_grid_vertices`.
std::int64_t rsa_brute_force(const RsaPointSet& pts, int max_grid_vertices = 14);

}  // namespace arbx
