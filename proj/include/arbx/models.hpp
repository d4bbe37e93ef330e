#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "arbx/instance.hpp"
#include "arbx/linear_model.hpp"
#include "arbx/separation.hpp"

namespace arbx {

struct BigM {
  std::int64_t value = 0;
  bool fallback = false;             // greedy dead-ended; bound from max out-arcs
  std::vector<int> tour;             // greedy vertex order when not a fallback
};

/// Upper bound on the optimal waiting-time objective: cost of a greedy
/// nearest-neighbor sequencing that respects the precedences (ties to the
/// lowest vertex id). Falls back to the sum of per-vertex maximum outgoing
/// costs when the greedy dead-ends.
BigM compute_big_m(const Instance& inst);

/// Arc-selection model: binary x per arc, one in-degree row per non-root
/// vertex. Connectivity/precedence rows are separated lazily.
LinearModel build_set_based(const Instance& inst);

/// Multi-commodity flow model: per-commodity unit flows restricted to the
/// allowed-predecessor sets, plus timing rows. Polynomially sized, no lazy rows.
LinearModel build_mcf(const Instance& inst);

/// Timing model with in-degree, big-M time propagation, waiting-time and
/// precedence rows; connectivity rows are separated lazily.
LinearModel build_da(const Instance& inst);

/// Timing model with the product terms d_i * x_ij replaced by z variables.
/// `with_valid_ineqs` adds the per-vertex strengthening rows that keep the
/// relaxation non-negative.
LinearModel build_aac(const Instance& inst, bool with_valid_ineqs = true);

/// The separated inequality as a model row: sum of crossing x >= 1.
LinearConstraint cut_to_constraint(const CutInequality& cut, const LinearModel& model,
                                   const std::string& row_name);

/// Writes the model in LP text format (Minimize / Subject To / Bounds /
/// Binary / End), deterministic order, lines capped below 255 characters.
void export_lp(const LinearModel& model, std::ostream& out);

/// Expected variable counts per formulation, asserted by the builders.
struct ModelShape {
  int variables = 0;
  int constraints = 0;
};
ModelShape set_based_shape(const Instance& inst);
ModelShape mcf_shape(const Instance& inst);
ModelShape da_shape(const Instance& inst);
ModelShape aac_shape(const Instance& inst, bool with_valid_ineqs);

}  // namespace arbx
