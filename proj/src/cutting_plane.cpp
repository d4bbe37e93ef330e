#include "arbx/cutting_plane.hpp"

#include <stdexcept>

#include "arbx/log.hpp"
#include "arbx/models.hpp"
#include "arbx/separation.hpp"

namespace arbx {

CuttingPlaneResult solve_lr_with_cuts(const Instance& inst, const std::string& tag,
                                      const CuttingPlaneOptions& options) {
  CuttingPlaneResult res;
  if (tag == "set-based" || tag == "set") {
    res.model = build_set_based(inst);
  } else if (tag == "da") {
    res.model = build_da(inst);
  } else if (tag == "aac") {
    res.model = build_aac(inst, options.with_valid_ineqs);
  } else {
    throw DomainError("unknown relaxation tag '" + tag + "' (want set-based, da or aac)");
  }

  std::vector<int> x_vars(inst.arcs().size());
  for (size_t a = 0; a < inst.arcs().size(); ++a) {
    const auto& arc = inst.arcs()[a];
    x_vars[a] = res.model.variable_index("x_" + std::to_string(arc.from) + "_" +
                                         std::to_string(arc.to));
  }

  for (res.rounds = 1; res.rounds <= options.max_rounds; ++res.rounds) {
    LpSolution sol = solve_lp(res.model, options.simplex);
    if (sol.status != LpStatus::Optimal) {
      res.status = sol.status;
      res.last_solution = std::move(sol);
      return res;
    }
    FractionalSolution frac = FractionalSolution::zeros(inst);
    for (size_t a = 0; a < inst.arcs().size(); ++a) frac.x[a] = sol.values[x_vars[a]];

    auto cuts = separate_all(inst, frac);
    if (cuts.empty()) {
      res.status = LpStatus::Optimal;
      res.value = sol.objective;
      res.last_solution = std::move(sol);
      return res;
    }
    for (const auto& cut : cuts) {
      auto row = cut_to_constraint(cut, res.model,
                                   "cut_" + std::to_string(res.cuts_added) + "_j" +
                                       std::to_string(cut.target));
      res.model.add_constraint(row.name, std::move(row.terms), row.sense, row.rhs);
      ++res.cuts_added;
    }
    ARBX_LOG_DEBUG("lr round " << res.rounds << ": value " << sol.objective << ", +"
                               << cuts.size() << " cuts (total " << res.cuts_added << ")");
  }
  res.status = LpStatus::IterationLimit;
  return res;
}

}  // namespace arbx
