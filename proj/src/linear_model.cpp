#include "arbx/linear_model.hpp"

#include <stdexcept>

namespace arbx {

int LinearModel::add_variable(const std::string& name, VarKind kind, double lb, double ub) {
  if (!var_names_.emplace(name, static_cast<int>(vars_.size())).second) {
    throw DomainError("duplicate variable name '" + name + "'");
  }
  if (kind == VarKind::Binary) {
    lb = 0.0;
    ub = 1.0;
  }
  vars_.push_back({name, kind, lb, ub});
  obj_.push_back(0.0);
  return static_cast<int>(vars_.size()) - 1;
}

int LinearModel::add_constraint(const std::string& name,
                                std::vector<std::pair<int, double>> terms, Sense sense,
                                double rhs) {
  if (!con_names_.emplace(name, static_cast<int>(cons_.size())).second) {
    throw DomainError("duplicate constraint name '" + name + "'");
  }
  for (auto& [var, coeff] : terms) {
    if (var < 0 || var >= static_cast<int>(vars_.size())) {
      throw DomainError("constraint '" + name + "' references undeclared variable");
    }
    (void)coeff;
  }
  cons_.push_back({name, std::move(terms), sense, rhs});
  return static_cast<int>(cons_.size()) - 1;
}

void LinearModel::set_objective_coeff(int var, double coeff) {
  if (var < 0 || var >= static_cast<int>(vars_.size())) {
    throw DomainError("objective references undeclared variable");
  }
  obj_[var] = coeff;
}

int LinearModel::variable_index(const std::string& name) const {
  auto it = var_names_.find(name);
  return it == var_names_.end() ? -1 : it->second;
}

void LinearModel::fix_variable(int var, double value) { set_bounds(var, value, value); }

void LinearModel::set_bounds(int var, double lb, double ub) {
  if (var < 0 || var >= static_cast<int>(vars_.size())) {
    throw DomainError("set_bounds: undeclared variable");
  }
  vars_[var].lb = lb;
  vars_[var].ub = ub;
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
  }
  return "?";
}

}  // namespace arbx
