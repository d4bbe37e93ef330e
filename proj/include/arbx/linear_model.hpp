#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "arbx/instance.hpp"

namespace arbx {

enum class VarKind { Continuous, Binary };
enum class Sense { LE, EQ, GE };

struct Variable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  double lb = 0.0;
  double ub = std::numeric_limits<double>::infinity();
};

struct LinearConstraint {
  std::string name;
  std::vector<std::pair<int, double>> terms;  // (variable index, coefficient)
  Sense sense = Sense::LE;
  double rhs = 0.0;
};

/// Formulation-agnostic MILP container: variables, rows, minimize objective.
class LinearModel {
 public:
  int add_variable(const std::string& name, VarKind kind, double lb, double ub);
  int add_constraint(const std::string& name, std::vector<std::pair<int, double>> terms,
                     Sense sense, double rhs);
  void set_objective_coeff(int var, double coeff);

  int variable_index(const std::string& name) const;  // -1 when absent
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<LinearConstraint>& constraints() const { return cons_; }
  const std::vector<double>& objective() const { return obj_; }

  /// Pins a variable to a value (used to restrict a model to a fixed tree).
  void fix_variable(int var, double value);
  void set_bounds(int var, double lb, double ub);

  std::string formulation;
  std::string instance_name;
  double big_m = 0.0;
  bool big_m_fallback = false;

 private:
  std::vector<Variable> vars_;
  std::vector<LinearConstraint> cons_;
  std::vector<double> obj_;
  std::map<std::string, int> var_names_;
  std::map<std::string, int> con_names_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::IterationLimit;
  double objective = 0.0;
  std::vector<double> values;  // one per model variable
  long long iterations = 0;
};

const char* to_string(LpStatus status);

}  // namespace arbx
