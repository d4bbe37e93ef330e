#include "arbx/models.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace arbx {

namespace {

std::string var_x(const InstanceArc& a) {
  return "x_" + std::to_string(a.from) + "_" + std::to_string(a.to);
}
std::string var_d(int i) { return "d_" + std::to_string(i); }
std::string var_w(int i) { return "w_" + std::to_string(i); }
std::string var_z(const InstanceArc& a) {
  return "z_" + std::to_string(a.from) + "_" + std::to_string(a.to);
}
std::string var_y(int k, const InstanceArc& a) {
  return "y_" + std::to_string(k) + "_" + std::to_string(a.from) + "_" + std::to_string(a.to);
}

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<int> add_arc_vars(const Instance& inst, LinearModel& m) {
  std::vector<int> x;
  x.reserve(inst.arcs().size());
  for (const auto& arc : inst.arcs()) {
    x.push_back(m.add_variable(var_x(arc), VarKind::Binary, 0.0, 1.0));
  }
  return x;
}

void add_indegree_rows(const Instance& inst, LinearModel& m, const std::vector<int>& x) {
  for (int j = 0; j < inst.n(); ++j) {
    if (j == inst.root()) continue;
    std::vector<std::pair<int, double>> terms;
    for (int a : inst.in_arcs(j)) terms.emplace_back(x[a], 1.0);
    m.add_constraint("indeg_" + std::to_string(j), std::move(terms), Sense::EQ, 1.0);
  }
}

void check_shape(const LinearModel& m, const ModelShape& shape) {
  if (static_cast<int>(m.variables().size()) != shape.variables ||
      static_cast<int>(m.constraints().size()) != shape.constraints) {
    throw std::logic_error("model size mismatch for " + m.formulation + ": built " +
                           std::to_string(m.variables().size()) + "x" +
                           std::to_string(m.constraints().size()) + ", expected " +
                           std::to_string(shape.variables) + "x" +
                           std::to_string(shape.constraints));
  }
}

}  // namespace

BigM compute_big_m(const Instance& inst) {
  BigM result;
  const int n = inst.n();
  std::vector<char> visited(n, 0);
  std::vector<std::vector<int>> preds(n);
  for (auto [s, t] : inst.precedences()) preds[t].push_back(s);

  int current = inst.root();
  visited[current] = 1;
  result.tour.push_back(current);
  std::int64_t total = 0;
  for (int step = 1; step < n; ++step) {
    int best = -1;
    std::int64_t best_cost = 0;
    for (int a : inst.out_arcs(current)) {
      const auto& arc = inst.arcs()[a];
      if (visited[arc.to]) continue;
      bool ready = true;
      for (int s : preds[arc.to]) {
        if (!visited[s]) {
          ready = false;
          break;
        }
      }
      if (!ready) continue;
      if (best < 0 || arc.cost < best_cost || (arc.cost == best_cost && arc.to < best)) {
        best = arc.to;
        best_cost = arc.cost;
      }
    }
    if (best < 0) {
      // Greedy dead end; bound by the worst possible outgoing arc per vertex.
      result.fallback = true;
      result.tour.clear();
      std::int64_t sum = 0;
      for (int v = 0; v < n; ++v) {
        std::int64_t mx = 0;
        for (int a : inst.out_arcs(v)) mx = std::max(mx, inst.arcs()[a].cost);
        sum += mx;
      }
      result.value = sum;
      return result;
    }
    visited[best] = 1;
    result.tour.push_back(best);
    total += best_cost;
    current = best;
  }
  result.value = total;
  return result;
}

ModelShape set_based_shape(const Instance& inst) {
  return {static_cast<int>(inst.arcs().size()), inst.n() - 1};
}

LinearModel build_set_based(const Instance& inst) {
  LinearModel m;
  m.formulation = "set-based";
  m.instance_name = inst.name();
  auto x = add_arc_vars(inst, m);
  for (size_t a = 0; a < inst.arcs().size(); ++a) {
    m.set_objective_coeff(x[a], static_cast<double>(inst.arcs()[a].cost));
  }
  add_indegree_rows(inst, m, x);
  check_shape(m, set_based_shape(inst));
  return m;
}

ModelShape mcf_shape(const Instance& inst) {
  const int n = inst.n();
  int y_vars = 0;
  int flow_rows = 0;
  for (int k = 0; k < n; ++k) {
    if (k == inst.root()) continue;
    auto allowed = allowed_predecessor_mask(inst, k);
    for (const auto& arc : inst.arcs()) {
      if (allowed[arc.from] && allowed[arc.to]) ++y_vars;
    }
    for (int i = 0; i < n; ++i) {
      if (allowed[i]) ++flow_rows;
    }
  }
  int a = static_cast<int>(inst.arcs().size());
  int r = static_cast<int>(inst.precedences().size());
  return {a + y_vars + 2 * n, (n - 1) + flow_rows + 1 + a + a + r + y_vars};
}

LinearModel build_mcf(const Instance& inst) {
  LinearModel m;
  m.formulation = "mcf";
  m.instance_name = inst.name();
  BigM big_m = compute_big_m(inst);
  m.big_m = static_cast<double>(big_m.value);
  m.big_m_fallback = big_m.fallback;
  const double M = m.big_m;
  const int n = inst.n();

  auto x = add_arc_vars(inst, m);
  // y^k exists only for arcs inside the commodity's allowed-predecessor set.
  std::vector<std::vector<int>> y(n, std::vector<int>(inst.arcs().size(), -1));
  std::vector<std::vector<char>> allowed(n);
  for (int k = 0; k < n; ++k) {
    if (k == inst.root()) continue;
    allowed[k] = allowed_predecessor_mask(inst, k);
    for (size_t a = 0; a < inst.arcs().size(); ++a) {
      const auto& arc = inst.arcs()[a];
      if (allowed[k][arc.from] && allowed[k][arc.to]) {
        y[k][a] = m.add_variable(var_y(k, arc), VarKind::Binary, 0.0, 1.0);
      }
    }
  }
  std::vector<int> d(n), w(n);
  for (int i = 0; i < n; ++i) d[i] = m.add_variable(var_d(i), VarKind::Continuous, 0.0, kInf);
  for (int i = 0; i < n; ++i) w[i] = m.add_variable(var_w(i), VarKind::Continuous, 0.0, kInf);

  for (size_t a = 0; a < inst.arcs().size(); ++a) {
    m.set_objective_coeff(x[a], static_cast<double>(inst.arcs()[a].cost));
  }
  for (int i = 0; i < n; ++i) m.set_objective_coeff(w[i], 1.0);

  add_indegree_rows(inst, m, x);

  for (int k = 0; k < n; ++k) {
    if (k == inst.root()) continue;
    for (int i = 0; i < n; ++i) {
      if (!allowed[k][i]) continue;
      std::vector<std::pair<int, double>> terms;
      for (int a : inst.out_arcs(i)) {
        if (y[k][a] >= 0) terms.emplace_back(y[k][a], 1.0);
      }
      for (int a : inst.in_arcs(i)) {
        if (y[k][a] >= 0) terms.emplace_back(y[k][a], -1.0);
      }
      double rhs = i == inst.root() ? 1.0 : (i == k ? -1.0 : 0.0);
      m.add_constraint("flow_" + std::to_string(k) + "_" + std::to_string(i), std::move(terms),
                       Sense::EQ, rhs);
    }
  }

  m.add_constraint("d_root", {{d[inst.root()], 1.0}}, Sense::EQ, 0.0);
  for (size_t a = 0; a < inst.arcs().size(); ++a) {
    const auto& arc = inst.arcs()[a];
    double c = static_cast<double>(arc.cost);
    m.add_constraint("time_" + std::to_string(arc.from) + "_" + std::to_string(arc.to),
                     {{d[arc.to], 1.0}, {d[arc.from], -1.0}, {x[a], -(M + c)}}, Sense::GE, -M);
    m.add_constraint("wait_" + std::to_string(arc.from) + "_" + std::to_string(arc.to),
                     {{w[arc.to], 1.0}, {d[arc.to], -1.0}, {d[arc.from], 1.0}, {x[a], -(M - c)}},
                     Sense::GE, -M);
  }
  for (auto [s, t] : inst.precedences()) {
    m.add_constraint("prec_" + std::to_string(s) + "_" + std::to_string(t),
                     {{d[t], 1.0}, {d[s], -1.0}}, Sense::GE, 0.0);
  }
  for (int k = 0; k < n; ++k) {
    if (k == inst.root()) continue;
    for (size_t a = 0; a < inst.arcs().size(); ++a) {
      if (y[k][a] < 0) continue;
      const auto& arc = inst.arcs()[a];
      m.add_constraint("link_" + std::to_string(k) + "_" + std::to_string(arc.from) + "_" +
                           std::to_string(arc.to),
                       {{y[k][a], 1.0}, {x[a], -1.0}}, Sense::LE, 0.0);
    }
  }
  check_shape(m, mcf_shape(inst));
  return m;
}

ModelShape da_shape(const Instance& inst) {
  int a = static_cast<int>(inst.arcs().size());
  int r = static_cast<int>(inst.precedences().size());
  return {a + 2 * inst.n(), (inst.n() - 1) + 1 + 2 * a + r};
}

LinearModel build_da(const Instance& inst) {
  LinearModel m;
  m.formulation = "da";
  m.instance_name = inst.name();
  BigM big_m = compute_big_m(inst);
  m.big_m = static_cast<double>(big_m.value);
  m.big_m_fallback = big_m.fallback;
  const double M = m.big_m;
  const int n = inst.n();

  auto x = add_arc_vars(inst, m);
  std::vector<int> d(n), w(n);
  for (int i = 0; i < n; ++i) d[i] = m.add_variable(var_d(i), VarKind::Continuous, 0.0, kInf);
  for (int i = 0; i < n; ++i) w[i] = m.add_variable(var_w(i), VarKind::Continuous, 0.0, kInf);

  for (size_t a = 0; a < inst.arcs().size(); ++a) {
    m.set_objective_coeff(x[a], static_cast<double>(inst.arcs()[a].cost));
  }
  for (int i = 0; i < n; ++i) m.set_objective_coeff(w[i], 1.0);

  add_indegree_rows(inst, m, x);
  m.add_constraint("d_root", {{d[inst.root()], 1.0}}, Sense::EQ, 0.0);
  for (size_t a = 0; a < inst.arcs().size(); ++a) {
    const auto& arc = inst.arcs()[a];
    double c = static_cast<double>(arc.cost);
    m.add_constraint("time_" + std::to_string(arc.from) + "_" + std::to_string(arc.to),
                     {{d[arc.to], 1.0}, {d[arc.from], -1.0}, {x[a], -(M + c)}}, Sense::GE, -M);
    m.add_constraint("wait_" + std::to_string(arc.from) + "_" + std::to_string(arc.to),
                     {{w[arc.to], 1.0}, {d[arc.to], -1.0}, {d[arc.from], 1.0}, {x[a], -(M - c)}},
                     Sense::GE, -M);
  }
  for (auto [s, t] : inst.precedences()) {
    m.add_constraint("prec_" + std::to_string(s) + "_" + std::to_string(t),
                     {{d[t], 1.0}, {d[s], -1.0}}, Sense::GE, 0.0);
  }
  check_shape(m, da_shape(inst));
  return m;
}

ModelShape aac_shape(const Instance& inst, bool with_valid_ineqs) {
  int a = static_cast<int>(inst.arcs().size());
  int r = static_cast<int>(inst.precedences().size());
  int rows = (inst.n() - 1) + 1 + a + r + 2 * a;
  if (with_valid_ineqs) rows += inst.n() - 1;
  return {2 * a + inst.n(), rows};
}

LinearModel build_aac(const Instance& inst, bool with_valid_ineqs) {
  LinearModel m;
  m.formulation = "aac";
  m.instance_name = inst.name();
  BigM big_m = compute_big_m(inst);
  m.big_m = static_cast<double>(big_m.value);
  m.big_m_fallback = big_m.fallback;
  const double M = m.big_m;
  const int n = inst.n();

  auto x = add_arc_vars(inst, m);
  std::vector<int> d(n);
  for (int i = 0; i < n; ++i) d[i] = m.add_variable(var_d(i), VarKind::Continuous, 0.0, kInf);
  std::vector<int> z(inst.arcs().size());
  for (size_t a = 0; a < inst.arcs().size(); ++a) {
    z[a] = m.add_variable(var_z(inst.arcs()[a]), VarKind::Continuous, 0.0, kInf);
  }

  for (int j = 0; j < n; ++j) {
    if (j != inst.root()) m.set_objective_coeff(d[j], 1.0);
  }
  for (size_t a = 0; a < inst.arcs().size(); ++a) m.set_objective_coeff(z[a], -1.0);

  add_indegree_rows(inst, m, x);
  m.add_constraint("d_root", {{d[inst.root()], 1.0}}, Sense::EQ, 0.0);
  for (size_t a = 0; a < inst.arcs().size(); ++a) {
    const auto& arc = inst.arcs()[a];
    double c = static_cast<double>(arc.cost);
    m.add_constraint("time_" + std::to_string(arc.from) + "_" + std::to_string(arc.to),
                     {{d[arc.to], 1.0}, {d[arc.from], -1.0}, {x[a], -(M + c)}}, Sense::GE, -M);
  }
  for (auto [s, t] : inst.precedences()) {
    m.add_constraint("prec_" + std::to_string(s) + "_" + std::to_string(t),
                     {{d[t], 1.0}, {d[s], -1.0}}, Sense::GE, 0.0);
  }
  for (size_t a = 0; a < inst.arcs().size(); ++a) {
    const auto& arc = inst.arcs()[a];
    std::string suffix = std::to_string(arc.from) + "_" + std::to_string(arc.to);
    m.add_constraint("zd_" + suffix, {{z[a], 1.0}, {d[arc.from], -1.0}}, Sense::LE, 0.0);
    m.add_constraint("zx_" + suffix, {{z[a], 1.0}, {x[a], -M}}, Sense::LE, 0.0);
  }
  if (with_valid_ineqs) {
    for (int j = 0; j < n; ++j) {
      if (j == inst.root()) continue;
      std::vector<std::pair<int, double>> terms;
      for (int a : inst.in_arcs(j)) {
        terms.emplace_back(z[a], 1.0);
        terms.emplace_back(x[a], static_cast<double>(inst.arcs()[a].cost));
      }
      terms.emplace_back(d[j], -1.0);
      m.add_constraint("vi_" + std::to_string(j), std::move(terms), Sense::LE, 0.0);
    }
  }
  check_shape(m, aac_shape(inst, with_valid_ineqs));
  return m;
}

LinearConstraint cut_to_constraint(const CutInequality& cut, const LinearModel& model,
                                   const std::string& row_name) {
  LinearConstraint row;
  row.name = row_name;
  row.sense = Sense::GE;
  row.rhs = 1.0;
  for (auto [i, k] : cut.crossing) {
    int var = model.variable_index("x_" + std::to_string(i) + "_" + std::to_string(k));
    if (var < 0) throw DomainError("cut references unknown variable x_" + std::to_string(i) + "_" +
                                   std::to_string(k));
    row.terms.emplace_back(var, 1.0);
  }
  return row;
}

namespace {

std::string format_number(double v) {
  double r = std::round(v);
  if (std::fabs(v - r) < 1e-9 && std::fabs(v) < 1e15) {
    std::ostringstream os;
    os << static_cast<long long>(r);
    return os.str();
  }
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// Joins tokens into lines capped at 200 columns, continuation lines indented.
void emit_wrapped(std::ostream& out, const std::vector<std::string>& tokens) {
  std::string line = " ";
  for (const auto& tok : tokens) {
    if (line.size() + tok.size() + 1 > 200) {
      out << line << "\n";
      line = "   ";
    }
    line += tok + " ";
  }
  out << line << "\n";
}

std::vector<std::string> term_tokens(const std::vector<std::pair<int, double>>& terms,
                                     const LinearModel& m) {
  std::vector<std::string> toks;
  bool first = true;
  for (auto [var, coeff] : terms) {
    if (coeff == 0.0) continue;
    std::string sign = coeff < 0 ? "-" : (first ? "" : "+");
    if (!sign.empty()) toks.push_back(sign);
    toks.push_back(format_number(std::fabs(coeff)));
    toks.push_back(m.variables()[var].name);
    first = false;
  }
  if (first) {
    toks.push_back("0");
    toks.push_back(m.variables()[0].name);
  }
  return toks;
}

}  // namespace

void export_lp(const LinearModel& m, std::ostream& out) {
  out << "\\ formulation: " << m.formulation;
  if (!m.instance_name.empty()) out << "  instance: " << m.instance_name;
  if (m.big_m > 0.0) out << "  M: " << format_number(m.big_m) << (m.big_m_fallback ? " (fallback)" : "");
  out << "\n";
  out << "Minimize\n";
  std::vector<std::pair<int, double>> obj_terms;
  for (int j = 0; j < static_cast<int>(m.variables().size()); ++j) {
    if (m.objective()[j] != 0.0) obj_terms.emplace_back(j, m.objective()[j]);
  }
  std::vector<std::string> toks = term_tokens(obj_terms, m);
  toks.insert(toks.begin(), "obj:");
  emit_wrapped(out, toks);

  out << "Subject To\n";
  for (const auto& con : m.constraints()) {
    std::vector<std::string> row = term_tokens(con.terms, m);
    row.insert(row.begin(), con.name + ":");
    row.push_back(con.sense == Sense::LE ? "<=" : con.sense == Sense::GE ? ">=" : "=");
    row.push_back(format_number(con.rhs));
    emit_wrapped(out, row);
  }

  out << "Bounds\n";
  for (const auto& v : m.variables()) {
    if (v.kind == VarKind::Binary) {
      out << " 0 <= " << v.name << " <= 1\n";
    } else if (std::isinf(v.ub)) {
      out << " " << v.name << " >= " << format_number(v.lb) << "\n";
    } else {
      out << " " << format_number(v.lb) << " <= " << v.name << " <= " << format_number(v.ub)
          << "\n";
    }
  }

  out << "Binary\n";
  for (const auto& v : m.variables()) {
    if (v.kind == VarKind::Binary) out << " " << v.name << "\n";
  }
  out << "End\n";
}

}  // namespace arbx
