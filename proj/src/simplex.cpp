#include "arbx/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace arbx {

namespace {

struct Tableau {
  // rows x cols coefficient matrix, right-hand side, objective row.
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<double> obj;
  double obj_rhs = 0.0;
  std::vector<int> basis;       // basic variable per row
  std::vector<char> banned;     // columns excluded from entering (artificials)
  int cols = 0;

  void pivot(int row, int col) {
    double inv = 1.0 / a[row][col];
    for (double& v : a[row]) v *= inv;
    b[row] *= inv;
    a[row][col] = 1.0;
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
      if (i == row) continue;
      double f = a[i][col];
      if (std::fabs(f) < 1e-12) {
        a[i][col] = 0.0;
        continue;
      }
      for (int j = 0; j < cols; ++j) a[i][j] -= f * a[row][j];
      a[i][col] = 0.0;
      b[i] -= f * b[row];
    }
    double f = obj[col];
    if (std::fabs(f) >= 1e-12) {
      for (int j = 0; j < cols; ++j) obj[j] -= f * a[row][j];
      obj_rhs -= f * b[row];
    }
    obj[col] = 0.0;
    basis[row] = col;
  }
};

enum class IterateOutcome { Optimal, Unbounded, IterationLimit };

IterateOutcome iterate(Tableau& t, const SimplexOptions& opt, long long& iterations) {
  const int m = static_cast<int>(t.a.size());
  int degenerate_streak = 0;
  for (;;) {
    if (iterations >= opt.max_iterations) return IterateOutcome::IterationLimit;
    bool bland = degenerate_streak > opt.bland_after;

    int enter = -1;
    double best = -opt.pivot_tol;
    for (int j = 0; j < t.cols; ++j) {
      if (t.banned[j]) continue;
      double rc = t.obj[j];
      if (rc < -opt.pivot_tol) {
        if (bland) {
          enter = j;
          break;
        }
        if (rc < best) {
          best = rc;
          enter = j;
        }
      }
    }
    if (enter < 0) return IterateOutcome::Optimal;

    // Pivots below this size amplify roundoff; rows are max-norm scaled.
    // Tiny positive entries only qualify when nothing larger is available.
    constexpr double kRatioTol = 1e-7;
    int leave = -1;
    double best_ratio = 0.0;
    for (double threshold : {kRatioTol, opt.pivot_tol}) {
      for (int i = 0; i < m; ++i) {
        double coef = t.a[i][enter];
        if (coef <= threshold) continue;
        double ratio = t.b[i] / coef;
        if (leave < 0 || ratio < best_ratio - opt.pivot_tol ||
            (ratio < best_ratio + opt.pivot_tol && t.basis[i] < t.basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave >= 0) break;
    }
    if (leave < 0) return IterateOutcome::Unbounded;

    degenerate_streak = best_ratio <= opt.pivot_tol ? degenerate_streak + 1 : 0;
    t.pivot(leave, enter);
    ++iterations;
  }
}

}  // namespace

LpSolution solve_lp(const LinearModel& model, const SimplexOptions& opt) {
  const int n = static_cast<int>(model.variables().size());
  LpSolution sol;
  sol.values.assign(n, 0.0);

  // Shift variables to x' = x - lb >= 0; finite upper bounds become rows.
  std::vector<double> lb(n), range(n);
  for (int j = 0; j < n; ++j) {
    const auto& v = model.variables()[j];
    lb[j] = v.lb;
    range[j] = v.ub - v.lb;
    if (range[j] < 0) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
  }

  struct Row {
    std::vector<double> coef;
    Sense sense;
    double rhs;
  };
  std::vector<Row> rows;
  rows.reserve(model.constraints().size() + n);
  // In shifted space the rhs loses the lb contribution of every term.
  for (const auto& con : model.constraints()) {
    Row row{std::vector<double>(n, 0.0), con.sense, con.rhs};
    for (auto [var, coeff] : con.terms) {
      row.coef[var] += coeff;
      row.rhs -= coeff * lb[var];
    }
    rows.push_back(std::move(row));
  }
  // An equality with non-negative coefficients and rhs within the bound makes
  // the explicit upper-bound row redundant (every variable is non-negative).
  // In-degree rows cap all their arc variables this way.
  std::vector<char> ub_implied(n, 0);
  for (const auto& con : model.constraints()) {
    if (con.sense != Sense::EQ || con.rhs < 0.0) continue;
    bool all_nonneg = true;
    for (auto [var, coeff] : con.terms) {
      if (coeff < 0.0 || model.variables()[var].lb < 0.0) {
        all_nonneg = false;
        break;
      }
    }
    if (!all_nonneg) continue;
    for (auto [var, coeff] : con.terms) {
      if (coeff >= 1.0 && con.rhs <= model.variables()[var].ub) ub_implied[var] = 1;
    }
  }
  for (int j = 0; j < n; ++j) {
    if (std::isfinite(range[j]) && !ub_implied[j]) {
      Row row{std::vector<double>(n, 0.0), Sense::LE, range[j]};
      row.coef[j] = 1.0;
      rows.push_back(std::move(row));
    }
  }

  const int m = static_cast<int>(rows.size());
  // Max-norm row scaling keeps big-M rows from dominating the pivoting.
  for (auto& row : rows) {
    double mx = 0.0;
    for (double c : row.coef) mx = std::max(mx, std::fabs(c));
    if (mx > 1.0) {
      double inv = 1.0 / mx;
      for (double& c : row.coef) c *= inv;
      row.rhs *= inv;
    }
  }
  // Normalize to b >= 0.
  for (auto& row : rows) {
    if (row.rhs < 0.0) {
      for (double& c : row.coef) c = -c;
      row.rhs = -row.rhs;
      if (row.sense == Sense::LE) row.sense = Sense::GE;
      else if (row.sense == Sense::GE) row.sense = Sense::LE;
    }
  }

  int n_slack = 0, n_art = 0;
  for (const auto& row : rows) {
    if (row.sense != Sense::EQ) ++n_slack;
    if (row.sense != Sense::LE) ++n_art;
  }

  Tableau t;
  t.cols = n + n_slack + n_art;
  if (static_cast<long long>(m) * t.cols > 40'000'000) {
    throw DomainError("model too large for the dense simplex (" + std::to_string(m) + " rows x " +
                      std::to_string(t.cols) + " columns); export it instead");
  }
  t.a.assign(m, std::vector<double>(t.cols, 0.0));
  t.b.assign(m, 0.0);
  t.basis.assign(m, -1);
  t.banned.assign(t.cols, 0);
  t.obj.assign(t.cols, 0.0);

  int slack_at = n;
  int art_at = n + n_slack;
  std::vector<int> art_cols;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t.a[i][j] = rows[i].coef[j];
    t.b[i] = rows[i].rhs;
    if (rows[i].sense == Sense::LE) {
      t.a[i][slack_at] = 1.0;
      t.basis[i] = slack_at++;
    } else if (rows[i].sense == Sense::GE) {
      t.a[i][slack_at++] = -1.0;
      t.a[i][art_at] = 1.0;
      t.basis[i] = art_at;
      art_cols.push_back(art_at++);
    } else {
      t.a[i][art_at] = 1.0;
      t.basis[i] = art_at;
      art_cols.push_back(art_at++);
    }
  }

  long long iterations = 0;

  // Phase 1: minimize the artificial sum.
  if (n_art > 0) {
    for (int c : art_cols) t.obj[c] = 1.0;
    t.obj_rhs = 0.0;
    for (int i = 0; i < m; ++i) {
      if (t.basis[i] >= n + n_slack) {
        for (int j = 0; j < t.cols; ++j) t.obj[j] -= t.a[i][j];
        t.obj_rhs -= t.b[i];
      }
    }
    IterateOutcome out = iterate(t, opt, iterations);
    sol.iterations = iterations;
    if (out == IterateOutcome::IterationLimit) {
      sol.status = LpStatus::IterationLimit;
      return sol;
    }
    double infeas = -t.obj_rhs;
    if (infeas > 1e-6) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    // Pivot artificials out of the basis where possible; ban their columns.
    for (int i = 0; i < m; ++i) {
      if (t.basis[i] < n + n_slack) continue;
      int col = -1;
      for (int j = 0; j < n + n_slack; ++j) {
        if (std::fabs(t.a[i][j]) > opt.pivot_tol) {
          col = j;
          break;
        }
      }
      if (col >= 0) t.pivot(i, col);
      // else: redundant row; the artificial stays basic at value 0.
    }
    for (int c : art_cols) t.banned[c] = 1;
    for (int i = 0; i < m; ++i) {
      if (t.b[i] < 0.0 && t.b[i] > -1e-9) t.b[i] = 0.0;  // phase-1 roundoff
    }
  }

  // Phase 2: minimize the real objective.
  std::fill(t.obj.begin(), t.obj.end(), 0.0);
  t.obj_rhs = 0.0;
  for (int j = 0; j < n; ++j) t.obj[j] = model.objective()[j];
  for (int i = 0; i < m; ++i) {
    int bj = t.basis[i];
    double cb = bj < n ? model.objective()[bj] : 0.0;
    if (cb != 0.0) {
      for (int j = 0; j < t.cols; ++j) t.obj[j] -= cb * t.a[i][j];
      t.obj_rhs -= cb * t.b[i];
    }
  }
  IterateOutcome out = iterate(t, opt, iterations);
  sol.iterations = iterations;
  if (out == IterateOutcome::IterationLimit) {
    sol.status = LpStatus::IterationLimit;
    for (int i = 0; i < m; ++i) {
      if (t.basis[i] < n) sol.values[t.basis[i]] = t.b[i] + lb[t.basis[i]];
    }
    return sol;
  }
  if (out == IterateOutcome::Unbounded) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  for (int j = 0; j < n; ++j) sol.values[j] = lb[j];
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < n) sol.values[t.basis[i]] = t.b[i] + lb[t.basis[i]];
  }
  double value = 0.0;
  for (int j = 0; j < n; ++j) value += model.objective()[j] * sol.values[j];
  sol.objective = value;
  sol.status = LpStatus::Optimal;

  // An optimal solution must satisfy every row within tolerance.
  for (const auto& con : model.constraints()) {
    double activity = 0.0, scale = std::max(1.0, std::fabs(con.rhs));
    for (auto [var, coeff] : con.terms) {
      activity += coeff * sol.values[var];
      scale = std::max(scale, std::fabs(coeff * sol.values[var]));
    }
    double slack = con.rhs - activity;
    bool ok = con.sense == Sense::LE   ? slack >= -opt.feas_tol * scale
              : con.sense == Sense::GE ? slack <= opt.feas_tol * scale
                                       : std::fabs(slack) <= opt.feas_tol * scale;
    if (!ok) {
      throw std::logic_error("simplex returned an infeasible point at row '" + con.name + "'");
    }
  }
  return sol;
}

}  // namespace arbx
