#include "simplex_mle/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "simplex_mle/types.hpp"

namespace simplex_mle {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kPhase1Tol = 1e-8;
constexpr int kMaxPivots = 20000;

struct Tableau {
  std::size_t m = 0, cols = 0;
  std::vector<std::vector<double>> t;  // m x (cols + 1), last column is rhs
  std::vector<std::size_t> basis;      // basis variable per row
  std::vector<bool> enterable;

  double& rhs(std::size_t i) { return t[i][cols]; }
};

// reduced costs r_j = g_j - g_B' T_j for the minimization cost g
void reduced_costs(const Tableau& tab, const std::vector<double>& g, std::vector<double>& r,
                   double& objective) {
  r.assign(tab.cols, 0.0);
  objective = 0.0;
  for (std::size_t j = 0; j < tab.cols; ++j) r[j] = g[j];
  for (std::size_t i = 0; i < tab.m; ++i) {
    double gb = g[tab.basis[i]];
    if (gb == 0.0) continue;
    objective += gb * tab.t[i][tab.cols];
    for (std::size_t j = 0; j < tab.cols; ++j) r[j] -= gb * tab.t[i][j];
  }
}

void pivot(Tableau& tab, std::size_t row, std::size_t col) {
  double inv = 1.0 / tab.t[row][col];
  for (std::size_t j = 0; j <= tab.cols; ++j) tab.t[row][j] *= inv;
  tab.t[row][col] = 1.0;
  for (std::size_t i = 0; i < tab.m; ++i) {
    if (i == row) continue;
    double f = tab.t[i][col];
    if (f == 0.0) continue;
    for (std::size_t j = 0; j <= tab.cols; ++j) tab.t[i][j] -= f * tab.t[row][j];
    tab.t[i][col] = 0.0;
  }
  tab.basis[row] = col;
}

// Bland's rule: smallest improving column; leaving row by minimum ratio,
// ties broken by the smallest basis variable index.
enum class IterateOutcome { Optimal, Unbounded };

IterateOutcome iterate(Tableau& tab, const std::vector<double>& g) {
  std::vector<double> r;
  double obj;
  for (int k = 0; k < kMaxPivots; ++k) {
    reduced_costs(tab, g, r, obj);
    std::size_t enter = tab.cols;
    for (std::size_t j = 0; j < tab.cols; ++j) {
      if (!tab.enterable[j]) continue;
      if (r[j] < -tol::kLPCost) {
        enter = j;
        break;
      }
    }
    if (enter == tab.cols) return IterateOutcome::Optimal;

    std::size_t leave = tab.m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < tab.m; ++i) {
      double a = tab.t[i][enter];
      if (a <= kPivotTol) continue;
      double ratio = std::max(tab.t[i][tab.cols], 0.0) / a;
      if (ratio < best_ratio - 1e-15 ||
          (ratio <= best_ratio + 1e-15 && (leave == tab.m || tab.basis[i] < tab.basis[leave]))) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave == tab.m) return IterateOutcome::Unbounded;
    pivot(tab, leave, enter);
  }
  throw SolverError("simplex method exceeded the pivot limit");
}

}  // namespace

LPResult lp_solve(const std::vector<double>& objective, const std::vector<LPConstraint>& rows,
                  std::size_t num_vars, bool maximize) {
  if (objective.size() != num_vars)
    throw ValidationError("lp_solve: objective length does not match num_vars");
  for (const auto& row : rows)
    if (row.a.size() != num_vars)
      throw ValidationError("lp_solve: constraint length does not match num_vars");

  const std::size_t m = rows.size();

  // normalize rhs >= 0 and count auxiliary columns
  std::vector<double> sign(m, 1.0);
  std::size_t num_slack = 0, num_art = 0;
  std::vector<Rel> rel(m);
  for (std::size_t i = 0; i < m; ++i) {
    rel[i] = rows[i].rel;
    if (rows[i].rhs < 0.0) {
      sign[i] = -1.0;
      if (rel[i] == Rel::Le)
        rel[i] = Rel::Ge;
      else if (rel[i] == Rel::Ge)
        rel[i] = Rel::Le;
    }
    if (rel[i] != Rel::Eq) ++num_slack;
    if (rel[i] != Rel::Le) ++num_art;
  }

  Tableau tab;
  tab.m = m;
  tab.cols = num_vars + num_slack + num_art;
  tab.t.assign(m, std::vector<double>(tab.cols + 1, 0.0));
  tab.basis.assign(m, 0);
  tab.enterable.assign(tab.cols, true);

  std::size_t next_slack = num_vars;
  std::size_t next_art = num_vars + num_slack;
  std::vector<std::size_t> art_cols;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < num_vars; ++j) tab.t[i][j] = sign[i] * rows[i].a[j];
    tab.t[i][tab.cols] = sign[i] * rows[i].rhs;
    if (rel[i] == Rel::Le) {
      tab.t[i][next_slack] = 1.0;
      tab.basis[i] = next_slack++;
    } else if (rel[i] == Rel::Ge) {
      tab.t[i][next_slack] = -1.0;
      ++next_slack;
      tab.t[i][next_art] = 1.0;
      art_cols.push_back(next_art);
      tab.basis[i] = next_art++;
    } else {
      tab.t[i][next_art] = 1.0;
      art_cols.push_back(next_art);
      tab.basis[i] = next_art++;
    }
  }

  if (!art_cols.empty()) {
    std::vector<double> g1(tab.cols, 0.0);
    for (std::size_t j : art_cols) g1[j] = 1.0;
    iterate(tab, g1);  // phase 1 cannot be unbounded
    std::vector<double> r;
    double infeas;
    reduced_costs(tab, g1, r, infeas);
    if (infeas > kPhase1Tol) return LPResult{LPStatus::Infeasible, 0.0, {}};
    for (std::size_t j : art_cols) tab.enterable[j] = false;
    // drive basic artificials out with degenerate pivots so later pivots
    // cannot lift them above zero; all-zero rows are redundant and inert
    const std::size_t first_art = num_vars + num_slack;
    for (std::size_t i = 0; i < m; ++i) {
      if (tab.basis[i] < first_art) continue;
      for (std::size_t j = 0; j < first_art; ++j) {
        if (std::abs(tab.t[i][j]) > kPivotTol) {
          pivot(tab, i, j);
          break;
        }
      }
    }
  }

  std::vector<double> g(tab.cols, 0.0);
  for (std::size_t j = 0; j < num_vars; ++j) g[j] = maximize ? -objective[j] : objective[j];
  if (iterate(tab, g) == IterateOutcome::Unbounded)
    return LPResult{LPStatus::Unbounded, 0.0, {}};

  LPResult result;
  result.status = LPStatus::Optimal;
  result.x.assign(num_vars, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (tab.basis[i] < num_vars) result.x[tab.basis[i]] = std::max(tab.t[i][tab.cols], 0.0);
  result.value = 0.0;
  for (std::size_t j = 0; j < num_vars; ++j) result.value += objective[j] * result.x[j];
  return result;
}

}  // namespace simplex_mle
