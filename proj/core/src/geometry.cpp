#include "simplex_mle/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "simplex_mle/likelihood.hpp"
#include "simplex_mle/lp.hpp"

namespace simplex_mle {

namespace {

// q in C: the simplex row plus every homogenized constraint row
std::vector<LPConstraint> feasibility_rows(const ConstraintModel& model) {
  const std::size_t m = model.letters();
  std::vector<LPConstraint> rows;
  rows.reserve(model.row_count() + 1);
  rows.push_back({std::vector<double>(m, 1.0), Rel::Eq, 1.0});
  for (std::size_t h = 0; h < model.row_count(); ++h) {
    rows.push_back({model.homogeneous()[h],
                    model.rows[h].kind == RowKind::Equality ? Rel::Eq : Rel::Le, 0.0});
  }
  return rows;
}

// the same system restricted to q^p = 0, in the active coordinates
std::vector<LPConstraint> active_rows(const ConstraintModel& model,
                                      const std::vector<std::size_t>& active) {
  std::vector<LPConstraint> rows;
  rows.reserve(model.row_count() + 1);
  rows.push_back({std::vector<double>(active.size(), 1.0), Rel::Eq, 1.0});
  for (std::size_t h = 0; h < model.row_count(); ++h) {
    LPConstraint c;
    c.a.resize(active.size());
    for (std::size_t k = 0; k < active.size(); ++k) c.a[k] = model.homogeneous()[h][active[k]];
    c.rel = model.rows[h].kind == RowKind::Equality ? Rel::Eq : Rel::Le;
    c.rhs = 0.0;
    rows.push_back(std::move(c));
  }
  return rows;
}

// passive completions of a fixed active part
std::vector<LPConstraint> slice_rows(const ConstraintModel& model,
                                     const ActivePassiveSplit& split,
                                     const std::vector<double>& q_active) {
  const auto& passive = split.passive;
  std::vector<LPConstraint> rows;
  double active_mass = 0.0;
  for (double v : q_active) active_mass += v;
  rows.push_back({std::vector<double>(passive.size(), 1.0), Rel::Eq, 1.0 - active_mass});
  for (std::size_t h = 0; h < model.row_count(); ++h) {
    const auto& w = model.homogeneous()[h];
    LPConstraint c;
    c.a.resize(passive.size());
    for (std::size_t k = 0; k < passive.size(); ++k) c.a[k] = w[passive[k]];
    double fixed = 0.0;
    for (std::size_t k = 0; k < split.active.size(); ++k) fixed += q_active[k] * w[split.active[k]];
    c.rel = model.rows[h].kind == RowKind::Equality ? Rel::Eq : Rel::Le;
    c.rhs = -fixed;
    rows.push_back(std::move(c));
  }
  return rows;
}

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void axpy(double a, const std::vector<double>& x, std::vector<double>& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Affine hull of an LP-described polytope in R^d: repeatedly probe the
// width along directions orthogonal to the hull found so far; a positive
// width yields a new spanning direction from the two extreme points.
using DirectionalSolve = std::function<std::vector<double>(const std::vector<double>& dir,
                                                           bool maximize)>;

std::vector<std::vector<double>> affine_hull_directions(std::size_t d,
                                                        const DirectionalSolve& solve) {
  std::vector<std::vector<double>> dirs;
  bool changed = true;
  while (changed && dirs.size() < d) {
    changed = false;
    for (std::size_t k = 0; k < d; ++k) {
      std::vector<double> w(d, 0.0);
      w[k] = 1.0;
      for (const auto& u : dirs) axpy(-dot(w, u), u, w);
      double nw = norm(w);
      if (nw < 1e-10) continue;
      for (double& x : w) x /= nw;
      auto hi = solve(w, true);
      auto lo = solve(w, false);
      double width = dot(w, hi) - dot(w, lo);
      if (width <= 1e-9) continue;
      std::vector<double> fresh(d);
      for (std::size_t i = 0; i < d; ++i) fresh[i] = hi[i] - lo[i];
      for (const auto& u : dirs) axpy(-dot(fresh, u), u, fresh);
      double nf = norm(fresh);
      if (nf < 1e-12) continue;
      for (double& x : fresh) x /= nf;
      dirs.push_back(std::move(fresh));
      changed = true;
    }
  }
  return dirs;
}

}  // namespace

SupportCheck support_check(const ConstraintModel& model) {
  const std::size_t m = model.letters();
  // variables (q, t); maximize t subject to q in C and q_i - t >= 0
  auto rows = feasibility_rows(model);
  for (auto& c : rows) c.a.push_back(0.0);
  for (std::size_t i = 0; i < m; ++i) {
    LPConstraint c;
    c.a.assign(m + 1, 0.0);
    c.a[i] = 1.0;
    c.a[m] = -1.0;
    c.rel = Rel::Ge;
    c.rhs = 0.0;
    rows.push_back(std::move(c));
  }
  std::vector<double> objective(m + 1, 0.0);
  objective[m] = 1.0;
  auto lp = lp_solve(objective, rows, m + 1);
  if (lp.status == LPStatus::Infeasible)
    throw ValidationError("feasible set is empty");
  if (lp.status != LPStatus::Optimal) throw SolverError("support check LP is unbounded");
  SupportCheck check;
  check.t_star = lp.value;
  check.witness.assign(lp.x.begin(), lp.x.begin() + m);
  return check;
}

Classification classify(const ConstraintModel& model, const TypeVector& nu) {
  if (nu.size() != model.letters())
    throw ValidationError("classify: type length does not match the alphabet");
  auto split = active_passive_split(nu);
  const std::size_t ma = split.active.size();

  auto base_rows = active_rows(model, split.active);
  auto feasible = lp_solve(std::vector<double>(ma, 0.0), base_rows, ma);
  Classification result;
  if (feasible.status == LPStatus::Infeasible) {
    result.verdict = Verdict::HSet;
    return result;
  }

  // widest support point of the restricted set
  auto rows = base_rows;
  for (auto& c : rows) c.a.push_back(0.0);
  for (std::size_t k = 0; k < ma; ++k) {
    LPConstraint c;
    c.a.assign(ma + 1, 0.0);
    c.a[k] = 1.0;
    c.a[ma] = -1.0;
    c.rel = Rel::Ge;
    c.rhs = 0.0;
    rows.push_back(std::move(c));
  }
  std::vector<double> objective(ma + 1, 0.0);
  objective[ma] = 1.0;
  auto lp = lp_solve(objective, rows, ma + 1);
  if (lp.status != LPStatus::Optimal) throw SolverError("classification LP failed");

  if (lp.value > tol::kZeroSupport) {
    result.verdict = Verdict::Regular;
    std::vector<double> witness(model.letters(), 0.0);
    for (std::size_t k = 0; k < ma; ++k) witness[split.active[k]] = lp.x[k];
    result.witness = std::move(witness);
    return result;
  }

  result.verdict = Verdict::ZSet;
  for (std::size_t k = 0; k < ma; ++k) {
    std::vector<double> coord(ma, 0.0);
    coord[k] = 1.0;
    auto probe = lp_solve(coord, base_rows, ma);
    if (probe.status != LPStatus::Optimal) throw SolverError("classification probe LP failed");
    if (probe.value <= tol::kZeroSupport) result.forced_zero.push_back(split.active[k]);
  }
  return result;
}

bool polar_cone_membership(const ConstraintModel& model, const std::vector<double>& y,
                           double tolerance) {
  if (y.size() != model.letters())
    throw ValidationError("polar_cone_membership: vector length does not match the alphabet");
  auto lp = lp_solve(y, feasibility_rows(model), model.letters());
  if (lp.status == LPStatus::Infeasible) throw ValidationError("feasible set is empty");
  if (lp.status != LPStatus::Optimal) throw SolverError("polar cone LP is unbounded");
  return lp.value <= tolerance;
}

SliceDescription slice_passive(const ConstraintModel& model, const TypeVector& nu,
                               const std::vector<double>& q_active,
                               const std::optional<std::vector<double>>& pp_representative) {
  auto split = active_passive_split(nu);
  if (q_active.size() != split.active.size())
    throw ValidationError("slice_passive: active part has the wrong length");
  double mass = 0.0;
  for (double v : q_active) {
    if (!(v > 0.0)) throw ValidationError("slice_passive: active part must be positive");
    mass += v;
  }
  if (mass > 1.0 + tol::kSolutionSum)
    throw ValidationError("slice_passive: active part exceeds unit mass");

  const std::size_t mp = split.passive.size();
  SliceDescription desc;

  auto assemble = [&](const std::vector<double>& passive_part) {
    std::vector<double> full(model.letters(), 0.0);
    for (std::size_t k = 0; k < split.active.size(); ++k) full[split.active[k]] = q_active[k];
    for (std::size_t k = 0; k < mp; ++k) full[split.passive[k]] = std::max(passive_part[k], 0.0);
    return full;
  };

  if (mp == 0) {
    if (std::abs(mass - 1.0) > tol::kSolutionSum)
      throw ValidationError("slice_passive: no passive letters but active mass below one");
    desc.representative = assemble({});
    desc.is_singleton = true;
    desc.free_dimension = 0;
    return desc;
  }

  auto rows = slice_rows(model, split, q_active);
  auto probe = lp_solve(std::vector<double>(mp, 0.0), rows, mp);
  if (probe.status == LPStatus::Infeasible)
    throw ValidationError("slice_passive: the active part has no feasible completion");
  if (probe.status != LPStatus::Optimal) throw SolverError("slice LP failed");

  bool singleton = true;
  std::vector<double> vertex = probe.x;
  for (std::size_t k = 0; k < mp && singleton; ++k) {
    std::vector<double> coord(mp, 0.0);
    coord[k] = 1.0;
    auto hi = lp_solve(coord, rows, mp, true);
    auto lo = lp_solve(coord, rows, mp, false);
    if (hi.status != LPStatus::Optimal || lo.status != LPStatus::Optimal)
      throw SolverError("slice LP failed");
    if (hi.value - lo.value > 1e-9) singleton = false;
    vertex = hi.x;
  }
  desc.is_singleton = singleton;

  if (singleton) {
    desc.free_dimension = 0;
    desc.representative = assemble(vertex);
    return desc;
  }

  DirectionalSolve solve = [&](const std::vector<double>& dir, bool maximize) {
    auto lp = lp_solve(dir, rows, mp, maximize);
    if (lp.status != LPStatus::Optimal) throw SolverError("slice LP failed");
    return lp.x;
  };
  desc.free_dimension = affine_hull_directions(mp, solve).size();

  if (pp_representative) {
    if (pp_representative->size() != model.letters())
      throw ValidationError("slice_passive: representative has the wrong length");
    desc.representative = *pp_representative;
  } else {
    desc.representative = assemble(probe.x);
  }
  return desc;
}

PassiveBox passive_projection_box(const ConstraintModel& model, const ActivePassiveSplit& split) {
  const std::size_t m = model.letters();
  auto rows = feasibility_rows(model);
  PassiveBox box;
  box.lower.resize(split.passive.size());
  box.upper.resize(split.passive.size());
  for (std::size_t k = 0; k < split.passive.size(); ++k) {
    std::vector<double> coord(m, 0.0);
    coord[split.passive[k]] = 1.0;
    auto hi = lp_solve(coord, rows, m, true);
    auto lo = lp_solve(coord, rows, m, false);
    if (hi.status != LPStatus::Optimal || lo.status != LPStatus::Optimal)
      throw SolverError("passive projection LP failed");
    box.upper[k] = hi.value;
    box.lower[k] = lo.value;
  }
  return box;
}

AffineHull passive_projection_hull(const ConstraintModel& model,
                                   const ActivePassiveSplit& split) {
  const std::size_t m = model.letters();
  const std::size_t mp = split.passive.size();
  auto rows = feasibility_rows(model);

  AffineHull hull;
  auto witness = support_check(model).witness;
  hull.base.resize(mp);
  for (std::size_t k = 0; k < mp; ++k) hull.base[k] = witness[split.passive[k]];
  if (mp == 0) return hull;

  DirectionalSolve solve = [&](const std::vector<double>& dir, bool maximize) {
    std::vector<double> full(m, 0.0);
    for (std::size_t k = 0; k < mp; ++k) full[split.passive[k]] = dir[k];
    auto lp = lp_solve(full, rows, m, maximize);
    if (lp.status != LPStatus::Optimal) throw SolverError("passive projection LP failed");
    std::vector<double> p(mp);
    for (std::size_t k = 0; k < mp; ++k) p[k] = lp.x[split.passive[k]];
    return p;
  };
  hull.directions = affine_hull_directions(mp, solve);
  return hull;
}

}  // namespace simplex_mle
