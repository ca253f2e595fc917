#include "simplex_mle/duals.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "simplex_mle/conjugate.hpp"
#include "simplex_mle/likelihood.hpp"
#include "simplex_mle/lp.hpp"
#include "simplex_mle/pp.hpp"

namespace simplex_mle {

namespace {

constexpr double kDomainFraction = 0.995;
constexpr double kArmijo = 1e-4;

// compensated sum; the 1 + <alpha, u_i> terms cancel to O(delta) near the
// domain boundary and plain summation would lose the gradient there
double neumaier(const double* terms, std::size_t n) {
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double t = terms[i];
    double s = sum + t;
    if (std::abs(sum) >= std::abs(t))
      comp += (sum - s) + t;
    else
      comp += (t - s) + sum;
    sum = s;
  }
  return sum + comp;
}

struct SmithProblem {
  std::vector<double> nu_a;                 // active weights
  std::vector<std::vector<double>> u_a;     // r rows, active coordinates
  std::vector<bool> sign_constrained;       // alpha_h >= 0 on inequality rows
  double log_nu = 0.0;                      // sum nu log nu

  std::size_t r() const { return u_a.size(); }
  std::size_t ma() const { return nu_a.size(); }

  // s_i = 1 + sum_h alpha_h u_a[h][i]; false when outside the domain
  bool scales(const std::vector<double>& alpha, std::vector<double>& s) const {
    std::vector<double> terms(r() + 1);
    s.resize(ma());
    for (std::size_t i = 0; i < ma(); ++i) {
      terms[0] = 1.0;
      for (std::size_t h = 0; h < r(); ++h) terms[h + 1] = alpha[h] * u_a[h][i];
      s[i] = neumaier(terms.data(), terms.size());
      if (!(s[i] > 0.0)) return false;
    }
    return true;
  }

  double objective(const std::vector<double>& s) const {
    double f = 0.0;
    for (std::size_t i = 0; i < ma(); ++i) f -= nu_a[i] * std::log(s[i]);
    return f;
  }

  void gradient(const std::vector<double>& s, std::vector<double>& g) const {
    g.assign(r(), 0.0);
    std::vector<double> terms(ma());
    for (std::size_t h = 0; h < r(); ++h) {
      for (std::size_t i = 0; i < ma(); ++i) terms[i] = -nu_a[i] * u_a[h][i] / s[i];
      g[h] = neumaier(terms.data(), terms.size());
    }
  }
};

SmithProblem build_problem(const ConstraintModel& model, const TypeVector& nu,
                           const ActivePassiveSplit& split) {
  SmithProblem p;
  p.nu_a.reserve(split.active.size());
  for (std::size_t i : split.active) p.nu_a.push_back(nu.nu[i]);
  p.u_a.resize(model.row_count());
  p.sign_constrained.resize(model.row_count());
  for (std::size_t h = 0; h < model.row_count(); ++h) {
    p.u_a[h].resize(split.active.size());
    for (std::size_t k = 0; k < split.active.size(); ++k)
      p.u_a[h][k] = model.homogeneous()[h][split.active[k]];
    p.sign_constrained[h] = model.rows[h].kind == RowKind::Inequality;
  }
  for (double w : p.nu_a) p.log_nu += w * std::log(w);
  return p;
}

// keep a warm start inside the domain and the sign constraints
std::vector<double> initial_alpha(const SmithProblem& p, const SmithOptions& options) {
  std::vector<double> alpha(p.r(), 0.0);
  if (options.warm_alpha && options.warm_alpha->size() == p.r()) {
    alpha = *options.warm_alpha;
    for (std::size_t h = 0; h < p.r(); ++h)
      if (p.sign_constrained[h]) alpha[h] = std::max(alpha[h], 0.0);
    std::vector<double> s;
    double shrink = 1.0;
    for (int k = 0; k < 60 && !p.scales(alpha, s); ++k) {
      shrink *= 0.5;
      for (std::size_t h = 0; h < p.r(); ++h) {
        alpha[h] = (*options.warm_alpha)[h] * shrink;
        if (p.sign_constrained[h]) alpha[h] = std::max(alpha[h], 0.0);
      }
    }
    std::vector<double> probe;
    if (!p.scales(alpha, probe)) alpha.assign(p.r(), 0.0);
  }
  return alpha;
}

// minimum-norm representation of y^a when the active row parts are
// linearly dependent; the objective only sees y^a, so alpha is otherwise
// arbitrary up to the kernel
void minimum_norm_alpha(const SmithProblem& p, std::vector<double>& alpha,
                        const std::vector<double>& y_active) {
  const std::size_t r = p.r(), ma = p.ma();
  if (r < 2) return;
  Eigen::MatrixXd A(ma, r);
  for (std::size_t h = 0; h < r; ++h)
    for (std::size_t i = 0; i < ma; ++i) A(i, h) = p.u_a[h][i];
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
  if (static_cast<std::size_t>(cod.rank()) >= r) return;
  Eigen::VectorXd y(ma);
  for (std::size_t i = 0; i < ma; ++i) y(i) = y_active[i];
  Eigen::VectorXd candidate = cod.solve(y);
  if ((A * candidate - y).cwiseAbs().maxCoeff() > 1e-10) return;
  for (std::size_t h = 0; h < r; ++h) {
    if (p.sign_constrained[h] && candidate(h) < -1e-10) return;
  }
  for (std::size_t h = 0; h < r; ++h)
    alpha[h] = p.sign_constrained[h] ? std::max(candidate(h), 0.0) : candidate(h);
}

DualSolution finish(const SmithProblem& p, std::vector<double> alpha) {
  DualSolution solution;
  minimum_norm_alpha(p, alpha, [&] {
    std::vector<double> s;
    p.scales(alpha, s);
    std::vector<double> y(p.ma());
    for (std::size_t i = 0; i < p.ma(); ++i) y[i] = s[i] - 1.0;
    return y;
  }());
  std::vector<double> s;
  p.scales(alpha, s);
  solution.alpha = std::move(alpha);
  solution.y_active.resize(p.ma());
  for (std::size_t i = 0; i < p.ma(); ++i) solution.y_active[i] = s[i] - 1.0;
  solution.value = p.log_nu + p.objective(s);
  solution.status = DualStatus::Converged;
  return solution;
}

double inf_norm(const std::vector<double>& v) {
  double n = 0.0;
  for (double x : v) n = std::max(n, std::abs(x));
  return n;
}

}  // namespace

DualSolution smith_solve(const ConstraintModel& model, const TypeVector& nu,
                         const SmithOptions& options) {
  if (nu.size() != model.letters())
    throw ValidationError("smith_solve: type length does not match the alphabet");
  auto split = active_passive_split(nu);
  SmithProblem p = build_problem(model, nu, split);
  const std::size_t r = p.r();

  if (r == 0) return finish(p, {});

  std::vector<double> alpha = initial_alpha(p, options);
  std::vector<double> s, g, s_next;
  if (!p.scales(alpha, s)) throw SolverError("smith_solve: invalid starting point");

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    double f = p.objective(s);
    double value = p.log_nu + f;
    if (value < options.value_floor || inf_norm(alpha) > options.alpha_cap) {
      DualSolution divergent;
      divergent.alpha = alpha;
      divergent.y_active.resize(p.ma());
      for (std::size_t i = 0; i < p.ma(); ++i) divergent.y_active[i] = s[i] - 1.0;
      divergent.value = -std::numeric_limits<double>::infinity();
      divergent.status = DualStatus::Divergent;
      return divergent;
    }

    p.gradient(s, g);
    std::vector<bool> clamped(r, false);
    double pg_norm = 0.0;
    for (std::size_t h = 0; h < r; ++h) {
      bool at_bound = p.sign_constrained[h] && alpha[h] <= 0.0;
      if (at_bound && g[h] > 0.0) {
        clamped[h] = true;
        continue;
      }
      pg_norm = std::max(pg_norm, std::abs(g[h]));
    }
    // the gradient cannot drop below curvature * ulp(alpha): adjacent
    // representable coefficients already move it by that much (strongly
    // perturbed problems reach curvatures of order 1/delta)
    double max_curvature = 0.0;
    for (std::size_t h = 0; h < r; ++h) {
      double acc = 0.0;
      for (std::size_t i = 0; i < p.ma(); ++i) {
        double ratio = p.u_a[h][i] / s[i];
        acc += p.nu_a[i] * ratio * ratio;
      }
      max_curvature = std::max(max_curvature, acc);
    }
    double grad_floor =
        4.0 * max_curvature * std::numeric_limits<double>::epsilon() * (1.0 + inf_norm(alpha));
    // a genuine stationary point reconstructs onto the simplex; along a
    // recession ray the gradient also vanishes but the mass falls clearly
    // short. The attainable accuracy degrades with the curvature exactly
    // like the gradient floor; ray deficits are O(1) so the gap is wide.
    double mass_tol = std::clamp(100.0 * grad_floor, 1e-6, 1e-2);
    auto stationary_exit = [&]() -> DualSolution {
      double mass = 0.0;
      for (std::size_t i = 0; i < p.ma(); ++i) mass += p.nu_a[i] / s[i];
      if (std::abs(mass - 1.0) <= mass_tol) return finish(p, std::move(alpha));
      DualSolution divergent;
      divergent.alpha = alpha;
      divergent.y_active.resize(p.ma());
      for (std::size_t i = 0; i < p.ma(); ++i) divergent.y_active[i] = s[i] - 1.0;
      divergent.value = -std::numeric_limits<double>::infinity();
      divergent.status = DualStatus::Divergent;
      return divergent;
    };
    if (pg_norm <= std::max(options.grad_tol, grad_floor)) return stationary_exit();

    std::vector<std::size_t> free_idx;
    for (std::size_t h = 0; h < r; ++h)
      if (!clamped[h]) free_idx.push_back(h);
    const std::size_t nf = free_idx.size();

    Eigen::MatrixXd H(nf, nf);
    Eigen::VectorXd gf(nf);
    for (std::size_t a = 0; a < nf; ++a) {
      gf(a) = g[free_idx[a]];
      for (std::size_t b = a; b < nf; ++b) {
        double acc = 0.0;
        const auto& ua = p.u_a[free_idx[a]];
        const auto& ub = p.u_a[free_idx[b]];
        for (std::size_t i = 0; i < p.ma(); ++i)
          acc += p.nu_a[i] * ua[i] * ub[i] / (s[i] * s[i]);
        H(a, b) = acc;
        H(b, a) = acc;
      }
    }
    // rank-revealing min-norm solve: redundant rows make H singular along
    // the kernel of alpha -> y, and that component must stay at zero
    Eigen::VectorXd df = H.completeOrthogonalDecomposition().solve(-gf);

    std::vector<double> d(r, 0.0);
    for (std::size_t a = 0; a < nf; ++a) d[free_idx[a]] = df(a);
    double gd = 0.0;
    for (std::size_t h = 0; h < r; ++h) gd += g[h] * d[h];
    if (!(gd < 0.0)) {  // fall back to steepest descent on the free set
      for (std::size_t h = 0; h < r; ++h) d[h] = clamped[h] ? 0.0 : -g[h];
      gd = 0.0;
      for (std::size_t h = 0; h < r; ++h) gd += g[h] * d[h];
      if (!(gd < 0.0)) return stationary_exit();
    }

    // largest admissible step: stay strictly inside 1 + y^a > 0, allow
    // landing exactly on a sign bound
    double t = 1.0;
    for (std::size_t i = 0; i < p.ma(); ++i) {
      double ds = 0.0;
      for (std::size_t h = 0; h < r; ++h) ds += d[h] * p.u_a[h][i];
      if (ds < 0.0) t = std::min(t, kDomainFraction * (-s[i] / ds));
    }
    for (std::size_t h = 0; h < r; ++h)
      if (p.sign_constrained[h] && d[h] < 0.0 && alpha[h] > 0.0)
        t = std::min(t, alpha[h] / -d[h]);

    // near the optimum the true decrease drops below the floating-point
    // resolution of the objective; there the pure damped Newton step is
    // taken on the domain safeguard alone
    double step_scale = 0.0;
    for (std::size_t h = 0; h < r; ++h) step_scale = std::max(step_scale, std::abs(d[h]));
    bool quadratic_region = step_scale <= 1e-6 * (1.0 + inf_norm(alpha));

    bool accepted = false;
    std::vector<double> alpha_next(r);
    for (; t >= 1e-16; t *= 0.5) {
      for (std::size_t h = 0; h < r; ++h) {
        alpha_next[h] = alpha[h] + t * d[h];
        if (p.sign_constrained[h] && alpha_next[h] < 0.0) alpha_next[h] = 0.0;
      }
      if (!p.scales(alpha_next, s_next)) continue;
      if (quadratic_region || p.objective(s_next) <= f + kArmijo * t * gd) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (pg_norm <= std::max(1e-8, 10.0 * grad_floor)) return stationary_exit();
      throw SolverError("smith_solve: line search stalled away from stationarity");
    }
    alpha.swap(alpha_next);
    s.swap(s_next);
  }
  throw SolverError("smith_solve: iteration limit reached");
}

ProbabilityVector primal_from_dual(const ConstraintModel& model, const TypeVector& nu,
                                   const DualSolution& dual) {
  if (dual.status != DualStatus::Converged)
    throw ValidationError("primal_from_dual: the dual solution is divergent");
  auto split = active_passive_split(nu);
  if (dual.y_active.size() != split.active.size())
    throw ValidationError("primal_from_dual: dual dimension mismatch");
  std::vector<double> q(nu.size(), 0.0);
  double mass = 0.0;
  for (std::size_t k = 0; k < split.active.size(); ++k) {
    q[split.active[k]] = nu.nu[split.active[k]] / (1.0 + dual.y_active[k]);
    mass += q[split.active[k]];
  }
  if (std::abs(mass - 1.0) > 1e-6)
    throw SolverError("primal_from_dual: reconstructed mass is off the simplex");
  for (double& v : q) v /= mass;
  ProbabilityVector result(std::move(q));
  auto res = residuals(model, result);
  for (double v : res)
    if (v > 1e-8)
      throw SolverError("primal_from_dual: reconstructed point violates the feasible set");
  return result;
}

GapDiagnosis diagnose_gap(const ConstraintModel& model, const TypeVector& nu,
                          const DualSolution& dual) {
  if (dual.status != DualStatus::Converged)
    throw ValidationError("diagnose_gap: the dual solution is divergent");
  auto split = active_passive_split(nu);

  GapDiagnosis diagnosis;
  diagnosis.q_bd = primal_from_dual(model, nu, dual);

  // (iv): does (y^a, -1^p) stay in the polar cone?
  std::vector<double> probe(nu.size(), -1.0);
  for (std::size_t k = 0; k < split.active.size(); ++k)
    probe[split.active[k]] = dual.y_active[k];
  diagnosis.condition_iv = polar_cone_membership(model, probe, 1e-8);
  diagnosis.gap_present = !diagnosis.condition_iv;

  // (iii) at the base solution sum alpha_h u_h, a genuine member of the
  // dual solution set: zero exactly when the dual value matches the primal
  std::vector<double> y_base(nu.size(), 0.0);
  for (std::size_t h = 0; h < model.row_count(); ++h)
    for (std::size_t i = 0; i < nu.size(); ++i)
      y_base[i] += dual.alpha[h] * model.homogeneous()[h][i];
  std::vector<double> z(nu.size());
  for (std::size_t i = 0; i < nu.size(); ++i) z[i] = -y_base[i];
  double ell = kerridge_inaccuracy(nu, diagnosis.q_bd).get();
  diagnosis.extremality_residual = ell + conjugate(nu, z).value;
  return diagnosis;
}

SingleInequalityResult fenchel_single_inequality(const ConstraintModel& model,
                                                 const TypeVector& nu) {
  if (model.row_count() != 1 || model.rows[0].kind != RowKind::Inequality)
    throw ValidationError("fenchel_single_inequality: model must have exactly one inequality row");
  if (nu.size() != model.letters())
    throw ValidationError("fenchel_single_inequality: type length does not match the alphabet");
  auto split = active_passive_split(nu);
  const auto& w = model.homogeneous()[0];

  SingleInequalityResult result;
  double min_up = std::numeric_limits<double>::infinity();
  for (std::size_t i : split.passive) min_up = std::min(min_up, w[i]);

  bool case_b = false;
  if (!split.passive.empty() && min_up < 0.0) {
    double total = 0.0;
    for (std::size_t i : split.active) total += nu.nu[i] / (1.0 - w[i] / min_up);
    case_b = total < 1.0;
  }

  std::vector<double> q(nu.size(), 0.0);
  if (case_b) {
    result.which = SingleInequalityCase::B;
    result.alpha = -1.0 / min_up;
    double active_mass = 0.0;
    result.q_active.reserve(split.active.size());
    for (std::size_t i : split.active) {
      double qi = nu.nu[i] / (1.0 - w[i] / min_up);
      result.q_active.push_back(qi);
      q[i] = qi;
      active_mass += qi;
    }
    // the completion lives on the letters attaining min(u^p)
    std::vector<std::size_t> argmin;
    for (std::size_t i : split.passive)
      if (std::abs(w[i] - min_up) <= 1e-9 * std::max(1.0, std::abs(min_up))) argmin.push_back(i);
    double share = (1.0 - active_mass) / static_cast<double>(argmin.size());
    for (std::size_t i : argmin) q[i] = share;
  } else {
    result.which = SingleInequalityCase::A;
    auto dual = smith_solve(model, nu);
    if (dual.status != DualStatus::Converged)
      throw ValidationError(
          "fenchel_single_inequality: the simplified dual diverges (H-set or Z-set)");
    result.alpha = dual.alpha[0];
    result.q_active.reserve(split.active.size());
    for (std::size_t k = 0; k < split.active.size(); ++k) {
      double qi = nu.nu[split.active[k]] / (1.0 + dual.y_active[k]);
      result.q_active.push_back(qi);
      q[split.active[k]] = qi;
    }
  }
  result.q = ProbabilityVector(std::move(q));
  result.value = kerridge_inaccuracy(nu, result.q).get();
  return result;
}

std::optional<KlotzSolution> klotz_solution(const ConstraintModel& model, const TypeVector& nu) {
  if (model.row_count() != 1)
    throw ValidationError("klotz_solution: model must have exactly one row");
  auto split = active_passive_split(nu);
  const auto& w = model.homogeneous()[0];

  double nu_dot_u = 0.0;
  double min_ua = std::numeric_limits<double>::infinity();
  for (std::size_t i : split.active) {
    nu_dot_u += nu.nu[i] * w[i];
    min_ua = std::min(min_ua, w[i]);
  }
  if (!(nu_dot_u > 0.0) || !(min_ua < 0.0)) return std::nullopt;

  // root of sum_active nu/(1 + alpha u) = 1 on (0, -1/min(u^a)); the sum
  // equals 1 at alpha = 0, dips below, and climbs back through 1
  double hi_limit = -1.0 / min_ua;
  auto f = [&](double a) {
    double s = 0.0;
    for (std::size_t i : split.active) s += nu.nu[i] / (1.0 + a * w[i]);
    return s - 1.0;
  };
  double lo = 0.0, hi = 0.0;
  bool bracketed = false;
  for (int k = 1; k <= 512; ++k) {
    double a = hi_limit * static_cast<double>(k) / 513.0;
    double v = f(a);
    if (v < 0.0) lo = a;
    if (v > 0.0 && lo > 0.0) {
      hi = a;
      bracketed = true;
      break;
    }
  }
  if (!bracketed) return std::nullopt;
  for (int k = 0; k < 200 && hi - lo > 1e-14 * hi_limit; ++k) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  double alpha = 0.5 * (lo + hi);

  KlotzSolution sol;
  sol.alpha = alpha;
  std::vector<double> q(nu.size(), 0.0);
  for (std::size_t i : split.active) q[i] = nu.nu[i] / (1.0 + alpha * w[i]);
  sol.q = ProbabilityVector(std::move(q));
  sol.value = kerridge_inaccuracy(nu, sol.q).get();
  return sol;
}

namespace {

struct InnerSolve {
  double value = 0.0;  // I_kappa at the inner optimum
  double kappa = 1.0;
  std::vector<double> alpha;     // kappa scaling
  std::vector<double> y_active;  // kappa scaling
  std::vector<double> q_active;
};

// inner kappa-scaled dual on the active slice at fixed passive part:
// substituting p = kappa q^a turns the slice into an active-simplex problem
// with rows u^a_h + kappa <q^p, u^p_h> 1
std::optional<InnerSolve> inner_solve(const ConstraintModel& model, const TypeVector& nu,
                                      const ActivePassiveSplit& split,
                                      const std::vector<double>& q_passive) {
  double pmass = 0.0;
  for (double v : q_passive) {
    if (v < -1e-12) return std::nullopt;
    pmass += std::max(v, 0.0);
  }
  if (1.0 - pmass < 1e-12) return std::nullopt;
  double kappa = 1.0 / (1.0 - pmass);

  const std::size_t ma = split.active.size();
  std::vector<std::string> labels;
  labels.reserve(ma);
  std::vector<double> nu_a(ma);
  for (std::size_t k = 0; k < ma; ++k) {
    labels.push_back(model.alphabet.labels[split.active[k]]);
    nu_a[k] = nu.nu[split.active[k]];
  }
  std::vector<ConstraintRow> rows;
  rows.reserve(model.row_count());
  for (std::size_t h = 0; h < model.row_count(); ++h) {
    const auto& w = model.homogeneous()[h];
    double fixed = 0.0;
    for (std::size_t k = 0; k < split.passive.size(); ++k)
      fixed += q_passive[k] * w[split.passive[k]];
    ConstraintRow row;
    row.u.resize(ma);
    for (std::size_t k = 0; k < ma; ++k) row.u[k] = w[split.active[k]] + kappa * fixed;
    row.rhs = 0.0;
    row.kind = model.rows[h].kind;
    rows.push_back(std::move(row));
  }
  ConstraintModel sub(Alphabet(std::move(labels)), std::move(rows));
  auto dual = smith_solve(sub, TypeVector(nu_a));
  if (dual.status != DualStatus::Converged) return std::nullopt;

  InnerSolve inner;
  inner.kappa = kappa;
  inner.value = dual.value - std::log(kappa);
  inner.alpha.resize(dual.alpha.size());
  for (std::size_t h = 0; h < dual.alpha.size(); ++h) inner.alpha[h] = kappa * dual.alpha[h];
  inner.y_active.resize(ma);
  inner.q_active.resize(ma);
  for (std::size_t k = 0; k < ma; ++k) {
    inner.y_active[k] = kappa * dual.y_active[k];
    inner.q_active[k] = nu_a[k] / (kappa + inner.y_active[k]);
  }
  return inner;
}

double golden_section_max(const std::function<double(double)>& f, double a, double b,
                          double tolerance) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tolerance) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

// small Nelder-Mead for the 2- and 3-dimensional outer problems; infeasible
// points evaluate to -inf and are simply bad vertices
std::vector<double> nelder_mead_max(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> start, double scale, double tolerance,
                                    int max_iter) {
  const std::size_t d = start.size();
  std::vector<std::vector<double>> simplex(d + 1, start);
  std::vector<double> values(d + 1);
  for (std::size_t k = 0; k < d; ++k) {
    double step = scale;
    for (int tries = 0; tries < 40; ++tries) {
      simplex[k + 1] = start;
      simplex[k + 1][k] += step;
      if (std::isfinite(f(simplex[k + 1]))) break;
      step = -step;
      if (tries % 2 == 1) step *= 0.5;
    }
  }
  for (std::size_t k = 0; k <= d; ++k) values[k] = f(simplex[k]);

  auto order = [&] {
    for (std::size_t i = 0; i <= d; ++i)
      for (std::size_t j = i + 1; j <= d; ++j)
        if (values[j] > values[i]) {
          std::swap(values[i], values[j]);
          std::swap(simplex[i], simplex[j]);
        }
  };
  order();

  for (int iter = 0; iter < max_iter; ++iter) {
    if (std::isfinite(values[d]) && values[0] - values[d] < tolerance) break;
    std::vector<double> centroid(d, 0.0);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t j = 0; j < d; ++j) centroid[j] += simplex[k][j] / double(d);
    auto blend = [&](double c) {
      std::vector<double> p(d);
      for (std::size_t j = 0; j < d; ++j) p[j] = centroid[j] + c * (centroid[j] - simplex[d][j]);
      return p;
    };
    auto reflected = blend(1.0);
    double fr = f(reflected);
    if (fr > values[0]) {
      auto expanded = blend(2.0);
      double fe = f(expanded);
      if (fe > fr) {
        simplex[d] = expanded;
        values[d] = fe;
      } else {
        simplex[d] = reflected;
        values[d] = fr;
      }
    } else if (fr > values[d - 1]) {
      simplex[d] = reflected;
      values[d] = fr;
    } else {
      auto contracted = blend(-0.5);
      double fc = f(contracted);
      if (fc > values[d]) {
        simplex[d] = contracted;
        values[d] = fc;
      } else {
        for (std::size_t k = 1; k <= d; ++k) {
          for (std::size_t j = 0; j < d; ++j)
            simplex[k][j] = simplex[0][j] + 0.5 * (simplex[k][j] - simplex[0][j]);
          values[k] = f(simplex[k]);
        }
      }
    }
    order();
  }
  return simplex[0];
}

}  // namespace

APResult active_passive_solve(const ConstraintModel& model, const TypeVector& nu,
                              const APOptions& options) {
  if (nu.size() != model.letters())
    throw ValidationError("active_passive_solve: type length does not match the alphabet");
  auto split = active_passive_split(nu);
  const std::size_t mp = split.passive.size();

  auto assemble = [&](const InnerSolve& inner, const std::vector<double>& q_passive) {
    APResult result;
    result.q_passive = q_passive;
    result.kappa = inner.kappa;
    result.y_active = inner.y_active;
    result.alpha = inner.alpha;
    std::vector<double> q(nu.size(), 0.0);
    for (std::size_t k = 0; k < split.active.size(); ++k)
      q[split.active[k]] = inner.q_active[k];
    for (std::size_t k = 0; k < mp; ++k) q[split.passive[k]] = std::max(q_passive[k], 0.0);
    result.q = ProbabilityVector(std::move(q));
    result.value = kerridge_inaccuracy(nu, result.q).get();
    return result;
  };

  if (mp == 0) {
    auto inner = inner_solve(model, nu, split, {});
    if (!inner) throw SolverError("active_passive_solve: inner dual failed with nu > 0");
    return assemble(*inner, {});
  }

  auto hull = passive_projection_hull(model, split);
  const std::size_t d = hull.dimension();
  if (d > options.max_free_dim)
    throw ValidationError("active_passive_solve: passive free dimension exceeds the limit");

  auto point_at = [&](const std::vector<double>& s) {
    std::vector<double> qp = hull.base;
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t j = 0; j < mp; ++j) qp[j] += s[k] * hull.directions[k][j];
    return qp;
  };
  auto outer_value = [&](const std::vector<double>& s) {
    auto inner = inner_solve(model, nu, split, point_at(s));
    return inner ? inner->value : -std::numeric_limits<double>::infinity();
  };

  std::vector<double> best_s(d, 0.0);
  if (d == 1) {
    // exact parameter interval from the projection: the 1-dimensional
    // hull makes every point of [lo, hi] feasible
    const std::size_t m = model.letters();
    std::vector<double> objective(m, 0.0);
    for (std::size_t k = 0; k < mp; ++k)
      objective[split.passive[k]] = hull.directions[0][k];
    std::vector<LPConstraint> rows;
    rows.push_back({std::vector<double>(m, 1.0), Rel::Eq, 1.0});
    for (std::size_t h = 0; h < model.row_count(); ++h)
      rows.push_back({model.homogeneous()[h],
                      model.rows[h].kind == RowKind::Equality ? Rel::Eq : Rel::Le, 0.0});
    auto hi = lp_solve(objective, rows, m, true);
    auto lo = lp_solve(objective, rows, m, false);
    if (hi.status != LPStatus::Optimal || lo.status != LPStatus::Optimal)
      throw SolverError("active_passive_solve: projection LP failed");
    double base_coord = 0.0;
    for (std::size_t k = 0; k < mp; ++k) base_coord += hull.directions[0][k] * hull.base[k];
    double s_lo = lo.value - base_coord, s_hi = hi.value - base_coord;
    double s = golden_section_max([&](double x) { return outer_value({x}); }, s_lo, s_hi,
                                  options.outer_tol * std::max(1.0, s_hi - s_lo));
    best_s = {s};
  } else if (d >= 2) {
    auto box = passive_projection_box(model, split);
    double span = 0.0;
    for (std::size_t k = 0; k < mp; ++k) span = std::max(span, box.upper[k] - box.lower[k]);
    std::vector<double> s = nelder_mead_max(outer_value, best_s, 0.25 * std::max(span, 1e-3),
                                            1e-12, 400 * static_cast<int>(d));
    for (int restart = 0; restart < 2; ++restart)
      s = nelder_mead_max(outer_value, s, 0.02 * std::max(span, 1e-3), 1e-13,
                          400 * static_cast<int>(d));
    best_s = s;
  }

  auto q_passive = point_at(best_s);
  for (double& v : q_passive) v = std::max(v, 0.0);
  auto inner = inner_solve(model, nu, split, q_passive);
  if (!inner) throw SolverError("active_passive_solve: inner solve failed at the outer optimum");
  APResult result = assemble(*inner, q_passive);

  // direct search cannot pin a boundary optimum to full precision; when
  // passive letters land near zero, drop them and resolve the lower-
  // dimensional face exactly, keeping whichever point is better
  std::vector<std::size_t> dropped, kept;
  for (std::size_t k = 0; k < mp; ++k)
    (q_passive[k] <= 1e-4 * (1.0 + result.kappa) ? dropped : kept).push_back(k);
  if (d >= 2 && !dropped.empty() && dropped.size() < mp) {
    std::vector<std::size_t> keep_letters = split.active;
    for (std::size_t k : kept) keep_letters.push_back(split.passive[k]);
    std::sort(keep_letters.begin(), keep_letters.end());
    try {
      std::vector<std::string> labels;
      std::vector<double> nu_face;
      for (std::size_t i : keep_letters) {
        labels.push_back(model.alphabet.labels[i]);
        nu_face.push_back(nu.nu[i]);
      }
      std::vector<ConstraintRow> rows;
      for (std::size_t h = 0; h < model.row_count(); ++h) {
        ConstraintRow row;
        for (std::size_t i : keep_letters) row.u.push_back(model.homogeneous()[h][i]);
        row.rhs = 0.0;
        row.kind = model.rows[h].kind;
        rows.push_back(std::move(row));
      }
      ConstraintModel face(Alphabet(std::move(labels)), std::move(rows));
      APResult sub = active_passive_solve(face, TypeVector(nu_face, nu.n), options);
      std::vector<double> q_full(nu.size(), 0.0);
      for (std::size_t j = 0; j < keep_letters.size(); ++j)
        q_full[keep_letters[j]] = sub.q[j];
      double face_value = kerridge_inaccuracy(nu.nu, q_full).get();
      if (face_value <= result.value + 1e-12) {
        result.q = ProbabilityVector(std::move(q_full));
        result.value = face_value;
        result.kappa = sub.kappa;
        result.y_active = sub.y_active;
        result.alpha = sub.alpha;
        for (std::size_t k = 0; k < mp; ++k)
          result.q_passive[k] = result.q[split.passive[k]];
      }
    } catch (const std::exception&) {
      // the face is degenerate; keep the direct-search point
    }
  }
  return result;
}

}  // namespace simplex_mle
