#ifndef SIMPLEX_MLE_DUALS_HPP
#define SIMPLEX_MLE_DUALS_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "simplex_mle/constraints.hpp"
#include "simplex_mle/geometry.hpp"
#include "simplex_mle/types.hpp"

namespace simplex_mle {

enum class DualStatus { Converged, Divergent };

/// Solution of the simplified (Smith) dual: minimize
/// I_1(nu^a || sum_h alpha_h u^a_h) over alpha, free on equality rows and
/// sign-constrained alpha_h >= 0 on inequality rows.
struct DualSolution {
  std::vector<double> alpha;
  std::vector<double> y_active;  // sum_h alpha_h u^a_h, > -1 when converged
  double value = 0.0;            // the attained minimum
  DualStatus status = DualStatus::Divergent;
};

struct SmithOptions {
  std::optional<std::vector<double>> warm_alpha;
  double grad_tol = 1e-10;
  double value_floor = -1e8;
  double alpha_cap = 1e12;
  int max_iterations = 1000;
};

/// Damped projected Newton on the Smith dual. The line search keeps
/// 1 + y^a strictly positive; divergence (the H-set/Z-set breakdown) is
/// declared when the objective crosses value_floor or the coefficients blow
/// past alpha_cap without gradient convergence.
DualSolution smith_solve(const ConstraintModel& model, const TypeVector& nu,
                         const SmithOptions& options = {});

/// q~ = (nu^a / (1 + y^a), 0^p) for a converged dual. The point always lies
/// in C; a residual above 1e-8 indicates a solver bug and throws.
ProbabilityVector primal_from_dual(const ConstraintModel& model, const TypeVector& nu,
                                   const DualSolution& dual);

/// Diagnosis of the duality gap of the simplified dual. The decision is the
/// polar-cone membership of (y^a, -1^p); the extremality residual
/// ell(q_bd) + ell*(-y) is evaluated at the base solution sum alpha_h u_h
/// and is ~0 exactly when the simplified dual solves the primal.
struct GapDiagnosis {
  bool gap_present = false;
  bool condition_iv = false;
  double extremality_residual = 0.0;
  ProbabilityVector q_bd;
};

GapDiagnosis diagnose_gap(const ConstraintModel& model, const TypeVector& nu,
                          const DualSolution& dual);

enum class SingleInequalityCase { A, B };

/// Closed-form treatment of a single inequality row. Case B (min(u^p) < 0
/// and sum nu^a/(1 - u^a/min(u^p)) < 1): alpha = -1/min(u^p) in closed form
/// and the solution puts mass 1 - sum(q^a) on the letters attaining
/// min(u^p). Case A falls back to the Smith solve and the solution is
/// supported on the active letters.
struct SingleInequalityResult {
  SingleInequalityCase which = SingleInequalityCase::A;
  double alpha = 0.0;
  std::vector<double> q_active;
  ProbabilityVector q;  // full vector including the passive completion
  double value = 0.0;   // kerridge inaccuracy of q
};

SingleInequalityResult fenchel_single_inequality(const ConstraintModel& model,
                                                 const TypeVector& nu);

/// The uncorrected single-constraint recipe: root of
/// sum nu/(1 + alpha u) = 1 over the active letters, solution forced to zero
/// on the passive ones. Kept for contrast with the corrected case-B formula;
/// not a solver path.
struct KlotzSolution {
  double alpha = 0.0;
  ProbabilityVector q;
  double value = 0.0;
};

std::optional<KlotzSolution> klotz_solution(const ConstraintModel& model, const TypeVector& nu);

/// Active-passive dualization: outer maximization over the passive
/// projection C^p of the inner kappa-scaled dual on the active slice,
/// kappa = 1/(1 - sum q^p). y_active and alpha are in the kappa scaling, so
/// q^a = nu^a / (kappa + y^a).
struct APResult {
  std::vector<double> q_passive;
  double kappa = 1.0;
  std::vector<double> y_active;
  std::vector<double> alpha;
  ProbabilityVector q;
  double value = 0.0;  // primal value ell(q)
};

struct APOptions {
  std::size_t max_free_dim = 3;
  double outer_tol = 1e-9;
};

APResult active_passive_solve(const ConstraintModel& model, const TypeVector& nu,
                              const APOptions& options = {});

}  // namespace simplex_mle

#endif  // SIMPLEX_MLE_DUALS_HPP
