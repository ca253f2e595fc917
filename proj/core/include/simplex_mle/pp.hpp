#ifndef SIMPLEX_MLE_PP_HPP
#define SIMPLEX_MLE_PP_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "simplex_mle/constraints.hpp"
#include "simplex_mle/types.hpp"

namespace simplex_mle {

enum class Activation { Uniform, CustomWeights };

/// Sequence of perturbation levels delta and the activation weights for the
/// passive letters. Uniform activation gives every passive letter equal
/// weight; custom weights must be one constant per passive letter (constant
/// in delta), the only other family with guaranteed pointwise convergence.
struct PerturbationSchedule {
  std::vector<double> deltas;
  Activation activation = Activation::Uniform;
  std::vector<double> weights;  // aligned with the passive letters when custom

  /// 10^-1, ..., 10^-9. Past that the floating-point effects dominate.
  static PerturbationSchedule default_schedule();
  static PerturbationSchedule with_deltas(std::vector<double> deltas);

  void validate(std::size_t passive_count) const;
};

/// nu(delta) = (nu + delta * w) / (1 + delta * sum w), where w is the
/// activation weight vector supported on the passive letters. Strictly
/// positive and converging to nu as delta drops to zero.
TypeVector perturb_type(const TypeVector& nu, double delta, const PerturbationSchedule& schedule);

/// Per-row |<q,u_h> - c_h| (positive part on inequality rows) followed by
/// |sum q - 1|.
std::vector<double> residuals(const ConstraintModel& model, const ProbabilityVector& q);

/// Order-of-magnitude exponents gamma: residual r is reported as 10^-gamma,
/// gamma = floor(-log10 r), capped at 16 for vanishing residuals.
std::vector<int> residual_orders(const std::vector<double>& residual_values);

struct PPTraceRow {
  double delta = 0.0;
  std::vector<double> nu_delta;
  std::vector<double> alpha;
  std::vector<double> q_hat;
  double neg_dual_value = 0.0;  // -I_1 value of the perturbed dual = perturbed primal value
  std::vector<double> residual_values;
  std::vector<int> gamma;
};

struct PPTrace {
  std::vector<PPTraceRow> rows;
};

struct PPResult {
  ProbabilityVector q;
  double value = 0.0;  // kerridge inaccuracy of q under the original nu
  PPTrace trace;
  bool converged = false;
};

struct PPOptions {
  PerturbationSchedule schedule = PerturbationSchedule::default_schedule();
  /// Stop at the first k with ||q(delta_k) - q(delta_{k-1})||_inf < tol and
  /// residuals below tol; tol = 0 runs the whole schedule.
  double tol = 1e-7;
  bool warm_start = true;
};

/// The perturbed-primal algorithm: follow delta down the schedule, solving
/// each activated problem through its (always convergent) Smith dual, and
/// return the limit point. converged=false with the full trace when the
/// schedule is exhausted before the iterates settle.
PPResult pp_solve(const ConstraintModel& model, const TypeVector& nu,
                  const PPOptions& options = {});

}  // namespace simplex_mle

#endif  // SIMPLEX_MLE_PP_HPP
