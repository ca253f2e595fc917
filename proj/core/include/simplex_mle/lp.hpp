#ifndef SIMPLEX_MLE_LP_HPP
#define SIMPLEX_MLE_LP_HPP

#include <cstddef>
#include <vector>

namespace simplex_mle {

enum class LPStatus { Optimal, Infeasible, Unbounded };

enum class Rel { Le, Ge, Eq };

struct LPConstraint {
  std::vector<double> a;
  Rel rel = Rel::Eq;
  double rhs = 0.0;
};

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  double value = 0.0;
  std::vector<double> x;
};

/// Dense two-phase primal simplex with Bland's rule, variables x >= 0.
/// maximize (or minimize) objective . x subject to the rows. Infeasibility
/// and unboundedness are reported distinctly. Intended for the small
/// polytopes inside the simplex box this library works with: robustness
/// over speed.
LPResult lp_solve(const std::vector<double>& objective,
                  const std::vector<LPConstraint>& rows,
                  std::size_t num_vars,
                  bool maximize = true);

}  // namespace simplex_mle

#endif  // SIMPLEX_MLE_LP_HPP
