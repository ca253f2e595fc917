#ifndef SIMPLEX_MLE_ELCOMPARE_HPP
#define SIMPLEX_MLE_ELCOMPARE_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "simplex_mle/constraints.hpp"
#include "simplex_mle/duals.hpp"
#include "simplex_mle/geometry.hpp"
#include "simplex_mle/likelihood.hpp"
#include "simplex_mle/pp.hpp"
#include "simplex_mle/types.hpp"

namespace simplex_mle {

enum class ELFailure { ConvexHull, ZeroLikelihood };

/// Empirical-likelihood inner solution, reported on the active alphabet
/// only (matching the usual convention for data-supported weights). Absent
/// when the restricted problem has no solution: ConvexHull for an H-set,
/// ZeroLikelihood for a Z-set.
struct ELSolution {
  std::optional<std::vector<double>> p_active;
  double value = 0.0;  // hat ell_EL when solved
  std::optional<ELFailure> failure;
  std::vector<double> alpha;

  bool solved() const { return p_active.has_value(); }

  /// Active weights padded with zeros to the full alphabet, for comparisons
  /// with primal solutions.
  std::vector<double> padded(const ActivePassiveSplit& split, std::size_t m) const;
};

/// Restricts the constraints to the active letters and the active simplex
/// and solves there via the Smith dual.
ELSolution el_solve(const ConstraintModel& model, const TypeVector& nu);

/// Likelihood-ratio comparison of two feasible sets under the same type:
/// the full multinomial ratio (through the perturbed-primal solutions) next
/// to the empirical-likelihood ratio (through the active-alphabet
/// solutions). Ratios are banded into support categories; discordant means
/// the two ratios land in different categories, or one side failed.
struct ComparisonReport {
  PPResult primal_1, primal_2;
  ELSolution el_1, el_2;
  LikelihoodRatio lr;
  std::optional<LikelihoodRatio> elr;
  bool discordant = false;
};

ComparisonReport compare(const ConstraintModel& model_1, const ConstraintModel& model_2,
                         const TypeVector& nu, long long n);

/// Inconclusive band for the evidence categories: |log ratio| below
/// log(8) counts as no support either way.
int evidence_category(const LikelihoodRatio& r);

struct ThetaProfileRow {
  double theta = 0.0;
  std::optional<double> primal_value;
  std::optional<ProbabilityVector> primal_q;
  std::optional<double> el_value;
  std::optional<ELFailure> el_failure;
  std::optional<bool> gap_present;  // absent when the simplified dual diverges
  bool feasible = true;             // C_theta nonempty with full support
};

struct ThetaProfile {
  std::vector<ThetaProfileRow> rows;
  std::optional<double> argmin_primal;
  std::optional<double> argmin_el;
};

using ConstraintGenerator = std::function<std::vector<ConstraintRow>(double theta)>;

/// Estimating-equations profiling: per grid point, the primal (perturbed
/// primal) and EL solves plus the gap diagnosis.
ThetaProfile profile_estimating_equations(const Alphabet& alphabet,
                                          const ConstraintGenerator& generator,
                                          const std::vector<double>& theta_grid,
                                          const TypeVector& nu,
                                          const PPOptions& pp_options = {});

/// Built-in generator families over a numeric alphabet.
/// Mean-variance pair: u_1 = x - theta, u_2 = x^2 - 2 theta^2 - 1.
ConstraintGenerator qin_lawless_generator(const Alphabet& alphabet);
/// Single second moment: u = x^2 - theta.
ConstraintGenerator second_moment_generator(const Alphabet& alphabet);

/// Minimum-discrimination-information diagnosis: the MDI-optimal
/// distribution exists only when C is Regular with respect to nu; the
/// multinomial solution exists regardless and is returned alongside.
struct MDIDiagnosis {
  Classification classification;
  PPResult pp;
  bool mdi_exists = false;
};

MDIDiagnosis mdi_diagnose(const ConstraintModel& model, const TypeVector& nu,
                          const PPOptions& pp_options = {});

}  // namespace simplex_mle

#endif  // SIMPLEX_MLE_ELCOMPARE_HPP
