#include "simplex_mle/elcompare.hpp"

#include <algorithm>
#include <cmath>

namespace simplex_mle {

std::vector<double> ELSolution::padded(const ActivePassiveSplit& split, std::size_t m) const {
  std::vector<double> full(m, 0.0);
  if (p_active) {
    for (std::size_t k = 0; k < split.active.size(); ++k) full[split.active[k]] = (*p_active)[k];
  }
  return full;
}

ELSolution el_solve(const ConstraintModel& model, const TypeVector& nu) {
  if (nu.size() != model.letters())
    throw ValidationError("el_solve: type length does not match the alphabet");
  auto split = active_passive_split(nu);

  ELSolution solution;
  auto cls = classify(model, nu);
  if (cls.verdict == Verdict::HSet) {
    solution.failure = ELFailure::ConvexHull;
    return solution;
  }
  if (cls.verdict == Verdict::ZSet) {
    solution.failure = ELFailure::ZeroLikelihood;
    return solution;
  }

  // restrict to the active letters: the rows keep their homogenized active
  // parts and the active simplex supplies the normalization
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
    ConstraintRow row;
    row.u.resize(ma);
    for (std::size_t k = 0; k < ma; ++k) row.u[k] = model.homogeneous()[h][split.active[k]];
    row.rhs = 0.0;
    row.kind = model.rows[h].kind;
    rows.push_back(std::move(row));
  }
  ConstraintModel restricted(Alphabet(std::move(labels)), std::move(rows));

  auto dual = smith_solve(restricted, TypeVector(nu_a, nu.n));
  if (dual.status != DualStatus::Converged)
    throw SolverError("el_solve: dual diverged on a Regular model");

  std::vector<double> p(ma);
  for (std::size_t k = 0; k < ma; ++k) p[k] = nu_a[k] / (1.0 + dual.y_active[k]);
  solution.p_active = std::move(p);
  solution.value = -dual.value;
  solution.alpha = dual.alpha;
  return solution;
}

int evidence_category(const LikelihoodRatio& r) {
  static const double band = std::log(8.0);
  if (r.log_ratio > band) return 1;
  if (r.log_ratio < -band) return -1;
  return 0;
}

ComparisonReport compare(const ConstraintModel& model_1, const ConstraintModel& model_2,
                         const TypeVector& nu, long long n) {
  if (model_1.letters() != model_2.letters())
    throw ValidationError("compare: models must share the alphabet");
  ComparisonReport report;
  report.primal_1 = pp_solve(model_1, nu);
  report.primal_2 = pp_solve(model_2, nu);
  report.el_1 = el_solve(model_1, nu);
  report.el_2 = el_solve(model_2, nu);

  report.lr = likelihood_ratio(n, report.primal_1.value, report.primal_2.value);
  if (report.el_1.solved() && report.el_2.solved()) {
    report.elr = likelihood_ratio(n, report.el_1.value, report.el_2.value);
    report.discordant = evidence_category(report.lr) != evidence_category(*report.elr);
  } else {
    report.discordant = true;
  }
  return report;
}

ThetaProfile profile_estimating_equations(const Alphabet& alphabet,
                                          const ConstraintGenerator& generator,
                                          const std::vector<double>& theta_grid,
                                          const TypeVector& nu, const PPOptions& pp_options) {
  if (theta_grid.empty()) throw ValidationError("profile: empty theta grid");
  ThetaProfile profile;
  profile.rows.reserve(theta_grid.size());

  for (double theta : theta_grid) {
    ThetaProfileRow row;
    row.theta = theta;
    ConstraintModel model(alphabet, generator(theta));
    try {
      auto pp = pp_solve(model, nu, pp_options);
      row.primal_value = pp.value;
      row.primal_q = pp.q;
    } catch (const ValidationError&) {
      row.feasible = false;  // empty or degenerate C_theta at this grid point
      profile.rows.push_back(std::move(row));
      continue;
    }
    auto el = el_solve(model, nu);
    if (el.solved())
      row.el_value = el.value;
    else
      row.el_failure = el.failure;
    auto dual = smith_solve(model, nu);
    if (dual.status == DualStatus::Converged)
      row.gap_present = diagnose_gap(model, nu, dual).gap_present;
    profile.rows.push_back(std::move(row));
  }

  std::optional<double> best_primal, best_el;
  for (const auto& row : profile.rows) {
    if (row.primal_value && (!best_primal || *row.primal_value < *best_primal)) {
      best_primal = *row.primal_value;
      profile.argmin_primal = row.theta;
    }
    if (row.el_value && (!best_el || *row.el_value < *best_el)) {
      best_el = *row.el_value;
      profile.argmin_el = row.theta;
    }
  }
  return profile;
}

ConstraintGenerator qin_lawless_generator(const Alphabet& alphabet) {
  if (!alphabet.numeric())
    throw ValidationError("qin-lawless constraints need a numeric alphabet");
  std::vector<double> x = *alphabet.values;
  return [x](double theta) {
    ConstraintRow mean, second;
    mean.u.resize(x.size());
    second.u.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      mean.u[i] = x[i] - theta;
      second.u[i] = x[i] * x[i] - 2.0 * theta * theta - 1.0;
    }
    return std::vector<ConstraintRow>{mean, second};
  };
}

ConstraintGenerator second_moment_generator(const Alphabet& alphabet) {
  if (!alphabet.numeric())
    throw ValidationError("second-moment constraints need a numeric alphabet");
  std::vector<double> x = *alphabet.values;
  return [x](double theta) {
    ConstraintRow row;
    row.u.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) row.u[i] = x[i] * x[i] - theta;
    return std::vector<ConstraintRow>{row};
  };
}

MDIDiagnosis mdi_diagnose(const ConstraintModel& model, const TypeVector& nu,
                          const PPOptions& pp_options) {
  MDIDiagnosis diagnosis;
  diagnosis.classification = classify(model, nu);
  diagnosis.mdi_exists = diagnosis.classification.verdict == Verdict::Regular;
  diagnosis.pp = pp_solve(model, nu, pp_options);
  return diagnosis;
}

}  // namespace simplex_mle
