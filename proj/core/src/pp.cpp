#include "simplex_mle/pp.hpp"

#include <algorithm>
#include <cmath>

#include "simplex_mle/duals.hpp"
#include "simplex_mle/geometry.hpp"
#include "simplex_mle/likelihood.hpp"

namespace simplex_mle {

namespace {
constexpr double kDeltaHardStop = 1e-12;  // numerical effects dominate past here
}

PerturbationSchedule PerturbationSchedule::default_schedule() {
  PerturbationSchedule schedule;
  schedule.deltas.reserve(9);
  for (int j = 1; j <= 9; ++j) schedule.deltas.push_back(std::pow(10.0, -j));
  return schedule;
}

PerturbationSchedule PerturbationSchedule::with_deltas(std::vector<double> deltas) {
  PerturbationSchedule schedule;
  schedule.deltas = std::move(deltas);
  return schedule;
}

void PerturbationSchedule::validate(std::size_t passive_count) const {
  if (deltas.empty()) throw ValidationError("perturbation schedule is empty");
  double prev = std::numeric_limits<double>::infinity();
  for (double d : deltas) {
    if (!(d > 0.0)) throw ValidationError("perturbation levels must be positive");
    if (d < kDeltaHardStop)
      throw ValidationError("perturbation levels below 1e-12 are not allowed");
    if (!(d < prev)) throw ValidationError("perturbation levels must strictly decrease");
    prev = d;
  }
  if (activation == Activation::CustomWeights) {
    if (weights.size() != passive_count)
      throw ValidationError("activation weights must cover exactly the passive letters");
    for (double w : weights)
      if (!(w > 0.0)) throw ValidationError("activation weights must be positive");
  } else if (!weights.empty()) {
    throw ValidationError("uniform activation takes no weights");
  }
}

TypeVector perturb_type(const TypeVector& nu, double delta, const PerturbationSchedule& schedule) {
  if (!(delta > 0.0)) throw ValidationError("perturb_type: delta must be positive");
  auto split = active_passive_split(nu);
  schedule.validate(split.passive.size());
  if (split.passive.empty()) return nu;

  double total_weight = 0.0;
  std::vector<double> w(nu.size(), 0.0);
  for (std::size_t k = 0; k < split.passive.size(); ++k) {
    double wk = schedule.activation == Activation::Uniform ? 1.0 : schedule.weights[k];
    w[split.passive[k]] = wk;
    total_weight += wk;
  }
  std::vector<double> out(nu.size());
  double scale = 1.0 / (1.0 + delta * total_weight);
  for (std::size_t i = 0; i < nu.size(); ++i) out[i] = (nu.nu[i] + delta * w[i]) * scale;
  return TypeVector(std::move(out), nu.n);
}

std::vector<double> residuals(const ConstraintModel& model, const ProbabilityVector& q) {
  if (q.size() != model.letters())
    throw ValidationError("residuals: vector length does not match the alphabet");
  std::vector<double> out;
  out.reserve(model.row_count() + 1);
  for (std::size_t h = 0; h < model.row_count(); ++h) {
    double v = -model.rows[h].rhs;
    for (std::size_t i = 0; i < q.size(); ++i) v += q[i] * model.rows[h].u[i];
    out.push_back(model.rows[h].kind == RowKind::Inequality ? std::max(v, 0.0) : std::abs(v));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) sum += q[i];
  out.push_back(std::abs(sum - 1.0));
  return out;
}

std::vector<int> residual_orders(const std::vector<double>& residual_values) {
  std::vector<int> orders;
  orders.reserve(residual_values.size());
  for (double r : residual_values) {
    if (!(r > 1e-16))
      orders.push_back(16);
    else
      orders.push_back(std::min(16, static_cast<int>(std::floor(-std::log10(r) + 1e-9))));
  }
  return orders;
}

PPResult pp_solve(const ConstraintModel& model, const TypeVector& nu, const PPOptions& options) {
  if (nu.size() != model.letters())
    throw ValidationError("pp_solve: type length does not match the alphabet");
  auto support = support_check(model);
  if (!support.full_support())
    throw ValidationError("pp_solve: the feasible set has structural zeros");
  auto split = active_passive_split(nu);
  options.schedule.validate(split.passive.size());

  PPResult result;
  std::vector<double> prev_q;
  SmithOptions smith_options;

  for (double delta : options.schedule.deltas) {
    TypeVector nu_delta = perturb_type(nu, delta, options.schedule);
    auto dual = smith_solve(model, nu_delta, smith_options);
    if (dual.status != DualStatus::Converged)
      throw SolverError("pp_solve: the perturbed dual diverged despite a positive type");
    if (options.warm_start) smith_options.warm_alpha = dual.alpha;

    PPTraceRow row;
    row.delta = delta;
    row.nu_delta = nu_delta.nu;
    row.alpha = dual.alpha;
    row.q_hat.assign(nu.size(), 0.0);
    double mass = 0.0;
    for (std::size_t i = 0; i < nu.size(); ++i) {
      row.q_hat[i] = nu_delta.nu[i] / (1.0 + dual.y_active[i]);
      mass += row.q_hat[i];
    }
    // the dual pins the ratios; the unit total is exact knowledge and the
    // computed mass misses it by curvature * ulp at strong perturbations
    for (double& v : row.q_hat) v /= mass;
    row.neg_dual_value = -dual.value;
    row.residual_values = residuals(model, ProbabilityVector(row.q_hat, false));
    row.gamma = residual_orders(row.residual_values);

    bool settled = false;
    if (!prev_q.empty() && options.tol > 0.0) {
      double diff = 0.0;
      for (std::size_t i = 0; i < nu.size(); ++i)
        diff = std::max(diff, std::abs(row.q_hat[i] - prev_q[i]));
      double worst = *std::max_element(row.residual_values.begin(), row.residual_values.end());
      settled = diff < options.tol && worst < options.tol;
    }
    prev_q = row.q_hat;
    result.trace.rows.push_back(std::move(row));
    if (settled) {
      result.converged = true;
      break;
    }
  }

  const auto& last = result.trace.rows.back();
  result.q = ProbabilityVector(last.q_hat);
  result.value = kerridge_inaccuracy(nu, result.q).get();
  return result;
}

}  // namespace simplex_mle
