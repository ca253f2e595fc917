#include "simplex_mle/likelihood.hpp"

#include <cmath>

namespace simplex_mle {

ExtendedReal kerridge_inaccuracy(const std::vector<double>& nu, const std::vector<double>& q) {
  if (nu.size() != q.size())
    throw ValidationError("kerridge_inaccuracy: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (nu[i] == 0.0) continue;  // 0 * log(anything) = 0 by convention
    if (q[i] <= 0.0) return ExtendedReal::infinity();
    acc -= nu[i] * std::log(q[i]);
  }
  return ExtendedReal::of(acc);
}

ExtendedReal kerridge_inaccuracy(const TypeVector& nu, const ProbabilityVector& q) {
  return kerridge_inaccuracy(nu.nu, q.q);
}

double i_divergence(double mu, const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ValidationError("i_divergence: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0.0)) throw ValidationError("i_divergence: a must be positive");
    double denom = mu + b[i];
    if (!(denom > 0.0)) throw ValidationError("i_divergence: mu + b must be positive");
    // log a - log(mu+b) avoids the cancellation of forming the quotient
    acc += a[i] * (std::log(a[i]) - std::log(denom));
  }
  return acc;
}

ActivePassiveSplit active_passive_split(const TypeVector& nu) {
  ActivePassiveSplit split;
  for (std::size_t i = 0; i < nu.size(); ++i)
    (nu.nu[i] > 0.0 ? split.active : split.passive).push_back(i);
  if (split.active.empty()) throw ValidationError("type vector has no active letter");
  return split;
}

LikelihoodRatio likelihood_ratio(long long n, double ell_1, double ell_2) {
  if (!std::isfinite(ell_1) || !std::isfinite(ell_2))
    throw ValidationError("likelihood_ratio: values must be finite");
  LikelihoodRatio r;
  r.log_ratio = static_cast<double>(n) * (ell_1 - ell_2);
  r.ratio = std::exp(r.log_ratio);
  if (!std::isfinite(r.ratio)) {
    r.ratio = std::numeric_limits<double>::infinity();
    r.overflow = true;
  }
  return r;
}

}  // namespace simplex_mle
