#ifndef SIMPLEX_MLE_LIKELIHOOD_HPP
#define SIMPLEX_MLE_LIKELIHOOD_HPP

#include <vector>

#include "simplex_mle/types.hpp"

namespace simplex_mle {

/// Kerridge inaccuracy -sum_i nu_i log q_i, the negative normalized
/// multinomial log-likelihood kernel. Conventions log 0 = -inf and
/// 0 * (-inf) = 0 apply, so the value is finite exactly when q is positive
/// on every active letter.
ExtendedReal kerridge_inaccuracy(const TypeVector& nu, const ProbabilityVector& q);

/// Same kernel on a raw vector (used on active-alphabet restrictions).
ExtendedReal kerridge_inaccuracy(const std::vector<double>& nu, const std::vector<double>& q);

/// I_mu(a||b) = sum_i a_i log(a_i / (mu + b_i)), for a > 0 and mu + b > 0.
/// Computed as sum a_i (log a_i - log(mu + b_i)).
double i_divergence(double mu, const std::vector<double>& a, const std::vector<double>& b);

/// Partition of indices by nu_i > 0 versus nu_i = 0. The active part is
/// never empty for a valid type.
ActivePassiveSplit active_passive_split(const TypeVector& nu);

struct LikelihoodRatio {
  double ratio = 1.0;     // exp(n (ell_1 - ell_2)); +inf when overflowed
  double log_ratio = 0.0; // n (ell_1 - ell_2), always finite
  bool overflow = false;
};

/// exp(n (ell_1 - ell_2)) with the exponent reported alongside, since the
/// ratio itself easily overflows for decisive evidence.
LikelihoodRatio likelihood_ratio(long long n, double ell_1, double ell_2);

}  // namespace simplex_mle

#endif  // SIMPLEX_MLE_LIKELIHOOD_HPP
