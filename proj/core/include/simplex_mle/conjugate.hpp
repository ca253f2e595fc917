#ifndef SIMPLEX_MLE_CONJUGATE_HPP
#define SIMPLEX_MLE_CONJUGATE_HPP

#include <cstddef>
#include <vector>

#include "simplex_mle/types.hpp"

namespace simplex_mle {

/// xi(mu) = sum_i nu^a_i / (mu - z^a_i) for mu > max(z^a); strictly
/// decreasing with a pole at max(z^a).
double xi(const TypeVector& nu, const std::vector<double>& z_active, double mu);

/// Unique root of xi(mu) = 1 on (max(z^a), infinity); it lies in
/// (max(z^a), max(z^a) + 1] because xi(max(z^a) + 1) <= sum nu^a = 1.
/// Bracketed bisection handed over to safeguarded Newton.
double mu_bar(const TypeVector& nu, const std::vector<double>& z_active);

/// mu_hat(z) = max{mu_bar(z^a), max(z^p)}; equals mu_bar when there are no
/// passive letters.
double mu_hat(const TypeVector& nu, const std::vector<double>& z);

/// Value and solution structure of the convex conjugate
/// ell*(z) = sup_{q in simplex} (<q,z> - ell(q)), evaluated in closed form:
/// ell*(z) = -1 + mu_hat + I_{mu_hat}(nu^a || -z^a). The maximizers are
/// (q_active, q^p) with q^p supported on passive_support and total passive
/// mass passive_mass.
struct ConjugateResult {
  double mu_bar = 0.0;
  double mu_hat = 0.0;
  double value = 0.0;
  std::vector<double> q_active;            // nu^a / (mu_hat - z^a), > 0
  double passive_mass = 0.0;               // 1 - xi(mu_hat), in [0,1]
  std::vector<std::size_t> passive_support;  // indices into the full alphabet
};

ConjugateResult conjugate(const TypeVector& nu, const std::vector<double>& z);

}  // namespace simplex_mle

#endif  // SIMPLEX_MLE_CONJUGATE_HPP
