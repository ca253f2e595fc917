#include "simplex_mle/conjugate.hpp"

#include <algorithm>
#include <cmath>

#include "simplex_mle/likelihood.hpp"

namespace simplex_mle {

namespace {

struct ActiveView {
  std::vector<double> nu;      // nu^a
  std::vector<std::size_t> active;
  std::vector<std::size_t> passive;
};

ActiveView active_view(const TypeVector& nu) {
  auto split = active_passive_split(nu);
  ActiveView view;
  view.active = std::move(split.active);
  view.passive = std::move(split.passive);
  view.nu.reserve(view.active.size());
  for (std::size_t i : view.active) view.nu.push_back(nu.nu[i]);
  return view;
}

double xi_raw(const std::vector<double>& nu_a, const std::vector<double>& z_a, double mu) {
  double s = 0.0;
  for (std::size_t i = 0; i < nu_a.size(); ++i) s += nu_a[i] / (mu - z_a[i]);
  return s;
}

double xi_derivative(const std::vector<double>& nu_a, const std::vector<double>& z_a, double mu) {
  double s = 0.0;
  for (std::size_t i = 0; i < nu_a.size(); ++i) {
    double d = mu - z_a[i];
    s -= nu_a[i] / (d * d);
  }
  return s;
}

// root of xi = 1 on (max z^a, max z^a + 1]: bisect until the bracket is
// narrow, then polish with Newton (pure Newton can escape past the pole)
double mu_bar_raw(const std::vector<double>& nu_a, const std::vector<double>& z_a) {
  double zmax = *std::max_element(z_a.begin(), z_a.end());
  double lo = zmax;        // xi -> +inf
  double hi = zmax + 1.0;  // xi <= 1 here
  if (xi_raw(nu_a, z_a, hi) >= 1.0 - 1e-15) {
    // constant z^a hits the root exactly at the bracket end
    double mu = hi;
    for (int k = 0; k < 8; ++k) {
      double f = xi_raw(nu_a, z_a, mu) - 1.0;
      double df = xi_derivative(nu_a, z_a, mu);
      double step = f / df;
      if (!(mu - step > lo)) break;
      mu -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(mu))) break;
    }
    return mu;
  }
  while (hi - lo > 1e-3) {
    double mid = 0.5 * (lo + hi);
    if (xi_raw(nu_a, z_a, mid) > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  double mu = 0.5 * (lo + hi);
  for (int k = 0; k < 100; ++k) {
    double f = xi_raw(nu_a, z_a, mu) - 1.0;
    if (f > 0.0)
      lo = std::max(lo, mu);
    else
      hi = std::min(hi, mu);
    double df = xi_derivative(nu_a, z_a, mu);
    double next = mu - f / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    double step = std::abs(next - mu);
    mu = next;
    if (step < 1e-15 * (1.0 + std::abs(mu))) break;
  }
  return mu;
}

}  // namespace

double xi(const TypeVector& nu, const std::vector<double>& z_active, double mu) {
  auto view = active_view(nu);
  if (z_active.size() != view.nu.size())
    throw ValidationError("xi: z_active length does not match the active alphabet");
  double zmax = *std::max_element(z_active.begin(), z_active.end());
  if (!(mu > zmax)) throw ValidationError("xi: mu must exceed max(z^a)");
  return xi_raw(view.nu, z_active, mu);
}

double mu_bar(const TypeVector& nu, const std::vector<double>& z_active) {
  auto view = active_view(nu);
  if (z_active.size() != view.nu.size())
    throw ValidationError("mu_bar: z_active length does not match the active alphabet");
  return mu_bar_raw(view.nu, z_active);
}

double mu_hat(const TypeVector& nu, const std::vector<double>& z) {
  if (z.size() != nu.size()) throw ValidationError("mu_hat: z length does not match the type");
  auto view = active_view(nu);
  std::vector<double> z_a(view.active.size());
  for (std::size_t k = 0; k < view.active.size(); ++k) z_a[k] = z[view.active[k]];
  double mu = mu_bar_raw(view.nu, z_a);
  for (std::size_t i : view.passive) mu = std::max(mu, z[i]);
  return mu;
}

ConjugateResult conjugate(const TypeVector& nu, const std::vector<double>& z) {
  if (z.size() != nu.size())
    throw ValidationError("conjugate: z length does not match the type");
  auto view = active_view(nu);
  std::vector<double> z_a(view.active.size());
  for (std::size_t k = 0; k < view.active.size(); ++k) z_a[k] = z[view.active[k]];

  ConjugateResult result;
  result.mu_bar = mu_bar_raw(view.nu, z_a);
  result.mu_hat = result.mu_bar;
  for (std::size_t i : view.passive) result.mu_hat = std::max(result.mu_hat, z[i]);

  double divergence = 0.0;  // I_{mu_hat}(nu^a || -z^a), summed in log space
  result.q_active.resize(view.nu.size());
  for (std::size_t k = 0; k < view.nu.size(); ++k) {
    double denom = result.mu_hat - z_a[k];
    divergence += view.nu[k] * (std::log(view.nu[k]) - std::log(denom));
    result.q_active[k] = view.nu[k] / denom;
  }
  result.value = -1.0 + result.mu_hat + divergence;

  // mass moves to the passive letters only when max(z^p) strictly exceeds
  // mu_bar; at mu_hat == mu_bar the quantity 1 - xi is root-finding noise
  if (result.mu_hat > result.mu_bar) {
    result.passive_mass =
        std::clamp(1.0 - xi_raw(view.nu, z_a, result.mu_hat), 0.0, 1.0);
    for (std::size_t i : view.passive)
      if (std::abs(z[i] - result.mu_hat) <= 1e-10) result.passive_support.push_back(i);
  }
  return result;
}

}  // namespace simplex_mle
