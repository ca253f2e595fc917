#include "simplex_mle/types.hpp"

#include <cmath>
#include <cstdio>

namespace simplex_mle {

namespace {

std::string at(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%zu", i);
  return buf;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> labels_) : labels(std::move(labels_)) {
  if (labels.empty()) throw ValidationError("alphabet must have at least one letter");
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      if (labels[i] == labels[j])
        throw ValidationError("alphabet labels must be distinct: '" + labels[i] + "'");
  std::vector<double> parsed(labels.size());
  bool numeric = true;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    char* end = nullptr;
    parsed[i] = std::strtod(labels[i].c_str(), &end);
    if (end == labels[i].c_str() || *end != '\0' || !std::isfinite(parsed[i])) {
      numeric = false;
      break;
    }
  }
  if (numeric) values = std::move(parsed);
}

Alphabet::Alphabet(const std::vector<double>& numeric_values) {
  if (numeric_values.empty()) throw ValidationError("alphabet must have at least one letter");
  labels.reserve(numeric_values.size());
  for (double v : numeric_values) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    labels.emplace_back(buf);
  }
  values = numeric_values;
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      if (labels[i] == labels[j])
        throw ValidationError("alphabet labels must be distinct: '" + labels[i] + "'");
}

TypeVector::TypeVector(std::vector<double> nu_, std::optional<long long> n_)
    : nu(std::move(nu_)), n(n_) {
  if (nu.empty()) throw ValidationError("type vector must be nonempty");
  double sum = 0.0;
  bool any_positive = false;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (!(nu[i] >= 0.0))
      throw ValidationError("type vector entry " + at(i) + " is negative or NaN");
    if (nu[i] > 0.0) any_positive = true;
    sum += nu[i];
  }
  if (!any_positive) throw ValidationError("type vector has no active letter");
  if (std::abs(sum - 1.0) > tol::kTypeSum)
    throw ValidationError("type vector does not sum to one within 1e-12");
  if (n && *n <= 0) throw ValidationError("sample size must be positive");
}

TypeVector TypeVector::from_counts(const std::vector<long long>& counts) {
  long long total = 0;
  for (long long c : counts) {
    if (c < 0) throw ValidationError("counts must be nonnegative");
    total += c;
  }
  if (total <= 0) throw ValidationError("counts must not all be zero");
  std::vector<double> nu(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    nu[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  return TypeVector(std::move(nu), total);
}

ProbabilityVector::ProbabilityVector(std::vector<double> q_, bool validate_sum)
    : q(std::move(q_)) {
  if (q.empty()) throw ValidationError("probability vector must be nonempty");
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!(q[i] >= 0.0))
      throw ValidationError("probability vector entry " + at(i) + " is negative or NaN");
    sum += q[i];
  }
  if (validate_sum && std::abs(sum - 1.0) > tol::kSolutionSum)
    throw ValidationError("probability vector does not sum to one within 1e-10");
}

ExtendedReal ExtendedReal::of(double v) {
  if (std::isnan(v)) throw SolverError("extended real is NaN");
  if (v == -std::numeric_limits<double>::infinity())
    throw SolverError("extended real is -infinity; the inaccuracy never attains it");
  if (v == std::numeric_limits<double>::infinity()) return infinity();
  return ExtendedReal{v, true};
}

double ExtendedReal::get() const {
  if (!finite) throw ValidationError("extended real is infinite");
  return value;
}

}  // namespace simplex_mle
