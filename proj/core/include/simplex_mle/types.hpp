#ifndef SIMPLEX_MLE_TYPES_HPP
#define SIMPLEX_MLE_TYPES_HPP

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace simplex_mle {

/// Thrown on bad inputs: dimension mismatches, invalid models, domain
/// violations of an operation's preconditions.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an internal consistency check fails (a solver bug, not a
/// property of the input).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite outcome space. Labels are arbitrary distinct tokens; when every
/// label parses as a number the alphabet additionally carries numeric
/// values, which moment-style constraints require.
struct Alphabet {
  std::vector<std::string> labels;
  std::optional<std::vector<double>> values;  // set iff all labels are numeric

  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> labels_);
  explicit Alphabet(const std::vector<double>& numeric_values);

  std::size_t size() const { return labels.size(); }
  bool numeric() const { return values.has_value(); }
};

/// Observed relative frequencies on an alphabet. Entries are nonnegative and
/// sum to one (validated to 1e-12); the letters with positive frequency form
/// the active alphabet, the rest the passive one.
struct TypeVector {
  std::vector<double> nu;
  std::optional<long long> n;  // sample size, kept for likelihood ratios

  TypeVector() = default;
  explicit TypeVector(std::vector<double> nu_, std::optional<long long> n_ = std::nullopt);

  static TypeVector from_counts(const std::vector<long long>& counts);

  std::size_t size() const { return nu.size(); }
};

/// Point of the probability simplex produced by a solver. Sum validated
/// to 1e-10 (looser than TypeVector: it is the output of floating-point
/// optimization, not ingested data).
struct ProbabilityVector {
  std::vector<double> q;

  ProbabilityVector() = default;
  explicit ProbabilityVector(std::vector<double> q_, bool validate_sum = true);

  std::size_t size() const { return q.size(); }
  double operator[](std::size_t i) const { return q[i]; }
};

/// A real value or +infinity. Negative infinity never occurs in the
/// likelihood kernel and is rejected if computed.
struct ExtendedReal {
  double value = 0.0;
  bool finite = true;

  static ExtendedReal of(double v);
  static ExtendedReal infinity() { return ExtendedReal{std::numeric_limits<double>::infinity(), false}; }

  bool is_infinite() const { return !finite; }
  /// Finite payload; throws if infinite.
  double get() const;
};

/// Index partition of the alphabet by nu_i > 0 versus nu_i = 0.
struct ActivePassiveSplit {
  std::vector<std::size_t> active;
  std::vector<std::size_t> passive;
};

namespace tol {
inline constexpr double kTypeSum = 1e-12;      // simplex sum on ingestion
inline constexpr double kSolutionSum = 1e-10;  // simplex sum on solver output
inline constexpr double kLPFeas = 1e-9;
inline constexpr double kLPCost = 1e-10;
inline constexpr double kZeroSupport = 1e-9;   // t* at or below counts as zero
}  // namespace tol

}  // namespace simplex_mle

#endif  // SIMPLEX_MLE_TYPES_HPP
