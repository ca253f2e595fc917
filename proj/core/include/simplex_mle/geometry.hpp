#ifndef SIMPLEX_MLE_GEOMETRY_HPP
#define SIMPLEX_MLE_GEOMETRY_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "simplex_mle/constraints.hpp"
#include "simplex_mle/types.hpp"

namespace simplex_mle {

struct SupportCheck {
  double t_star = 0.0;              // max{t : exists q in C with q_i >= t for all i}
  std::vector<double> witness;      // attaining point
  bool full_support() const { return t_star > tol::kZeroSupport; }
};

/// t* = max{t : exists q in C, q >= t componentwise}. By convexity, C has
/// full support exactly when t* > 0. Throws ValidationError when C is empty.
SupportCheck support_check(const ConstraintModel& model);

enum class Verdict { HSet, ZSet, Regular };

struct Classification {
  Verdict verdict = Verdict::Regular;
  /// Regular: a point of C supported on the active letters, positive there.
  std::optional<std::vector<double>> witness;
  /// ZSet: active letters forced to zero mass by the q^p = 0 restriction.
  std::vector<std::size_t> forced_zero;
};

/// Classifies C against nu: HSet when no point of C is supported on the
/// active letters; ZSet when such points exist but some active letter is
/// forced to zero on all of them; Regular otherwise.
Classification classify(const ConstraintModel& model, const TypeVector& nu);

/// True iff max_{q in C} <y,q> <= tol, i.e. y lies in the polar cone of C.
bool polar_cone_membership(const ConstraintModel& model, const std::vector<double>& y,
                           double tolerance);

struct SliceDescription {
  std::vector<double> representative;  // full-length point of C
  bool is_singleton = false;
  std::size_t free_dimension = 0;      // affine dimension of the passive slice
};

/// Describes C^p(q_active) = {q^p >= 0 : (q_active, q^p) in C}, the set of
/// passive completions of a fixed positive active part. Throws
/// ValidationError when no completion exists. A representative produced by
/// the perturbed-primal solver may be handed in; otherwise an LP vertex is
/// reported.
SliceDescription slice_passive(const ConstraintModel& model, const TypeVector& nu,
                               const std::vector<double>& q_active,
                               const std::optional<std::vector<double>>& pp_representative =
                                   std::nullopt);

/// Per-coordinate range of a polytope described by LP queries; used to box
/// the passive projection for the active-passive solver.
struct PassiveBox {
  std::vector<double> lower;
  std::vector<double> upper;
};

PassiveBox passive_projection_box(const ConstraintModel& model, const ActivePassiveSplit& split);

/// Affine hull of the passive projection C^p: a base point plus an
/// orthonormal set of spanning directions. Exact for polyhedral C.
struct AffineHull {
  std::vector<double> base;
  std::vector<std::vector<double>> directions;
  std::size_t dimension() const { return directions.size(); }
};

AffineHull passive_projection_hull(const ConstraintModel& model, const ActivePassiveSplit& split);

}  // namespace simplex_mle

#endif  // SIMPLEX_MLE_GEOMETRY_HPP
