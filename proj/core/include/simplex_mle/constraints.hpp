#ifndef SIMPLEX_MLE_CONSTRAINTS_HPP
#define SIMPLEX_MLE_CONSTRAINTS_HPP

#include <cstddef>
#include <vector>

#include "simplex_mle/types.hpp"

namespace simplex_mle {

enum class RowKind { Equality, Inequality };

/// One affine row <q,u> = c or <q,u> <= c over the simplex. Since sum q = 1,
/// the row is equivalent to the homogeneous <q, u - c*1> (= or <=) 0; solvers
/// work with the homogenized coefficients throughout.
struct ConstraintRow {
  std::vector<double> u;
  double rhs = 0.0;
  RowKind kind = RowKind::Equality;

  std::vector<double> homogenized() const;
};

/// Feasible set C: all points of the simplex satisfying every row. Assumed
/// (and checked by support_check) to be nonempty with full support, i.e. no
/// structural zeros.
struct ConstraintModel {
  Alphabet alphabet;
  std::vector<ConstraintRow> rows;

  ConstraintModel() = default;
  ConstraintModel(Alphabet alphabet_, std::vector<ConstraintRow> rows_);

  std::size_t letters() const { return alphabet.size(); }
  std::size_t row_count() const { return rows.size(); }

  /// Homogenized coefficient rows, aligned with rows.
  const std::vector<std::vector<double>>& homogeneous() const { return homo_; }

 private:
  std::vector<std::vector<double>> homo_;
};

/// Moment sugar for numeric alphabets: u_i = x_i^order.
ConstraintRow moment_row(const Alphabet& alphabet, int order, double rhs, RowKind kind);

}  // namespace simplex_mle

#endif  // SIMPLEX_MLE_CONSTRAINTS_HPP
