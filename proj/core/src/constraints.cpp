#include "simplex_mle/constraints.hpp"

#include <cmath>

namespace simplex_mle {

std::vector<double> ConstraintRow::homogenized() const {
  std::vector<double> w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] - rhs;
  return w;
}

ConstraintModel::ConstraintModel(Alphabet alphabet_, std::vector<ConstraintRow> rows_)
    : alphabet(std::move(alphabet_)), rows(std::move(rows_)) {
  for (const auto& row : rows) {
    if (row.u.size() != alphabet.size())
      throw ValidationError("constraint row length does not match the alphabet");
    for (double v : row.u)
      if (!std::isfinite(v)) throw ValidationError("constraint row has a non-finite entry");
    if (!std::isfinite(row.rhs)) throw ValidationError("constraint rhs is not finite");
  }
  homo_.reserve(rows.size());
  for (const auto& row : rows) homo_.push_back(row.homogenized());
}

ConstraintRow moment_row(const Alphabet& alphabet, int order, double rhs, RowKind kind) {
  if (!alphabet.numeric())
    throw ValidationError("moment constraints need a numeric alphabet");
  if (order < 0) throw ValidationError("moment order must be nonnegative");
  ConstraintRow row;
  row.u.resize(alphabet.size());
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    row.u[i] = std::pow((*alphabet.values)[i], order);
  row.rhs = rhs;
  row.kind = kind;
  return row;
}

}  // namespace simplex_mle
