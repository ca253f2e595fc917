#ifndef TESTS_SUPPORT_FIXTURES_HPP
#define TESTS_SUPPORT_FIXTURES_HPP

#include <vector>

#include "simplex_mle/simplex_mle.hpp"

// The worked examples used across the test suites: small alphabets, one or
// two moment constraints, every zero-count pathology represented.
namespace fixtures {

using namespace simplex_mle;

// alphabet {-1,0,1} with E_q X = 0
inline ConstraintModel mean_zero_model() {
  Alphabet a(std::vector<double>{-1.0, 0.0, 1.0});
  return ConstraintModel(a, {ConstraintRow{{-1.0, 0.0, 1.0}, 0.0, RowKind::Equality}});
}
inline TypeVector nu_no_gap() { return TypeVector({0.5, 0.0, 0.5}); }
inline TypeVector nu_h_set() { return TypeVector({1.0, 0.0, 0.0}); }
inline TypeVector nu_z_set() { return TypeVector({0.5, 0.5, 0.0}); }

// alphabet {-1,1,10} with E_q X = 0; the duality-gap example
inline ConstraintModel gap_model() {
  Alphabet a(std::vector<double>{-1.0, 1.0, 10.0});
  return ConstraintModel(a, {ConstraintRow{{-1.0, 1.0, 10.0}, 0.0, RowKind::Equality}});
}
inline TypeVector nu_gap() { return TypeVector({0.6, 0.4, 0.0}); }

// monotone cone q1 <= q2 <= q3 on {1,2,3}
inline ConstraintModel monotone_model() {
  Alphabet a(std::vector<double>{1.0, 2.0, 3.0});
  return ConstraintModel(a, {ConstraintRow{{1.0, -1.0, 0.0}, 0.0, RowKind::Inequality},
                             ConstraintRow{{0.0, 1.0, -1.0}, 0.0, RowKind::Inequality}});
}
inline TypeVector nu_monotone() { return TypeVector({0.0, 1.0, 0.0}); }

// alphabet {-1,0,1} with E_q X^2 = 1/2; the non-unique minimum example
inline ConstraintModel second_moment_half_model() {
  Alphabet a(std::vector<double>{-1.0, 0.0, 1.0});
  return ConstraintModel(a, {ConstraintRow{{1.0, 0.0, 1.0}, 0.5, RowKind::Equality}});
}
inline TypeVector nu_center() { return TypeVector({0.0, 1.0, 0.0}); }

// single inequality E_q X <= 0 on {-2,...,2} with zero counts at -2, 0, 1
inline ConstraintModel single_inequality_model() {
  Alphabet a(std::vector<double>{-2.0, -1.0, 0.0, 1.0, 2.0});
  return ConstraintModel(a,
                         {ConstraintRow{{-2.0, -1.0, 0.0, 1.0, 2.0}, 0.0, RowKind::Inequality}});
}
inline TypeVector nu_single_inequality() { return TypeVector({0.0, 0.3, 0.0, 0.0, 0.7}); }

// alphabet {-1,1,a,b} with E_q X = 0; passive letters a=2, b=5
inline ConstraintModel threshold_model() {
  Alphabet a(std::vector<double>{-1.0, 1.0, 2.0, 5.0});
  return ConstraintModel(a, {ConstraintRow{{-1.0, 1.0, 2.0, 5.0}, 0.0, RowKind::Equality}});
}
inline TypeVector nu_threshold(double nu_1) { return TypeVector({1.0 - nu_1, nu_1, 0.0, 0.0}); }

// mean-variance estimating equations on {-2,...,2}
inline Alphabet five_point_alphabet() {
  return Alphabet(std::vector<double>{-2.0, -1.0, 0.0, 1.0, 2.0});
}
inline ConstraintModel qin_lawless_model(double theta) {
  Alphabet a = five_point_alphabet();
  return ConstraintModel(a, qin_lawless_generator(a)(theta));
}
inline TypeVector nu_qin_lawless() { return TypeVector({0.0, 0.0, 0.7, 0.3, 0.0}); }

// second-moment family E_q X^2 = theta on {-2,...,2}
inline ConstraintModel second_moment_model(double theta) {
  Alphabet a = five_point_alphabet();
  return ConstraintModel(a, second_moment_generator(a)(theta));
}
inline TypeVector nu_lr_elr() { return TypeVector({0.6, 0.3, 0.0, 0.0, 0.1}); }

// 3x3 contingency table with fixed marginals, all mass observed at cell
// (1,1); cells are laid out row-major
inline ConstraintModel contingency_model() {
  std::vector<std::string> labels = {"11", "12", "13", "21", "22", "23", "31", "32", "33"};
  const std::vector<double> first_margin = {0.1, 0.2, 0.7};
  const std::vector<double> second_margin = {0.5, 0.4, 0.1};
  std::vector<ConstraintRow> rows;
  for (int r = 0; r < 3; ++r) {
    ConstraintRow row;
    row.u.assign(9, 0.0);
    for (int c = 0; c < 3; ++c) row.u[3 * r + c] = 1.0;
    row.rhs = first_margin[r];
    rows.push_back(std::move(row));
  }
  for (int c = 0; c < 3; ++c) {
    ConstraintRow row;
    row.u.assign(9, 0.0);
    for (int r = 0; r < 3; ++r) row.u[3 * r + c] = 1.0;
    row.rhs = second_margin[c];
    rows.push_back(std::move(row));
  }
  return ConstraintModel(Alphabet(std::move(labels)), std::move(rows));
}
inline TypeVector nu_contingency() {
  std::vector<double> nu(9, 0.0);
  nu[0] = 1.0;
  return TypeVector(std::move(nu));
}
inline std::vector<double> contingency_expected_q() {
  return {0.100, 0.000, 0.000, 0.094, 0.080, 0.026, 0.306, 0.320, 0.074};
}

}  // namespace fixtures

#endif  // TESTS_SUPPORT_FIXTURES_HPP
