#ifndef TESTS_SUPPORT_ORACLES_HPP
#define TESTS_SUPPORT_ORACLES_HPP

#include <optional>
#include <random>
#include <vector>

#include "simplex_mle/simplex_mle.hpp"

// Independent oracles for the solver tests: plain enumeration and grids,
// no shared code with the solution paths they check.
namespace oracles {

using simplex_mle::ConstraintModel;
using simplex_mle::TypeVector;

struct GridMinimum {
  double value = 0.0;
  std::vector<double> q;
};

// Brute-force minimizer of the inaccuracy over a 3-letter feasible set:
// coarse grid over (q1, q2) with a feasibility band, then two local
// refinements. Good to ~1e-6 in value on the models the tests generate.
GridMinimum grid_primal_minimum_3(const ConstraintModel& model, const TypeVector& nu);

// sup over a fine simplex grid of <q,z> - ell(q); the direct reading of the
// conjugate's definition, m = 3 only
double grid_conjugate_3(const TypeVector& nu, const std::vector<double>& z, double step = 1e-3);

enum class GridVerdict { HSet, ZSet, Regular, Ambiguous };

// Exhaustive check of the active-restricted set on a fine grid of the
// active simplex (m_a <= 3): does a feasible point exist, and is some
// active coordinate pinned at zero on all of them?
GridVerdict grid_classify_3(const ConstraintModel& model, const TypeVector& nu);

struct RandomModel {
  ConstraintModel model;
  TypeVector nu;
};

// Random 3-letter single-constraint models with full support and an
// unambiguous grid classification.
RandomModel random_single_constraint_model(std::mt19937& rng);

// Random type on m letters; zero_count entries forced passive.
TypeVector random_type(std::mt19937& rng, std::size_t m, std::size_t zero_count);

// Random point of the m-simplex.
std::vector<double> random_simplex_point(std::mt19937& rng, std::size_t m);

// Vertices of {q in simplex(dim), <q,u> rel 0}: all basic solutions of the
// tight systems, dim <= 3. Used to cross-check LP answers.
std::vector<std::vector<double>> constrained_simplex_vertices(const std::vector<double>& u,
                                                              bool equality);

}  // namespace oracles

#endif  // TESTS_SUPPORT_ORACLES_HPP
