#ifndef SIMPLEX_MLE_SIMPLEX_MLE_HPP
#define SIMPLEX_MLE_SIMPLEX_MLE_HPP

#include "simplex_mle/conjugate.hpp"
#include "simplex_mle/constraints.hpp"
#include "simplex_mle/duals.hpp"
#include "simplex_mle/elcompare.hpp"
#include "simplex_mle/geometry.hpp"
#include "simplex_mle/likelihood.hpp"
#include "simplex_mle/lp.hpp"
#include "simplex_mle/pp.hpp"
#include "simplex_mle/types.hpp"

#endif  // SIMPLEX_MLE_SIMPLEX_MLE_HPP
