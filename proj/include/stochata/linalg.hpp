#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "stochata/matrix.hpp"

namespace stochata {

/// Exact rank over the rationals (fraction-free Bareiss elimination).
std::size_t rank(const RatMatrix& m);

/// Coefficients c with sum_i c_i * basis_i == v, or nullopt when v is not in
/// the span. Free coordinates of a dependent basis are set to zero.
std::optional<RatVector> in_span(const RatVector& v, const std::vector<RatVector>& basis);

/// Equality constraints over a probability vector x (x >= 0, sum x = 1 are
/// implicit).
struct FeasibilityProblem {
  struct Constraint {
    RatVector coefficients;
    Rational rhs;
  };

  std::size_t variables = 0;
  std::vector<Constraint> constraints;

  void add(RatVector coefficients, Rational rhs);
};

/// Exact phase-one simplex with Bland's rule. Returns a probability vector
/// satisfying every constraint, or nullopt when none exists. Which solution
/// is returned when several exist is fixed by the pivot order only.
std::optional<RatVector> feasible_distribution(const FeasibilityProblem& problem);

/// Weights lambda >= 0, sum lambda = 1 with sum lambda_i * others_i == target.
std::optional<RatVector> convex_membership(const RatVector& target,
                                           const std::vector<RatVector>& others);

bool is_permutation_matrix(const RatMatrix& m);

}  // namespace stochata
