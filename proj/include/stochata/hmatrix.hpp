#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "stochata/automaton.hpp"
#include "stochata/budget.hpp"

namespace stochata {

/// Basis of the result-vector space: column j is eta(labels[j]). Labels are
/// chosen in shortlex order over generators (b|a), output index major; the
/// first label is (ε|ε).
struct HMatrix {
  RatMatrix matrix;
  std::vector<WordPair> labels;

  std::size_t rows() const { return matrix.rows(); }
  std::size_t dimension() const { return matrix.cols(); }
  RatVector row(std::size_t i) const { return matrix.row(i); }
};

HMatrix build_h(const StochasticAutomaton& a);

/// pi H == pi' H
bool dist_equiv(const StochasticAutomaton& a, const StateDistribution& pi,
                const StateDistribution& pi2);
bool states_equiv(const StochasticAutomaton& a, std::size_t i, std::size_t j);

/// Agreement of eta^pi_A and eta^pi'_B on every (y|x) with |x| = |y| <= k, by
/// enumeration. Throws std::length_error when |Σ|^k |Ω|^k exceeds budget.
bool k_equiv(const StochasticAutomaton& a, const StateDistribution& pi,
             const StochasticAutomaton& b, const StateDistribution& pi2, std::size_t k,
             std::size_t budget = default_budget());

/// Block-diagonal kernels over the disjoint union of states (A first).
StochasticAutomaton direct_sum(const StochasticAutomaton& a, const StochasticAutomaton& b);

bool cross_equiv(const StochasticAutomaton& a, const StateDistribution& pi_a,
                 const StochasticAutomaton& b, const StateDistribution& pi_b);

/// Row j of q is a distribution over A's states equivalent to state j of B.
struct CoverCertificate {
  RatMatrix q;
  std::vector<bool> row_confirmed;
};

/// Some stochastic Q with eta_B = Q eta_A, or nullopt when A does not cover B.
std::optional<CoverCertificate> covers(const StochasticAutomaton& a, const StochasticAutomaton& b);
bool automata_equivalent(const StochasticAutomaton& a, const StochasticAutomaton& b);
/// The sets of state behaviours of A and B coincide.
bool s_equivalent(const StochasticAutomaton& a, const StochasticAutomaton& b);

/// Q*H with columns dependent on earlier ones removed (labels follow).
HMatrix h_image(const RatMatrix& q, const HMatrix& h);

}  // namespace stochata
