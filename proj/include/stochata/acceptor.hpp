#pragma once

// Stochastic acceptors A = (S, Σ, P, π, f) and their cut-point languages
// L_{A,λ} = { x : π P(x) f > λ }.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "stochata/automaton.hpp"
#include "stochata/budget.hpp"

namespace stochata {

class StochasticAcceptor {
 public:
  /// matrices[a] is P(a). Shapes are checked here; probability laws by
  /// validate_acceptor().
  StochasticAcceptor(std::vector<std::string> states, std::vector<std::string> inputs,
                     std::vector<RatMatrix> matrices, RatVector initial, RatVector final);

  std::size_t num_states() const { return states_.size(); }
  std::size_t num_inputs() const { return inputs_.size(); }
  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& inputs() const { return inputs_; }
  const std::vector<RatMatrix>& matrices() const { return matrices_; }
  const RatMatrix& matrix(Symbol a) const { return matrices_.at(a); }
  const RatVector& initial() const { return initial_; }
  const RatVector& final() const { return final_; }
  bool is_final(std::size_t state) const { return final_[state].is_one(); }

  friend bool operator==(const StochasticAcceptor&, const StochasticAcceptor&) = default;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> inputs_;
  std::vector<RatMatrix> matrices_;
  RatVector initial_;
  RatVector final_;
};

/// Cut point λ with 0 <= λ <= 1; the constructor throws std::invalid_argument
/// outside that range.
class CutPoint {
 public:
  explicit CutPoint(Rational value);
  const Rational& value() const { return value_; }

 private:
  Rational value_;
};

struct AcceptorReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Empty state set or alphabet throws std::invalid_argument.
AcceptorReport validate_acceptor(const StochasticAcceptor& a);
void require_valid(const StochasticAcceptor& a);

/// π P(x) as a row vector.
RatVector state_vector(const StochasticAcceptor& a, const Word& x);
/// π P(x_1)...P(x_k) f; the empty word gives π f.
Rational accept_prob(const StochasticAcceptor& a, const Word& x);
bool in_language(const StochasticAcceptor& a, const CutPoint& lambda, const Word& x);

struct LanguageSample {
  std::size_t max_len = 0;
  std::vector<Word> accepted;            // shortlex order
  std::vector<Rational> probabilities;   // parallel to accepted
};

/// Visits every word of length <= max_len in shortlex order together with
/// π P(x). Throws std::length_error when the word count exceeds budget.
template <typename Visit>
void for_each_word(const StochasticAcceptor& a, std::size_t max_len, std::size_t budget,
                   Visit&& visit);

LanguageSample enumerate_language(const StochasticAcceptor& a, const CutPoint& lambda,
                                  std::size_t max_len, std::size_t budget = default_budget());

bool is_deterministic_acceptor(const StochasticAcceptor& a);

/// Subset construction on supports. By default only subsets reachable from
/// the support of π are built, in breadth-first discovery order; with
/// full_powerset all 2^n subsets appear in bitmask order (bit i is state i).
/// Throws std::length_error when n exceeds max_states.
StochasticAcceptor determinize_zero(const StochasticAcceptor& a, bool full_powerset = false,
                                    std::size_t max_states = 16);

/// Deterministic acceptor B with a single initial state and L_{A,λ} = L_{B,0}.
/// Requires is_deterministic_acceptor(a). States are tuples of component
/// states, one component per initial state with positive weight.
StochasticAcceptor dfa_cutpoint_to_zero(const StochasticAcceptor& a, const CutPoint& lambda,
                                        std::size_t max_states = 1u << 16);

/// Acceptor B with L_{A,λ} = L_{B,μ}; requires 0 < μ < 1.
StochasticAcceptor rescale_cutpoint(const StochasticAcceptor& a, const CutPoint& lambda,
                                    const Rational& mu);

/// Adds a start state s0 carrying π P(a) as its successor row, so that the
/// initial distribution becomes a single state. Language at λ is unchanged.
StochasticAcceptor normalize_initial(const StochasticAcceptor& a, const CutPoint& lambda);

/// p-adic acceptor over {0, ..., p-1}: π P(x_1...x_k) f = 0.x_k...x_1 in base p.
StochasticAcceptor padic(unsigned p);

struct GapEstimate {
  Rational lambda;
  std::size_t max_len = 0;
  Rational gap;   // min |π P(x) f - λ| over scanned words
  Word witness;   // first word in shortlex order attaining it
};

/// Upper bound on the isolation radius restricted to words of length <= max_len.
GapEstimate isolation_gap(const StochasticAcceptor& a, const CutPoint& lambda,
                          std::size_t max_len, std::size_t budget = default_budget());

/// Number of classes of prefixes (length <= prefix_len) under equal membership
/// of x z for all suffixes z of length <= suffix_len. A lower bound on the
/// Nerode index of L_{A,λ}.
std::size_t distinguishability_classes(const StochasticAcceptor& a, const CutPoint& lambda,
                                       std::size_t prefix_len, std::size_t suffix_len,
                                       std::size_t budget = default_budget());

template <typename Visit>
void for_each_word(const StochasticAcceptor& a, std::size_t max_len, std::size_t budget,
                   Visit&& visit) {
  if (count_words_upto(a.num_inputs(), max_len) > budget) {
    throw std::length_error("word enumeration exceeds budget of " + std::to_string(budget));
  }
  Word word;
  std::vector<RatVector> stack{a.initial()};
  // Depth-first within each length keeps lexicographic order per level.
  auto descend = [&](auto&& self, std::size_t remaining) -> void {
    if (remaining == 0) {
      visit(static_cast<const Word&>(word), static_cast<const RatVector&>(stack.back()));
      return;
    }
    for (Symbol s = 0; s < a.num_inputs(); ++s) {
      word.push_back(s);
      stack.push_back(vec_mat(stack.back(), a.matrix(s)));
      self(self, remaining - 1);
      stack.pop_back();
      word.pop_back();
    }
  };
  for (std::size_t len = 0; len <= max_len; ++len) descend(descend, len);
}

}  // namespace stochata
