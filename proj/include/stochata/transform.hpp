#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "stochata/automaton.hpp"
#include "stochata/hmatrix.hpp"

namespace stochata {

/// Classes of equivalent states; blocks are ordered by their smallest member.
struct Partition {
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> representatives;

  std::size_t block_of(std::size_t state) const;
};

/// Total map from source state index to target state index.
using StateMapping = std::vector<std::size_t>;

bool is_reduced(const StochasticAutomaton& a);

/// Quotient by state equivalence. Each block uses its smallest state as
/// representative unless `preferred` names another member of that block.
/// Reduced states carry their representative's name.
std::pair<StochasticAutomaton, Partition> reduce(const StochasticAutomaton& a,
                                                 std::span<const std::size_t> preferred = {});

bool is_minimal(const StochasticAutomaton& a);
/// Removes, one at a time, the lowest-index state whose H row is a convex
/// combination of the others, folding its incoming mass onto those others.
StochasticAutomaton minimize(const StochasticAutomaton& a);
bool is_strongly_reduced(const StochasticAutomaton& a);

/// gamma(b, a, s): the unique successor for an observed output. Partial; at()
/// outside the domain throws std::out_of_range.
class ObservationMap {
 public:
  void set(Symbol output, Symbol input, std::size_t state, std::size_t next);
  bool defined(Symbol output, Symbol input, std::size_t state) const;
  std::size_t at(Symbol output, Symbol input, std::size_t state) const;
  std::size_t size() const { return map_.size(); }
  const auto& entries() const { return map_; }

 private:
  std::map<std::tuple<Symbol, Symbol, std::size_t>, std::size_t> map_;
};

/// Indexed [input][state].
using TransitionTable = std::vector<std::vector<std::size_t>>;
using OutputTable = std::vector<std::vector<Symbol>>;
/// Indexed [input][state]; each entry a distribution.
using ConditionalTable = std::vector<std::vector<RatVector>>;

std::optional<ObservationMap> is_observable(const StochasticAutomaton& a);
std::optional<TransitionTable> is_state_determined(const StochasticAutomaton& a);
std::optional<OutputTable> is_output_determined(const StochasticAutomaton& a);
std::optional<std::pair<TransitionTable, OutputTable>> is_determined(const StochasticAutomaton& a);

struct MealyFactors {
  ConditionalTable output;      // p1(b | a, s)
  ConditionalTable transition;  // p2(s' | a, s)
};
std::optional<MealyFactors> mealy_factorization(const StochasticAutomaton& a);

struct MooreFactors {
  std::vector<RatVector> emission;  // mu(b | s'), indexed by s'
  ConditionalTable transition;      // p'(s' | a, s)
};
std::optional<MooreFactors> moore_factorization(const StochasticAutomaton& a);

/// States Ω × S ordered output-major, named "(b,s)"; phi maps (b, s) to s.
std::pair<StochasticAutomaton, StateMapping> to_moore(const StochasticAutomaton& a);

bool check_s_homomorphism(const StochasticAutomaton& a, const StochasticAutomaton& b,
                          const StateMapping& phi);

/// Lexicographically smallest bijection preserving every kernel entry.
/// Returns nullopt for differing state counts or more than max_states states.
std::optional<StateMapping> is_isomorphic(const StochasticAutomaton& a,
                                          const StochasticAutomaton& b,
                                          std::size_t max_states = 8);

/// Accepts candidate kernels (ordered like StochasticAutomaton::kernels())
/// when P_A(b|a) H_A == P_cand(b|a) H_A for every pair.
std::optional<StochasticAutomaton> th4_check(const StochasticAutomaton& a,
                                             const std::vector<RatMatrix>& candidates);

struct ClassificationReport {
  bool reduced = false;
  bool minimal = false;
  bool strongly_reduced = false;
  bool observable = false;
  bool state_determined = false;
  bool output_determined = false;
  bool determined = false;
  bool mealy = false;
  bool moore = false;
  std::size_t simplex_dimension = 0;

  std::optional<ObservationMap> gamma;
  std::optional<TransitionTable> delta;
  std::optional<OutputTable> lambda;
  std::optional<MealyFactors> mealy_factors;
  std::optional<MooreFactors> moore_factors;
};

ClassificationReport classify(const StochasticAutomaton& a);

}  // namespace stochata
