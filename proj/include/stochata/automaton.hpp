#pragma once

// Stochastic transducers: per (input, output) substochastic kernels P(b|a)
// with p(b, s' | a, s) = P(b|a)[s][s'].

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "stochata/matrix.hpp"

namespace stochata {

using Symbol = std::size_t;
using Word = std::vector<Symbol>;

/// (y|x): output word y emitted while reading input word x.
struct WordPair {
  Word input;
  Word output;

  bool balanced() const { return input.size() == output.size(); }
  std::size_t length() const { return input.size(); }
  friend bool operator==(const WordPair&, const WordPair&) = default;
};

/// Row vector of state weights; nonnegative and summing to one.
class StateDistribution {
 public:
  /// Throws std::invalid_argument unless weights form a distribution.
  explicit StateDistribution(RatVector weights);
  static StateDistribution unit(std::size_t n, std::size_t state);

  const RatVector& weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  /// The distribution embedded at offset in a zero vector of length total.
  StateDistribution padded(std::size_t offset, std::size_t total) const;

  friend bool operator==(const StateDistribution&, const StateDistribution&) = default;

 private:
  RatVector weights_;
};

class StochasticAutomaton {
 public:
  /// kernels[a * outputs.size() + b] is P(b|a). Shapes are checked here;
  /// probability laws are checked by validate().
  StochasticAutomaton(std::vector<std::string> states, std::vector<std::string> inputs,
                      std::vector<std::string> outputs, std::vector<RatMatrix> kernels);

  std::size_t num_states() const { return states_.size(); }
  std::size_t num_inputs() const { return inputs_.size(); }
  std::size_t num_outputs() const { return outputs_.size(); }

  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& inputs() const { return inputs_; }
  const std::vector<std::string>& outputs() const { return outputs_; }
  const std::vector<RatMatrix>& kernels() const { return kernels_; }

  const RatMatrix& kernel(Symbol input, Symbol output) const;
  /// p(b, s' | a, s)
  const Rational& prob(Symbol output, std::size_t to, Symbol input, std::size_t from) const {
    return kernel(input, output)(from, to);
  }

  /// Index lookups; throw std::out_of_range naming the unknown symbol.
  Symbol input_index(std::string_view symbol) const;
  Symbol output_index(std::string_view symbol) const;
  std::size_t state_index(std::string_view name) const;

  bool same_alphabets(const StochasticAutomaton& other) const;

  friend bool operator==(const StochasticAutomaton&, const StochasticAutomaton&) = default;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  std::vector<RatMatrix> kernels_;
};

struct ValidationReport {
  struct Violation {
    std::string message;
    std::size_t input = 0;
    std::size_t state = 0;
    Rational mass;
  };
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks nonnegativity and that every (a, s) row distributes unit mass over
/// (b, s'). Empty state set or alphabets throw std::invalid_argument.
ValidationReport validate(const StochasticAutomaton& a);

/// Validates and throws std::invalid_argument listing the first violation.
void require_valid(const StochasticAutomaton& a);

/// P(y|x). Unequal lengths give the zero matrix; empty words give I.
RatMatrix word_matrix(const StochasticAutomaton& a, const Word& x, const Word& y);
inline RatMatrix word_matrix(const StochasticAutomaton& a, const WordPair& w) {
  return word_matrix(a, w.input, w.output);
}

/// P(a) = sum_b P(b|a).
RatMatrix symbol_matrix(const StochasticAutomaton& a, Symbol input);
/// P(x) = P(x_1)...P(x_k).
RatMatrix input_matrix(const StochasticAutomaton& a, const Word& x);

struct ResultVector {
  RatVector values;
  WordPair label;
};

/// eta(y|x) = P(y|x) * 1.
ResultVector result_vector(const StochasticAutomaton& a, const Word& x, const Word& y);
inline ResultVector result_vector(const StochasticAutomaton& a, const WordPair& w) {
  return result_vector(a, w.input, w.output);
}

/// pi * eta(y|x)
Rational dist_prob(const StochasticAutomaton& a, const StateDistribution& pi, const Word& x,
                   const Word& y);

/// Binary symmetric channel with crossover probability p in [0, 1/2].
StochasticAutomaton bsc(const Rational& p);

/// Arbitrarily varying channel: p(b, s' | a, s) = emission[a](s, b) * drift(s, s').
/// emission[a] is |S| x |outputs| with distribution rows; drift is stochastic.
StochasticAutomaton avc(std::vector<std::string> inputs, std::vector<std::string> outputs,
                        const std::vector<RatMatrix>& emission, const RatMatrix& drift);

/// Splits text into symbols: comma or space separated when either occurs,
/// otherwise one symbol per character. Empty text is the empty word.
Word parse_word(const std::vector<std::string>& alphabet, std::string_view text);
std::string format_word(const std::vector<std::string>& alphabet, const Word& w);
std::string format_pair(const StochasticAutomaton& a, const WordPair& w);

}  // namespace stochata
