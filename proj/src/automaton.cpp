#include "stochata/automaton.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace stochata {

namespace {

std::size_t find_symbol(const std::vector<std::string>& names, std::string_view s,
                        const char* what) {
  auto it = std::find(names.begin(), names.end(), s);
  if (it == names.end()) {
    throw std::out_of_range(std::string("unknown ") + what + " '" + std::string(s) + "'");
  }
  return static_cast<std::size_t>(it - names.begin());
}

void check_distinct(const std::vector<std::string>& names, const char* what) {
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j]) {
        throw std::invalid_argument(std::string("duplicate ") + what + " '" + names[i] + "'");
      }
}

bool single_chars(const std::vector<std::string>& alphabet) {
  return std::all_of(alphabet.begin(), alphabet.end(),
                     [](const std::string& s) { return s.size() == 1; });
}

}  // namespace

StateDistribution::StateDistribution(RatVector weights) : weights_(std::move(weights)) {
  for (const auto& w : weights_) {
    if (w.is_negative()) throw std::invalid_argument("state distribution has a negative weight");
  }
  if (!sum(weights_).is_one()) {
    throw std::invalid_argument("state distribution does not sum to 1");
  }
}

StateDistribution StateDistribution::unit(std::size_t n, std::size_t state) {
  if (state >= n) throw std::out_of_range("state index out of range");
  return StateDistribution(unit_vector(n, state));
}

StateDistribution StateDistribution::padded(std::size_t offset, std::size_t total) const {
  if (offset + weights_.size() > total) throw std::out_of_range("padding too small");
  RatVector v(total);
  std::copy(weights_.begin(), weights_.end(), v.begin() + static_cast<std::ptrdiff_t>(offset));
  return StateDistribution(std::move(v));
}

StochasticAutomaton::StochasticAutomaton(std::vector<std::string> states,
                                         std::vector<std::string> inputs,
                                         std::vector<std::string> outputs,
                                         std::vector<RatMatrix> kernels)
    : states_(std::move(states)),
      inputs_(std::move(inputs)),
      outputs_(std::move(outputs)),
      kernels_(std::move(kernels)) {
  check_distinct(states_, "state");
  check_distinct(inputs_, "input symbol");
  check_distinct(outputs_, "output symbol");
  if (kernels_.size() != inputs_.size() * outputs_.size()) {
    throw std::invalid_argument("expected one kernel per (input, output) pair");
  }
  for (const auto& k : kernels_) {
    if (k.rows() != states_.size() || k.cols() != states_.size()) {
      throw std::invalid_argument("kernel shape does not match the state count");
    }
  }
}

const RatMatrix& StochasticAutomaton::kernel(Symbol input, Symbol output) const {
  if (input >= inputs_.size() || output >= outputs_.size()) {
    throw std::out_of_range("symbol index out of range");
  }
  return kernels_[input * outputs_.size() + output];
}

Symbol StochasticAutomaton::input_index(std::string_view symbol) const {
  return find_symbol(inputs_, symbol, "input symbol");
}
Symbol StochasticAutomaton::output_index(std::string_view symbol) const {
  return find_symbol(outputs_, symbol, "output symbol");
}
std::size_t StochasticAutomaton::state_index(std::string_view name) const {
  return find_symbol(states_, name, "state");
}

bool StochasticAutomaton::same_alphabets(const StochasticAutomaton& other) const {
  return inputs_ == other.inputs_ && outputs_ == other.outputs_;
}

ValidationReport validate(const StochasticAutomaton& a) {
  if (a.num_states() == 0) throw std::invalid_argument("automaton has no states");
  if (a.num_inputs() == 0) throw std::invalid_argument("automaton has an empty input alphabet");
  if (a.num_outputs() == 0) throw std::invalid_argument("automaton has an empty output alphabet");
  ValidationReport report;
  for (Symbol in = 0; in < a.num_inputs(); ++in) {
    for (std::size_t s = 0; s < a.num_states(); ++s) {
      Rational mass;
      bool negative = false;
      for (Symbol out = 0; out < a.num_outputs(); ++out) {
        for (const auto& p : a.kernel(in, out).row_view(s)) {
          if (p.is_negative()) negative = true;
          mass += p;
        }
      }
      if (negative) {
        report.violations.push_back({"negative probability at input '" + a.inputs()[in] +
                                         "', state '" + a.states()[s] + "'",
                                     in, s, mass});
      }
      if (!mass.is_one()) {
        report.violations.push_back({"mass " + mass.str() + " != 1 at input '" + a.inputs()[in] +
                                         "', state '" + a.states()[s] + "'",
                                     in, s, mass});
      }
    }
  }
  return report;
}

void require_valid(const StochasticAutomaton& a) {
  const auto report = validate(a);
  if (!report.ok()) throw std::invalid_argument(report.violations.front().message);
}

RatMatrix word_matrix(const StochasticAutomaton& a, const Word& x, const Word& y) {
  const std::size_t n = a.num_states();
  if (x.size() != y.size()) return RatMatrix::zeros(n, n);
  RatMatrix m = RatMatrix::identity(n);
  for (std::size_t i = 0; i < x.size(); ++i) m = m * a.kernel(x[i], y[i]);
  return m;
}

RatMatrix symbol_matrix(const StochasticAutomaton& a, Symbol input) {
  RatMatrix m(a.num_states(), a.num_states());
  for (Symbol out = 0; out < a.num_outputs(); ++out) m += a.kernel(input, out);
  return m;
}

RatMatrix input_matrix(const StochasticAutomaton& a, const Word& x) {
  RatMatrix m = RatMatrix::identity(a.num_states());
  for (Symbol s : x) m = m * symbol_matrix(a, s);
  return m;
}

ResultVector result_vector(const StochasticAutomaton& a, const Word& x, const Word& y) {
  const std::size_t n = a.num_states();
  if (x.size() != y.size()) return {RatVector(n), {x, y}};
  // Right to left: eta(by|ax) = P(b|a) * eta(y|x).
  RatVector v = ones(n);
  for (std::size_t i = x.size(); i-- > 0;) v = mat_vec(a.kernel(x[i], y[i]), v);
  return {std::move(v), {x, y}};
}

Rational dist_prob(const StochasticAutomaton& a, const StateDistribution& pi, const Word& x,
                   const Word& y) {
  if (pi.size() != a.num_states()) throw std::invalid_argument("distribution length mismatch");
  return dot(pi.weights(), result_vector(a, x, y).values);
}

StochasticAutomaton bsc(const Rational& p) {
  if (p.is_negative() || p > Rational(1, 2)) {
    throw std::invalid_argument("BSC crossover probability must lie in [0, 1/2]");
  }
  const Rational keep = Rational(1) - p;
  // kernels ordered (a=0,b=0), (0,1), (1,0), (1,1)
  std::vector<RatMatrix> k{RatMatrix{{keep}}, RatMatrix{{p}}, RatMatrix{{p}}, RatMatrix{{keep}}};
  return {{"s"}, {"0", "1"}, {"0", "1"}, std::move(k)};
}

StochasticAutomaton avc(std::vector<std::string> inputs, std::vector<std::string> outputs,
                        const std::vector<RatMatrix>& emission, const RatMatrix& drift) {
  if (!drift.is_square() || !drift.is_stochastic()) {
    throw std::invalid_argument("AVC drift must be a stochastic square matrix");
  }
  const std::size_t n = drift.rows();
  if (emission.size() != inputs.size()) {
    throw std::invalid_argument("AVC needs one emission table per input symbol");
  }
  for (const auto& e : emission) {
    if (e.rows() != n || e.cols() != outputs.size() || !e.is_stochastic()) {
      throw std::invalid_argument("AVC emission rows must be distributions over outputs");
    }
  }
  std::vector<RatMatrix> kernels;
  kernels.reserve(inputs.size() * outputs.size());
  for (std::size_t a = 0; a < inputs.size(); ++a) {
    for (std::size_t b = 0; b < outputs.size(); ++b) {
      RatMatrix k(n, n);
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) k(s, t) = emission[a](s, b) * drift(s, t);
      kernels.push_back(std::move(k));
    }
  }
  std::vector<std::string> states;
  for (std::size_t s = 0; s < n; ++s) states.push_back("s" + std::to_string(s + 1));
  return {std::move(states), std::move(inputs), std::move(outputs), std::move(kernels)};
}

Word parse_word(const std::vector<std::string>& alphabet, std::string_view text) {
  Word w;
  if (text.empty()) return w;
  const bool delimited = text.find_first_of(", ") != std::string_view::npos;
  if (delimited) {
    std::string token;
    auto flush = [&] {
      if (!token.empty()) w.push_back(find_symbol(alphabet, token, "symbol"));
      token.clear();
    };
    for (char c : text) {
      if (c == ',' || c == ' ') {
        flush();
      } else {
        token.push_back(c);
      }
    }
    flush();
    return w;
  }
  for (char c : text) w.push_back(find_symbol(alphabet, std::string_view(&c, 1), "symbol"));
  return w;
}

std::string format_word(const std::vector<std::string>& alphabet, const Word& w) {
  if (w.empty()) return "ε";
  std::ostringstream os;
  const bool compact = single_chars(alphabet);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i && !compact) os << ',';
    os << alphabet.at(w[i]);
  }
  return os.str();
}

std::string format_pair(const StochasticAutomaton& a, const WordPair& w) {
  return format_word(a.outputs(), w.output) + "|" + format_word(a.inputs(), w.input);
}

}  // namespace stochata
