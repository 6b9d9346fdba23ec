#include "stochata/acceptor.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>

namespace stochata {

StochasticAcceptor::StochasticAcceptor(std::vector<std::string> states,
                                       std::vector<std::string> inputs,
                                       std::vector<RatMatrix> matrices, RatVector initial,
                                       RatVector final)
    : states_(std::move(states)),
      inputs_(std::move(inputs)),
      matrices_(std::move(matrices)),
      initial_(std::move(initial)),
      final_(std::move(final)) {
  const std::size_t n = states_.size();
  if (matrices_.size() != inputs_.size()) {
    throw std::invalid_argument("acceptor needs one matrix per input symbol");
  }
  for (std::size_t a = 0; a < matrices_.size(); ++a) {
    if (matrices_[a].rows() != n || matrices_[a].cols() != n) {
      throw std::invalid_argument("P(" + inputs_[a] + ") is not " + std::to_string(n) + "x" +
                                  std::to_string(n));
    }
  }
  if (initial_.size() != n) throw std::invalid_argument("initial vector has wrong length");
  if (final_.size() != n) throw std::invalid_argument("final vector has wrong length");
  auto unique = [](std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  if (!unique(states_)) throw std::invalid_argument("duplicate state name");
  if (!unique(inputs_)) throw std::invalid_argument("duplicate input symbol");
}

CutPoint::CutPoint(Rational value) : value_(std::move(value)) {
  if (value_ < Rational(0) || value_ > Rational(1)) {
    throw std::invalid_argument("cut point " + value_.str() + " outside [0, 1]");
  }
}

AcceptorReport validate_acceptor(const StochasticAcceptor& a) {
  if (a.num_states() == 0) throw std::invalid_argument("acceptor has no states");
  if (a.num_inputs() == 0) throw std::invalid_argument("acceptor has an empty input alphabet");
  AcceptorReport r;
  for (Symbol s = 0; s < a.num_inputs(); ++s) {
    const auto& m = a.matrix(s);
    for (std::size_t i = 0; i < a.num_states(); ++i) {
      bool negative = false;
      for (std::size_t j = 0; j < a.num_states(); ++j) negative |= m(i, j).is_negative();
      if (negative) {
        r.violations.push_back("P(" + a.inputs()[s] + ") row " + a.states()[i] +
                               " has a negative entry");
      }
      const Rational mass = m.row_sum(i);
      if (!mass.is_one()) {
        r.violations.push_back("P(" + a.inputs()[s] + ") row " + a.states()[i] + " has mass " +
                               mass.str());
      }
    }
  }
  const auto& pi = a.initial();
  if (std::any_of(pi.begin(), pi.end(), [](const Rational& x) { return x.is_negative(); })) {
    r.violations.push_back("initial distribution has a negative entry");
  }
  const Rational mass = sum(pi);
  if (!mass.is_one()) r.violations.push_back("initial distribution has mass " + mass.str());
  for (std::size_t i = 0; i < a.num_states(); ++i) {
    const auto& f = a.final()[i];
    if (!f.is_zero() && !f.is_one()) {
      r.violations.push_back("final entry for " + a.states()[i] + " is " + f.str() +
                             ", expected 0 or 1");
    }
  }
  return r;
}

void require_valid(const StochasticAcceptor& a) {
  const auto r = validate_acceptor(a);
  if (!r.ok()) throw std::invalid_argument(r.violations.front());
}

RatVector state_vector(const StochasticAcceptor& a, const Word& x) {
  RatVector v = a.initial();
  for (Symbol s : x) {
    if (s >= a.num_inputs()) throw std::out_of_range("input symbol index out of range");
    v = vec_mat(v, a.matrix(s));
  }
  return v;
}

Rational accept_prob(const StochasticAcceptor& a, const Word& x) {
  return dot(state_vector(a, x), a.final());
}

bool in_language(const StochasticAcceptor& a, const CutPoint& lambda, const Word& x) {
  return accept_prob(a, x) > lambda.value();
}

LanguageSample enumerate_language(const StochasticAcceptor& a, const CutPoint& lambda,
                                  std::size_t max_len, std::size_t budget) {
  LanguageSample out;
  out.max_len = max_len;
  for_each_word(a, max_len, budget, [&](const Word& w, const RatVector& v) {
    Rational p = dot(v, a.final());
    if (p > lambda.value()) {
      out.accepted.push_back(w);
      out.probabilities.push_back(std::move(p));
    }
  });
  return out;
}

bool is_deterministic_acceptor(const StochasticAcceptor& a) {
  for (const auto& m : a.matrices()) {
    if (!m.is_zero_one()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (!m.row_sum(i).is_one()) return false;
  }
  return true;
}

namespace {

using Mask = std::uint64_t;

std::string subset_name(const StochasticAcceptor& a, Mask m) {
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; i < a.num_states(); ++i) {
    if (!(m >> i & 1U)) continue;
    if (!first) s += ",";
    s += a.states()[i];
    first = false;
  }
  return s + "}";
}

Mask successor_support(const StochasticAcceptor& a, Symbol sym, Mask from) {
  Mask to = 0;
  const auto& m = a.matrix(sym);
  for (std::size_t i = 0; i < a.num_states(); ++i) {
    if (!(from >> i & 1U)) continue;
    for (std::size_t j = 0; j < a.num_states(); ++j)
      if (!m(i, j).is_zero()) to |= Mask{1} << j;
  }
  return to;
}

// Builds a deterministic acceptor from a successor function over keyed
// states discovered breadth first from `start`.
template <typename Key, typename Next, typename Name, typename Accepting>
StochasticAcceptor explore(const std::vector<std::string>& inputs, const Key& start,
                           std::size_t max_states, Next&& next, Name&& name,
                           Accepting&& accepting) {
  std::map<Key, std::size_t> index{{start, 0}};
  std::vector<Key> keys{start};
  std::vector<std::vector<std::size_t>> delta(inputs.size());
  for (std::size_t k = 0; k < keys.size(); ++k) {
    for (Symbol s = 0; s < inputs.size(); ++s) {
      Key succ = next(s, keys[k]);
      auto [it, inserted] = index.emplace(succ, keys.size());
      if (inserted) {
        if (keys.size() >= max_states) {
          throw std::length_error("construction exceeds " + std::to_string(max_states) +
                                  " states");
        }
        keys.push_back(std::move(succ));
      }
      delta[s].push_back(it->second);
    }
  }
  const std::size_t n = keys.size();
  std::vector<std::string> names;
  RatVector final(n);
  for (std::size_t k = 0; k < n; ++k) {
    names.push_back(name(keys[k]));
    if (accepting(keys[k])) final[k] = Rational(1);
  }
  std::vector<RatMatrix> matrices;
  for (Symbol s = 0; s < inputs.size(); ++s) {
    RatMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, delta[s][k]) = Rational(1);
    matrices.push_back(std::move(m));
  }
  return {std::move(names), inputs, std::move(matrices), unit_vector(n, 0), std::move(final)};
}

std::string fresh_name(const std::vector<std::string>& taken, std::string base) {
  while (std::find(taken.begin(), taken.end(), base) != taken.end()) base += "'";
  return base;
}

}  // namespace

StochasticAcceptor determinize_zero(const StochasticAcceptor& a, bool full_powerset,
                                    std::size_t max_states) {
  const std::size_t n = a.num_states();
  if (n > max_states || n >= 63) {
    throw std::length_error("determinize_zero: " + std::to_string(n) + " states exceed cap " +
                            std::to_string(max_states));
  }
  Mask finals = 0;
  Mask start = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a.is_final(i)) finals |= Mask{1} << i;
    if (!a.initial()[i].is_zero()) start |= Mask{1} << i;
  }
  if (!full_powerset) {
    return explore(
        a.inputs(), start, std::size_t{1} << n,
        [&](Symbol s, Mask m) { return successor_support(a, s, m); },
        [&](Mask m) { return subset_name(a, m); }, [&](Mask m) { return (m & finals) != 0; });
  }
  const std::size_t count = std::size_t{1} << n;
  std::vector<std::string> names;
  RatVector final(count);
  for (Mask m = 0; m < count; ++m) {
    names.push_back(subset_name(a, m));
    if (m & finals) final[m] = Rational(1);
  }
  std::vector<RatMatrix> matrices;
  for (Symbol s = 0; s < a.num_inputs(); ++s) {
    RatMatrix p(count, count);
    for (Mask m = 0; m < count; ++m) p(m, successor_support(a, s, m)) = Rational(1);
    matrices.push_back(std::move(p));
  }
  return {std::move(names), a.inputs(), std::move(matrices), unit_vector(count, start),
          std::move(final)};
}

StochasticAcceptor dfa_cutpoint_to_zero(const StochasticAcceptor& a, const CutPoint& lambda,
                                        std::size_t max_states) {
  if (!is_deterministic_acceptor(a)) {
    throw std::invalid_argument("dfa_cutpoint_to_zero needs a deterministic acceptor");
  }
  using Tuple = std::vector<std::size_t>;
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < a.num_states(); ++i)
    if (!a.initial()[i].is_zero()) support.push_back(i);
  // successor of state i under s in a deterministic matrix
  auto step = [&](Symbol s, std::size_t i) {
    const auto& m = a.matrix(s);
    for (std::size_t j = 0; j < a.num_states(); ++j)
      if (m(i, j).is_one()) return j;
    return a.num_states();
  };
  return explore(
      a.inputs(), Tuple(support), max_states,
      [&](Symbol s, const Tuple& t) {
        Tuple out(t.size());
        for (std::size_t k = 0; k < t.size(); ++k) out[k] = step(s, t[k]);
        return out;
      },
      [&](const Tuple& t) {
        std::string name = "(";
        for (std::size_t k = 0; k < t.size(); ++k) {
          if (k) name += ",";
          name += a.states()[t[k]];
        }
        return name + ")";
      },
      [&](const Tuple& t) {
        Rational mass;
        for (std::size_t k = 0; k < t.size(); ++k)
          if (a.is_final(t[k])) mass += a.initial()[support[k]];
        return mass > lambda.value();
      });
}

StochasticAcceptor rescale_cutpoint(const StochasticAcceptor& a, const CutPoint& lambda,
                                    const Rational& mu) {
  if (mu <= Rational(0) || mu >= Rational(1)) {
    throw std::invalid_argument("target cut point " + mu.str() + " must lie strictly in (0, 1)");
  }
  const Rational& l = lambda.value();
  // Acceptance probabilities of the determinized machine are 0 or 1, so its
  // language at λ = 0 is its language at every μ in (0, 1).
  if (l.is_zero()) return determinize_zero(a);
  if (l.is_one()) {
    std::vector<RatMatrix> m(a.num_inputs(), RatMatrix::identity(1));
    return {{"sink"}, a.inputs(), std::move(m), {Rational(1)}, {Rational(0)}};
  }

  Rational nu;
  Rational sink_final;
  if (mu <= l) {
    nu = Rational(1) - mu / l;
  } else {
    nu = (mu - l) / (Rational(1) - l);
    sink_final = Rational(1);
  }
  const std::size_t n = a.num_states();
  std::vector<RatMatrix> matrices;
  for (const auto& p : a.matrices()) {
    RatMatrix m(n + 1, n + 1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = p(i, j);
    m(n, n) = Rational(1);
    matrices.push_back(std::move(m));
  }
  RatVector pi(n + 1);
  for (std::size_t i = 0; i < n; ++i) pi[i] = (Rational(1) - nu) * a.initial()[i];
  pi[n] = nu;
  RatVector f = a.final();
  f.push_back(sink_final);
  auto names = a.states();
  names.push_back(fresh_name(names, "sink"));
  return {std::move(names), a.inputs(), std::move(matrices), std::move(pi), std::move(f)};
}

StochasticAcceptor normalize_initial(const StochasticAcceptor& a, const CutPoint& lambda) {
  const std::size_t n = a.num_states();
  std::vector<RatMatrix> matrices;
  for (const auto& p : a.matrices()) {
    RatMatrix m(n + 1, n + 1);
    const RatVector top = vec_mat(a.initial(), p);
    for (std::size_t j = 0; j < n; ++j) m(0, j + 1) = top[j];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i + 1, j + 1) = p(i, j);
    matrices.push_back(std::move(m));
  }
  RatVector f{dot(a.initial(), a.final()) > lambda.value() ? Rational(1) : Rational(0)};
  f.insert(f.end(), a.final().begin(), a.final().end());
  std::vector<std::string> names{fresh_name(a.states(), "s0")};
  names.insert(names.end(), a.states().begin(), a.states().end());
  return {std::move(names), a.inputs(), std::move(matrices), unit_vector(n + 1, 0), std::move(f)};
}

StochasticAcceptor padic(unsigned p) {
  if (p < 2) throw std::invalid_argument("p-adic acceptor needs p >= 2");
  const Rational base(static_cast<long>(p));
  std::vector<std::string> inputs;
  std::vector<RatMatrix> matrices;
  for (unsigned d = 0; d < p; ++d) {
    inputs.push_back(std::to_string(d));
    const Rational lo = Rational(static_cast<long>(d)) / base;
    const Rational hi = Rational(static_cast<long>(d) + 1) / base;
    matrices.push_back(RatMatrix{{Rational(1) - lo, lo}, {Rational(1) - hi, hi}});
  }
  return {{"s1", "s2"}, std::move(inputs), std::move(matrices), {Rational(1), Rational(0)},
          {Rational(0), Rational(1)}};
}

GapEstimate isolation_gap(const StochasticAcceptor& a, const CutPoint& lambda,
                          std::size_t max_len, std::size_t budget) {
  GapEstimate g;
  g.lambda = lambda.value();
  g.max_len = max_len;
  bool seen = false;
  for_each_word(a, max_len, budget, [&](const Word& w, const RatVector& v) {
    Rational d = (dot(v, a.final()) - lambda.value()).abs();
    if (!seen || d < g.gap) {
      g.gap = std::move(d);
      g.witness = w;
      seen = true;
    }
  });
  return g;
}

std::size_t distinguishability_classes(const StochasticAcceptor& a, const CutPoint& lambda,
                                       std::size_t prefix_len, std::size_t suffix_len,
                                       std::size_t budget) {
  const std::size_t prefixes = count_words_upto(a.num_inputs(), prefix_len);
  const std::size_t suffixes = count_words_upto(a.num_inputs(), suffix_len);
  if (prefixes > budget || suffixes > budget || prefixes * suffixes / suffixes != prefixes ||
      prefixes * suffixes > budget) {
    throw std::length_error("prefix x suffix table exceeds budget of " + std::to_string(budget));
  }
  // P(z) f for every suffix, built by prepending symbols: P(az) f = P(a) P(z) f.
  std::vector<RatVector> columns;
  {
    std::vector<RatVector> level{a.final()};
    columns = level;
    for (std::size_t len = 1; len <= suffix_len; ++len) {
      std::vector<RatVector> next;
      for (Symbol s = 0; s < a.num_inputs(); ++s)
        for (const auto& c : level) next.push_back(mat_vec(a.matrix(s), c));
      columns.insert(columns.end(), next.begin(), next.end());
      level = std::move(next);
    }
  }
  std::map<std::vector<bool>, std::size_t> classes;
  for_each_word(a, prefix_len, budget, [&](const Word&, const RatVector& v) {
    std::vector<bool> signature;
    signature.reserve(columns.size());
    for (const auto& c : columns) signature.push_back(dot(v, c) > lambda.value());
    classes.emplace(std::move(signature), classes.size());
  });
  return classes.size();
}

}  // namespace stochata
