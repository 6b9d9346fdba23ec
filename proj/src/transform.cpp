#include "stochata/transform.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "stochata/linalg.hpp"

namespace stochata {

std::size_t Partition::block_of(std::size_t state) const {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (std::find(blocks[i].begin(), blocks[i].end(), state) != blocks[i].end()) return i;
  }
  throw std::out_of_range("state not covered by partition");
}

namespace {

Partition equivalence_classes(const HMatrix& h) {
  Partition p;
  std::vector<RatVector> class_rows;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    RatVector r = h.row(i);
    auto it = std::find(class_rows.begin(), class_rows.end(), r);
    if (it == class_rows.end()) {
      class_rows.push_back(std::move(r));
      p.blocks.push_back({i});
      p.representatives.push_back(i);
    } else {
      p.blocks[static_cast<std::size_t>(it - class_rows.begin())].push_back(i);
    }
  }
  return p;
}

// Drops state `victim`, moving its incoming mass onto the remaining states
// with the given weights (indexed over all states; weights[victim] == 0).
StochasticAutomaton eliminate_state(const StochasticAutomaton& a, std::size_t victim,
                                    const RatVector& weights) {
  const std::size_t n = a.num_states();
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (i != victim) keep.push_back(i);
  std::vector<RatMatrix> kernels;
  for (const auto& k : a.kernels()) {
    RatMatrix out(keep.size(), keep.size());
    for (std::size_t r = 0; r < keep.size(); ++r) {
      for (std::size_t c = 0; c < keep.size(); ++c) {
        out(r, c) = k(keep[r], keep[c]) + weights[keep[c]] * k(keep[r], victim);
      }
    }
    kernels.push_back(std::move(out));
  }
  std::vector<std::string> names;
  for (auto i : keep) names.push_back(a.states()[i]);
  return {std::move(names), a.inputs(), a.outputs(), std::move(kernels)};
}

// Weights over all states reproducing row i from the others, if any.
std::optional<RatVector> convex_witness(const HMatrix& h, std::size_t i) {
  const std::size_t n = h.rows();
  if (n < 2) return std::nullopt;
  std::vector<RatVector> others;
  std::vector<std::size_t> index;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    others.push_back(h.row(j));
    index.push_back(j);
  }
  auto w = convex_membership(h.row(i), others);
  if (!w) return std::nullopt;
  RatVector full(n);
  for (std::size_t k = 0; k < index.size(); ++k) full[index[k]] = (*w)[k];
  return full;
}

}  // namespace

bool is_reduced(const StochasticAutomaton& a) {
  const HMatrix h = build_h(a);
  return equivalence_classes(h).blocks.size() == a.num_states();
}

std::pair<StochasticAutomaton, Partition> reduce(const StochasticAutomaton& a,
                                                 std::span<const std::size_t> preferred) {
  Partition part = equivalence_classes(build_h(a));
  std::vector<bool> overridden(part.blocks.size(), false);
  for (std::size_t s : preferred) {
    if (s >= a.num_states()) throw std::out_of_range("representative index out of range");
    const std::size_t b = part.block_of(s);
    if (overridden[b] && part.representatives[b] != s) {
      throw std::invalid_argument("two representatives given for the class of state '" +
                                  a.states()[s] + "'");
    }
    overridden[b] = true;
    part.representatives[b] = s;
  }

  const std::size_t r = part.blocks.size();
  std::vector<RatMatrix> kernels;
  for (const auto& k : a.kernels()) {
    RatMatrix out(r, r);
    for (std::size_t i = 0; i < r; ++i) {
      const std::size_t z = part.representatives[i];
      for (std::size_t j = 0; j < r; ++j) {
        Rational mass;
        for (std::size_t t : part.blocks[j]) mass += k(z, t);
        out(i, j) = mass;
      }
    }
    kernels.push_back(std::move(out));
  }
  std::vector<std::string> names;
  for (auto z : part.representatives) names.push_back(a.states()[z]);
  return {StochasticAutomaton(std::move(names), a.inputs(), a.outputs(), std::move(kernels)),
          std::move(part)};
}

bool is_minimal(const StochasticAutomaton& a) {
  const HMatrix h = build_h(a);
  for (std::size_t i = 0; i < h.rows(); ++i)
    if (convex_witness(h, i)) return false;
  return true;
}

StochasticAutomaton minimize(const StochasticAutomaton& a) {
  StochasticAutomaton current = is_reduced(a) ? a : reduce(a).first;
  for (;;) {
    const HMatrix h = build_h(current);
    bool removed = false;
    for (std::size_t i = 0; i < h.rows(); ++i) {
      if (auto w = convex_witness(h, i)) {
        current = eliminate_state(current, i, *w);
        removed = true;
        break;
      }
    }
    if (!removed) return current;
  }
}

bool is_strongly_reduced(const StochasticAutomaton& a) {
  return rank(build_h(a).matrix) == a.num_states();
}

void ObservationMap::set(Symbol output, Symbol input, std::size_t state, std::size_t next) {
  map_[{output, input, state}] = next;
}

bool ObservationMap::defined(Symbol output, Symbol input, std::size_t state) const {
  return map_.count({output, input, state}) > 0;
}

std::size_t ObservationMap::at(Symbol output, Symbol input, std::size_t state) const {
  auto it = map_.find({output, input, state});
  if (it == map_.end()) throw std::out_of_range("gamma is undefined at this (b, a, s)");
  return it->second;
}

std::optional<ObservationMap> is_observable(const StochasticAutomaton& a) {
  ObservationMap gamma;
  for (Symbol in = 0; in < a.num_inputs(); ++in) {
    for (Symbol out = 0; out < a.num_outputs(); ++out) {
      const auto& k = a.kernel(in, out);
      for (std::size_t s = 0; s < a.num_states(); ++s) {
        std::optional<std::size_t> target;
        for (std::size_t t = 0; t < a.num_states(); ++t) {
          if (k(s, t).is_zero()) continue;
          if (target) return std::nullopt;
          target = t;
        }
        if (target) gamma.set(out, in, s, *target);
      }
    }
  }
  return gamma;
}

std::optional<TransitionTable> is_state_determined(const StochasticAutomaton& a) {
  TransitionTable delta(a.num_inputs(), std::vector<std::size_t>(a.num_states()));
  for (Symbol in = 0; in < a.num_inputs(); ++in) {
    const RatMatrix p = symbol_matrix(a, in);
    for (std::size_t s = 0; s < a.num_states(); ++s) {
      std::optional<std::size_t> target;
      for (std::size_t t = 0; t < a.num_states(); ++t) {
        if (p(s, t).is_zero()) continue;
        if (!p(s, t).is_one() || target) return std::nullopt;
        target = t;
      }
      if (!target) return std::nullopt;
      delta[in][s] = *target;
    }
  }
  return delta;
}

std::optional<OutputTable> is_output_determined(const StochasticAutomaton& a) {
  OutputTable lambda(a.num_inputs(), std::vector<Symbol>(a.num_states()));
  for (Symbol in = 0; in < a.num_inputs(); ++in) {
    for (std::size_t s = 0; s < a.num_states(); ++s) {
      std::optional<Symbol> which;
      for (Symbol out = 0; out < a.num_outputs(); ++out) {
        if (a.kernel(in, out).row_sum(s).is_one()) {
          if (which) return std::nullopt;
          which = out;
        }
      }
      if (!which) return std::nullopt;
      lambda[in][s] = *which;
    }
  }
  return lambda;
}

std::optional<std::pair<TransitionTable, OutputTable>> is_determined(const StochasticAutomaton& a) {
  TransitionTable delta(a.num_inputs(), std::vector<std::size_t>(a.num_states()));
  OutputTable lambda(a.num_inputs(), std::vector<Symbol>(a.num_states()));
  for (Symbol in = 0; in < a.num_inputs(); ++in) {
    for (std::size_t s = 0; s < a.num_states(); ++s) {
      std::optional<std::pair<Symbol, std::size_t>> hit;
      for (Symbol out = 0; out < a.num_outputs(); ++out) {
        for (std::size_t t = 0; t < a.num_states(); ++t) {
          const Rational& p = a.kernel(in, out)(s, t);
          if (p.is_zero()) continue;
          if (!p.is_one() || hit) return std::nullopt;
          hit = {out, t};
        }
      }
      if (!hit) return std::nullopt;
      lambda[in][s] = hit->first;
      delta[in][s] = hit->second;
    }
  }
  return std::make_pair(std::move(delta), std::move(lambda));
}

std::optional<MealyFactors> mealy_factorization(const StochasticAutomaton& a) {
  const std::size_t n = a.num_states();
  MealyFactors f;
  f.output.assign(a.num_inputs(), std::vector<RatVector>(n));
  f.transition.assign(a.num_inputs(), std::vector<RatVector>(n));
  for (Symbol in = 0; in < a.num_inputs(); ++in) {
    for (std::size_t s = 0; s < n; ++s) {
      RatVector p1(a.num_outputs());
      RatVector p2(n);
      for (Symbol out = 0; out < a.num_outputs(); ++out) {
        for (std::size_t t = 0; t < n; ++t) {
          const Rational& p = a.kernel(in, out)(s, t);
          p1[out] += p;
          p2[t] += p;
        }
      }
      for (Symbol out = 0; out < a.num_outputs(); ++out)
        for (std::size_t t = 0; t < n; ++t)
          if (a.kernel(in, out)(s, t) != p1[out] * p2[t]) return std::nullopt;
      f.output[in][s] = std::move(p1);
      f.transition[in][s] = std::move(p2);
    }
  }
  return f;
}

std::optional<MooreFactors> moore_factorization(const StochasticAutomaton& a) {
  const std::size_t n = a.num_states();
  const std::size_t outs = a.num_outputs();
  MooreFactors f;
  f.transition.assign(a.num_inputs(), std::vector<RatVector>(n, RatVector(n)));
  for (Symbol in = 0; in < a.num_inputs(); ++in)
    for (std::size_t s = 0; s < n; ++s)
      for (Symbol out = 0; out < outs; ++out)
        for (std::size_t t = 0; t < n; ++t) f.transition[in][s][t] += a.kernel(in, out)(s, t);

  f.emission.assign(n, RatVector(outs, Rational(1) / Rational(static_cast<long>(outs))));
  for (std::size_t t = 0; t < n; ++t) {
    std::optional<RatVector> mu;
    for (Symbol in = 0; in < a.num_inputs(); ++in) {
      for (std::size_t s = 0; s < n; ++s) {
        const Rational& mass = f.transition[in][s][t];
        if (mass.is_zero()) continue;
        RatVector cand(outs);
        for (Symbol out = 0; out < outs; ++out) cand[out] = a.kernel(in, out)(s, t) / mass;
        if (!mu) {
          mu = std::move(cand);
        } else if (*mu != cand) {
          return std::nullopt;
        }
      }
    }
    if (mu) f.emission[t] = std::move(*mu);
  }
  return f;
}

std::pair<StochasticAutomaton, StateMapping> to_moore(const StochasticAutomaton& a) {
  const std::size_t n = a.num_states();
  const std::size_t outs = a.num_outputs();
  const std::size_t m = outs * n;
  std::vector<std::string> names;
  StateMapping phi;
  for (Symbol b = 0; b < outs; ++b) {
    for (std::size_t s = 0; s < n; ++s) {
      names.push_back("(" + a.outputs()[b] + "," + a.states()[s] + ")");
      phi.push_back(s);
    }
  }
  std::vector<RatMatrix> kernels;
  for (Symbol in = 0; in < a.num_inputs(); ++in) {
    for (Symbol b2 = 0; b2 < outs; ++b2) {
      RatMatrix k(m, m);
      const auto& src = a.kernel(in, b2);
      for (std::size_t from = 0; from < m; ++from) {
        const std::size_t s0 = from % n;
        for (std::size_t s1 = 0; s1 < n; ++s1) k(from, b2 * n + s1) = src(s0, s1);
      }
      kernels.push_back(std::move(k));
    }
  }
  return {StochasticAutomaton(std::move(names), a.inputs(), a.outputs(), std::move(kernels)),
          std::move(phi)};
}

bool check_s_homomorphism(const StochasticAutomaton& a, const StochasticAutomaton& b,
                          const StateMapping& phi) {
  if (!a.same_alphabets(b)) return false;
  if (phi.size() != a.num_states()) return false;
  for (auto t : phi)
    if (t >= b.num_states()) return false;
  for (Symbol in = 0; in < a.num_inputs(); ++in) {
    for (Symbol out = 0; out < a.num_outputs(); ++out) {
      const auto& ka = a.kernel(in, out);
      const auto& kb = b.kernel(in, out);
      for (std::size_t s = 0; s < a.num_states(); ++s) {
        for (std::size_t s2 = 0; s2 < a.num_states(); ++s2) {
          Rational fiber;
          for (std::size_t s3 = 0; s3 < a.num_states(); ++s3)
            if (phi[s3] == phi[s2]) fiber += ka(s, s3);
          if (kb(phi[s], phi[s2]) != fiber) return false;
        }
      }
    }
  }
  return true;
}

namespace {

// Per-state invariant under isomorphism: sorted row and column entries of
// every kernel plus the diagonal entry.
std::vector<std::string> state_signature(const StochasticAutomaton& a, std::size_t s) {
  std::vector<std::string> sig;
  for (const auto& k : a.kernels()) {
    std::vector<Rational> row = k.row(s);
    std::vector<Rational> col = k.column(s);
    std::sort(row.begin(), row.end());
    std::sort(col.begin(), col.end());
    std::string text = k(s, s).str() + "|";
    for (const auto& x : row) text += x.str() + ",";
    text += "|";
    for (const auto& x : col) text += x.str() + ",";
    sig.push_back(std::move(text));
  }
  return sig;
}

bool extend_bijection(const StochasticAutomaton& a, const StochasticAutomaton& b,
                      const std::vector<std::vector<std::string>>& sig_a,
                      const std::vector<std::vector<std::string>>& sig_b, StateMapping& phi,
                      std::vector<bool>& used, std::size_t next) {
  const std::size_t n = a.num_states();
  if (next == n) return true;
  for (std::size_t t = 0; t < n; ++t) {
    if (used[t] || sig_a[next] != sig_b[t]) continue;
    bool consistent = true;
    for (std::size_t k = 0; k < a.kernels().size() && consistent; ++k) {
      const auto& ka = a.kernels()[k];
      const auto& kb = b.kernels()[k];
      if (ka(next, next) != kb(t, t)) consistent = false;
      for (std::size_t s = 0; s < next && consistent; ++s) {
        if (ka(s, next) != kb(phi[s], t) || ka(next, s) != kb(t, phi[s])) consistent = false;
      }
    }
    if (!consistent) continue;
    phi[next] = t;
    used[t] = true;
    if (extend_bijection(a, b, sig_a, sig_b, phi, used, next + 1)) return true;
    used[t] = false;
  }
  return false;
}

}  // namespace

std::optional<StateMapping> is_isomorphic(const StochasticAutomaton& a,
                                          const StochasticAutomaton& b, std::size_t max_states) {
  if (!a.same_alphabets(b) || a.num_states() != b.num_states()) return std::nullopt;
  const std::size_t n = a.num_states();
  if (n > max_states) return std::nullopt;
  std::vector<std::vector<std::string>> sig_a;
  std::vector<std::vector<std::string>> sig_b;
  for (std::size_t s = 0; s < n; ++s) {
    sig_a.push_back(state_signature(a, s));
    sig_b.push_back(state_signature(b, s));
  }
  StateMapping phi(n);
  std::vector<bool> used(n, false);
  if (extend_bijection(a, b, sig_a, sig_b, phi, used, 0)) return phi;
  return std::nullopt;
}

std::optional<StochasticAutomaton> th4_check(const StochasticAutomaton& a,
                                             const std::vector<RatMatrix>& candidates) {
  if (candidates.size() != a.kernels().size()) {
    throw std::invalid_argument("th4_check: expected one candidate per (input, output) pair");
  }
  const std::size_t n = a.num_states();
  for (const auto& c : candidates) {
    if (c.rows() != n || c.cols() != n) {
      throw std::invalid_argument("th4_check: candidate shape does not match the state count");
    }
    if (!c.is_nonnegative()) return std::nullopt;
  }
  const HMatrix h = build_h(a);
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (a.kernels()[k] * h.matrix != candidates[k] * h.matrix) return std::nullopt;
  }
  StochasticAutomaton b(a.states(), a.inputs(), a.outputs(), candidates);
  if (!validate(b).ok()) return std::nullopt;
  return b;
}

ClassificationReport classify(const StochasticAutomaton& a) {
  ClassificationReport r;
  const HMatrix h = build_h(a);
  const std::size_t n = a.num_states();
  r.reduced = equivalence_classes(h).blocks.size() == n;
  r.minimal = true;
  for (std::size_t i = 0; i < n && r.minimal; ++i)
    if (convex_witness(h, i)) r.minimal = false;
  const std::size_t rk = rank(h.matrix);
  r.strongly_reduced = rk == n;
  r.simplex_dimension = rk - 1;

  r.gamma = is_observable(a);
  r.delta = is_state_determined(a);
  r.lambda = is_output_determined(a);
  r.mealy_factors = mealy_factorization(a);
  r.moore_factors = moore_factorization(a);
  r.observable = r.gamma.has_value();
  r.state_determined = r.delta.has_value();
  r.output_determined = r.lambda.has_value();
  r.determined = is_determined(a).has_value();
  r.mealy = r.mealy_factors.has_value();
  r.moore = r.moore_factors.has_value();
  return r;
}

}  // namespace stochata
