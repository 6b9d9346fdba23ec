#include "stochata/hmatrix.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

#include "stochata/linalg.hpp"

namespace stochata {

namespace {

void require_same_alphabets(const StochasticAutomaton& a, const StochasticAutomaton& b) {
  if (!a.same_alphabets(b)) {
    throw std::invalid_argument("automata have different input/output alphabets");
  }
}

// Sort key of a word pair: generator indices b * |Σ| + a, left to right.
std::vector<std::size_t> shortlex_key(const WordPair& w, std::size_t num_inputs) {
  std::vector<std::size_t> key(w.length());
  for (std::size_t i = 0; i < w.length(); ++i) key[i] = w.output[i] * num_inputs + w.input[i];
  return key;
}

struct Candidate {
  std::vector<std::size_t> key;
  WordPair label;
  RatVector column;
};

}  // namespace

HMatrix build_h(const StochasticAutomaton& a) {
  const std::size_t n = a.num_states();
  std::vector<RatVector> columns{ones(n)};
  std::vector<WordPair> labels{WordPair{}};
  std::vector<std::size_t> frontier{0};

  while (columns.size() < n && !frontier.empty()) {
    std::vector<Candidate> candidates;
    for (std::size_t f : frontier) {
      for (Symbol out = 0; out < a.num_outputs(); ++out) {
        for (Symbol in = 0; in < a.num_inputs(); ++in) {
          WordPair w;
          w.input.push_back(in);
          w.output.push_back(out);
          w.input.insert(w.input.end(), labels[f].input.begin(), labels[f].input.end());
          w.output.insert(w.output.end(), labels[f].output.begin(), labels[f].output.end());
          auto key = shortlex_key(w, a.num_inputs());
          candidates.push_back({std::move(key), std::move(w),
                                mat_vec(a.kernel(in, out), columns[f])});
        }
      }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& x, const Candidate& y) { return x.key < y.key; });

    std::vector<std::size_t> next;
    for (auto& c : candidates) {
      if (columns.size() == n) break;
      if (in_span(c.column, columns)) continue;
      next.push_back(columns.size());
      columns.push_back(std::move(c.column));
      labels.push_back(std::move(c.label));
    }
    frontier = std::move(next);
  }
  return {RatMatrix::from_columns(columns, n), std::move(labels)};
}

bool dist_equiv(const StochasticAutomaton& a, const StateDistribution& pi,
                const StateDistribution& pi2) {
  if (pi.size() != a.num_states() || pi2.size() != a.num_states()) {
    throw std::invalid_argument("distribution length does not match the state count");
  }
  const HMatrix h = build_h(a);
  return vec_mat(pi.weights(), h.matrix) == vec_mat(pi2.weights(), h.matrix);
}

bool states_equiv(const StochasticAutomaton& a, std::size_t i, std::size_t j) {
  if (i >= a.num_states() || j >= a.num_states()) throw std::out_of_range("state index");
  const HMatrix h = build_h(a);
  return h.row(i) == h.row(j);
}

namespace {

bool agree_below(const StochasticAutomaton& a, const RatVector& v, const StochasticAutomaton& b,
                 const RatVector& w, std::size_t remaining) {
  if (remaining == 0) return true;
  for (Symbol in = 0; in < a.num_inputs(); ++in) {
    for (Symbol out = 0; out < a.num_outputs(); ++out) {
      RatVector v2 = vec_mat(v, a.kernel(in, out));
      RatVector w2 = vec_mat(w, b.kernel(in, out));
      const Rational pv = sum(v2);
      if (pv != sum(w2)) return false;
      if (pv.is_zero() && std::all_of(v2.begin(), v2.end(), [](auto& x) { return x.is_zero(); }) &&
          std::all_of(w2.begin(), w2.end(), [](auto& x) { return x.is_zero(); })) {
        continue;
      }
      if (!agree_below(a, v2, b, w2, remaining - 1)) return false;
    }
  }
  return true;
}

}  // namespace

bool k_equiv(const StochasticAutomaton& a, const StateDistribution& pi,
             const StochasticAutomaton& b, const StateDistribution& pi2, std::size_t k,
             std::size_t budget) {
  require_same_alphabets(a, b);
  if (pi.size() != a.num_states() || pi2.size() != b.num_states()) {
    throw std::invalid_argument("distribution length does not match the state count");
  }
  const std::size_t gens = a.num_inputs() * a.num_outputs();
  std::size_t terms = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (gens != 0 && terms > budget / gens) {
      throw std::length_error("k_equiv: enumeration of length " + std::to_string(k) +
                              " exceeds the budget of " + std::to_string(budget));
    }
    terms *= gens;
  }
  return agree_below(a, pi.weights(), b, pi2.weights(), k);
}

StochasticAutomaton direct_sum(const StochasticAutomaton& a, const StochasticAutomaton& b) {
  require_same_alphabets(a, b);
  const std::size_t m = a.num_states();
  const std::size_t n = b.num_states();
  std::set<std::string> seen(a.states().begin(), a.states().end());
  const bool clash = std::any_of(b.states().begin(), b.states().end(),
                                 [&](const std::string& s) { return seen.count(s) > 0; });
  std::vector<std::string> names;
  for (const auto& s : a.states()) names.push_back(clash ? "A." + s : s);
  for (const auto& s : b.states()) names.push_back(clash ? "B." + s : s);

  std::vector<RatMatrix> kernels;
  for (Symbol in = 0; in < a.num_inputs(); ++in) {
    for (Symbol out = 0; out < a.num_outputs(); ++out) {
      RatMatrix k(m + n, m + n);
      const auto& ka = a.kernel(in, out);
      const auto& kb = b.kernel(in, out);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) k(i, j) = ka(i, j);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) k(m + i, m + j) = kb(i, j);
      kernels.push_back(std::move(k));
    }
  }
  return {std::move(names), a.inputs(), a.outputs(), std::move(kernels)};
}

bool cross_equiv(const StochasticAutomaton& a, const StateDistribution& pi_a,
                 const StochasticAutomaton& b, const StateDistribution& pi_b) {
  const StochasticAutomaton c = direct_sum(a, b);
  const std::size_t total = c.num_states();
  return dist_equiv(c, pi_a.padded(0, total), pi_b.padded(a.num_states(), total));
}

std::optional<CoverCertificate> covers(const StochasticAutomaton& a,
                                       const StochasticAutomaton& b) {
  const StochasticAutomaton c = direct_sum(a, b);
  const HMatrix h = build_h(c);
  const std::size_t m = a.num_states();
  const std::size_t d = h.dimension();

  CoverCertificate cert{RatMatrix(b.num_states(), m), {}};
  for (std::size_t j = 0; j < b.num_states(); ++j) {
    FeasibilityProblem p;
    p.variables = m;
    for (std::size_t col = 0; col < d; ++col) {
      RatVector coeffs(m);
      for (std::size_t i = 0; i < m; ++i) coeffs[i] = h.matrix(i, col);
      p.add(std::move(coeffs), h.matrix(m + j, col));
    }
    auto q = feasible_distribution(p);
    if (!q) return std::nullopt;
    for (std::size_t i = 0; i < m; ++i) cert.q(j, i) = (*q)[i];

    bool confirmed = true;
    for (std::size_t col = 0; col < d && confirmed; ++col) {
      Rational lhs;
      for (std::size_t i = 0; i < m; ++i) lhs += (*q)[i] * h.matrix(i, col);
      confirmed = lhs == h.matrix(m + j, col);
    }
    cert.row_confirmed.push_back(confirmed);
  }
  return cert;
}

bool automata_equivalent(const StochasticAutomaton& a, const StochasticAutomaton& b) {
  return covers(a, b).has_value() && covers(b, a).has_value();
}

bool s_equivalent(const StochasticAutomaton& a, const StochasticAutomaton& b) {
  const StochasticAutomaton c = direct_sum(a, b);
  const HMatrix h = build_h(c);
  auto key = [&](std::size_t i) {
    std::vector<std::string> k;
    for (const auto& x : h.matrix.row_view(i)) k.push_back(x.str());
    return k;
  };
  std::set<std::vector<std::string>> sa;
  std::set<std::vector<std::string>> sb;
  for (std::size_t i = 0; i < a.num_states(); ++i) sa.insert(key(i));
  for (std::size_t j = 0; j < b.num_states(); ++j) sb.insert(key(a.num_states() + j));
  return sa == sb;
}

HMatrix h_image(const RatMatrix& q, const HMatrix& h) {
  if (q.cols() != h.rows()) throw std::invalid_argument("h_image: dimension mismatch");
  const RatMatrix qh = q * h.matrix;
  std::vector<RatVector> kept;
  std::vector<WordPair> labels;
  for (std::size_t c = 0; c < qh.cols(); ++c) {
    RatVector col = qh.column(c);
    if (!kept.empty() && in_span(col, kept)) continue;
    if (kept.empty() && std::all_of(col.begin(), col.end(), [](auto& x) { return x.is_zero(); })) {
      continue;
    }
    kept.push_back(std::move(col));
    labels.push_back(h.labels[c]);
  }
  return {RatMatrix::from_columns(kept, q.rows()), std::move(labels)};
}

}  // namespace stochata
