// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (0 when all pass).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "random_models.hpp"
#include "stochata/acceptor.hpp"
#include "stochata/hmatrix.hpp"
#include "stochata/linalg.hpp"
#include "stochata/montecarlo.hpp"
#include "stochata/transform.hpp"

using namespace stochata;

namespace {

// Pinned tolerances and sizes.
constexpr std::size_t kMcSamples = 100000;
constexpr std::uint64_t kMcSeed = 20240611;
constexpr double kMcSigmas = 4.0;
constexpr int kPropertyCases = 100;
constexpr int kPadicWords = 200;
constexpr std::size_t kNerodeSuffix = 6;

struct Check {
  bool ok = true;
  std::string first_failure;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) first_failure = what;
    ok = ok && cond;
  }
};

RatMatrix kern(const StochasticAutomaton& a, Symbol in, Symbol out) { return a.kernel(in, out); }

Word word_of(const std::vector<std::string>& alphabet, const char* text) {
  return parse_word(alphabet, text);
}

// ---------------------------------------------------------------------------

void c01(Check& c) {
  const auto a = example_transducer("power_law");
  for (unsigned k = 1; k <= 10; ++k) {
    const Rational two = pow(Rational(2), k), three = pow(Rational(3), k);
    const RatMatrix expected{{two / three, (three - two) / three}, {0, 1}};
    c.expect(input_matrix(a, Word(k, 0)) == expected, "P(a^" + std::to_string(k) + ")");
  }
}

void c02(Check& c) {
  const auto a = example_transducer("two_input");
  c.expect(result_vector(a, {0}, {0}).values == RatVector{Rational(3, 8), Rational(1, 2)}, "eta(c|a)");
  c.expect(result_vector(a, {1}, {1}).values == RatVector{Rational(1, 2), Rational(3, 4)}, "eta(d|b)");
  c.expect(!states_equiv(a, 0, 1), "s1 and s2 reported equivalent");
}

void c03(Check& c) {
  const auto a = example_transducer("reduce_A");
  c.expect(build_h(a).matrix == RatMatrix{{1, Rational(1, 3)}, {1, Rational(2, 3)}, {1, Rational(1, 2)},
                                          {1, Rational(1, 2)}},
           "H_A");
  const auto [b, part] = reduce(a);
  c.expect(part.blocks == std::vector<std::vector<std::size_t>>{{0}, {1}, {2, 3}}, "partition");
  c.expect(kern(b, 0, 0) == RatMatrix{{0, 0, Rational(1, 3)}, {0, 0, Rational(2, 3)}, {Rational(1, 4), Rational(1, 4), 0}},
           "B P(b|a)");
  c.expect(kern(b, 0, 1) == RatMatrix{{0, 0, Rational(2, 3)}, {0, 0, Rational(1, 3)}, {Rational(1, 4), Rational(1, 4), 0}},
           "B P(c|a)");
  const std::size_t s4[] = {3};
  const auto [bp, part2] = reduce(a, s4);
  c.expect(kern(bp, 0, 0) == RatMatrix{{0, 0, Rational(1, 3)}, {0, 0, Rational(2, 3)}, {0, 0, Rational(1, 2)}},
           "B' P(b|a)");
  c.expect(kern(bp, 0, 1) == RatMatrix{{0, 0, Rational(2, 3)}, {0, 0, Rational(1, 3)}, {0, 0, Rational(1, 2)}},
           "B' P(c|a)");
}

void c04(Check& c) {
  const auto a = example_transducer("cycle4");
  const auto s1 = StateDistribution::unit(4, 0), s2 = StateDistribution::unit(4, 1);
  c.expect(k_equiv(a, s1, a, s2, 2), "k=2 should hold");
  c.expect(!k_equiv(a, s1, a, s2, 3), "k=3 should fail");
}

void c05(Check& c) {
  const auto a = example_transducer("min_example");
  const auto m = minimize(a);
  c.expect(m.num_states() == 2, "state count");
  c.expect(kern(m, 0, 0) == RatMatrix{{0, Rational(1, 3)}, {0, Rational(2, 3)}}, "P(b|a)");
  c.expect(automata_equivalent(a, m), "equivalence");
}

void c06(Check& c) {
  const auto a = example_transducer("evenA");
  const auto b = example_transducer("evenB");
  const RatMatrix expected_h{{1, Rational(1, 2), Rational(1, 2), Rational(1, 2)},
                          {1, Rational(1, 2), 0, Rational(1, 2)},
                          {1, 0, 0, Rational(1, 2)},
                          {1, 0, Rational(1, 2), Rational(1, 2)},
                          {1, 0, 0, 1}};
  const auto ha = build_h(a), hb = build_h(b);
  c.expect(ha.matrix == expected_h && hb.matrix == expected_h, "H_A = H_B = expected matrix");
  c.expect(is_minimal(a) && is_minimal(b), "minimal");
  c.expect(!is_strongly_reduced(a) && !is_strongly_reduced(b), "not strongly reduced");
  const StateDistribution p({Rational(1, 2), 0, Rational(1, 2), 0, 0});
  const StateDistribution q({0, Rational(1, 2), 0, Rational(1, 2), 0});
  const RatVector image{1, Rational(1, 4), Rational(1, 4), Rational(1, 2)};
  c.expect(dist_equiv(a, p, q), "distributions equivalent");
  c.expect(vec_mat(p.weights(), ha.matrix) == image && vec_mat(q.weights(), ha.matrix) == image,
           "common image");
  c.expect(!is_isomorphic(a, b), "isomorphism found");
}

void c07(Check& c) {
  const auto a = example_transducer("reduce_A");
  const auto bp = example_transducer("reduce_Bprime");
  const auto cov = covers(a, bp);
  c.expect(cov.has_value(), "A covers B'");
  if (cov) {
    c.expect(cov->q.is_stochastic(), "Q stochastic");
    c.expect(h_image(cov->q, build_h(a)).matrix == build_h(bp).matrix, "image reproduces H_B'");
  }
  c.expect(covers(bp, a).has_value(), "B' covers A");
  c.expect(automata_equivalent(a, bp), "equivalent");
}

void c08(Check& c) {
  const auto ao = classify(example_transducer("observable"));
  c.expect(ao.observable && ao.reduced && !ao.minimal, "observable/reduced/not minimal");
  const auto st = classify(example_transducer("state_determined"));
  c.expect(st.state_determined && st.strongly_reduced, "state-determined/strongly reduced");
  const auto od = classify(example_transducer("output_determined"));
  c.expect(od.output_determined && od.strongly_reduced, "output-determined/strongly reduced");
  const auto last = minimize(reduce(example_transducer("reduced_not_full")).first);
  c.expect(last.num_states() == 2, "image has two states");
  c.expect(is_determined(last).has_value() && is_minimal(last), "image determined and minimal");
}

void c09(Check& c) {
  const auto f = mealy_factorization(example_transducer("mealy"));
  c.expect(f.has_value(), "factorization exists");
  if (!f) return;
  c.expect(f->output[0][0][0] == Rational(1, 2), "p1(b|a,s1)");
  c.expect(f->transition[0][0][0] == Rational(1, 3), "p2(s1|a,s1)");
  RatMatrix rebuilt(2, 2);
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t t = 0; t < 2; ++t) rebuilt(s, t) = f->output[0][s][0] * f->transition[0][s][t];
  c.expect(rebuilt == RatMatrix{{Rational(1, 6), Rational(1, 3)}, {Rational(1, 20), Rational(1, 5)}},
           "reconstructed P(b|a)");
}

void c10(Check& c) {
  std::vector<StochasticAutomaton> inputs{example_transducer("reduce_B"), example_transducer("min_example")};
  std::mt19937_64 rng(1010);
  for (int i = 0; i < 10; ++i) inputs.push_back(randmodel::random_automaton(rng, 3, 2, 2));
  for (const auto& a : inputs) {
    const auto [m, phi] = to_moore(a);
    c.expect(m.num_states() == 6, "six states");
    c.expect(moore_factorization(m).has_value(), "Moore factorization");
    c.expect(s_equivalent(a, m), "S-equivalent to input");
  }
}

void c11(Check& c) {
  const auto a = example_transducer("hom_source");
  const auto b = example_transducer("hom_target");
  const StateMapping phi{0, 1, 2, 2};
  c.expect(check_s_homomorphism(a, b, phi), "map verifies");
  auto perturbed_all = [&](const StochasticAutomaton& base, bool source) {
    for (std::size_t k = 0; k < base.kernels().size(); ++k) {
      for (std::size_t i = 0; i < base.num_states(); ++i) {
        for (std::size_t j = 0; j < base.num_states(); ++j) {
          for (const Rational& delta : {Rational(1, 8), Rational(-1, 8)}) {
            auto ks = base.kernels();
            ks[k](i, j) += delta;
            const StochasticAutomaton bent(base.states(), base.inputs(), base.outputs(), ks);
            const bool ok = source ? check_s_homomorphism(bent, b, phi) : check_s_homomorphism(a, bent, phi);
            c.expect(!ok, "perturbation not detected");
          }
        }
      }
    }
  };
  perturbed_all(a, true);
  perturbed_all(b, false);
}

void c12(Check& c) {
  const auto a = example_acceptor("acceptor3");
  const std::pair<const char*, Rational> table[] = {
      {"aaa", Rational(7, 8)},     {"baa", Rational(15, 16)},  {"aab", Rational(27, 32)},
      {"bab", Rational(55, 64)},   {"aba", Rational(29, 32)},  {"bba", Rational(59, 64)},
      {"abb", Rational(109, 128)}, {"bbb", Rational(219, 256)}};
  for (const auto& [w, p] : table) c.expect(accept_prob(a, word_of(a.inputs(), w)) == p, w);
  const auto d = example_acceptor("acceptor3_det");
  const std::pair<const char*, long> bits[] = {{"aaa", 0}, {"baa", 1}, {"aab", 1}, {"bab", 0},
                                               {"aba", 1}, {"bba", 0}, {"abb", 0}, {"bbb", 1}};
  for (const auto& [w, bit] : bits) c.expect(accept_prob(d, word_of(d.inputs(), w)) == Rational(bit), w);
}

void c13(Check& c) {
  const auto a = example_acceptor("cutpoint0");
  for (unsigned l = 0; l <= 4; ++l) {
    const Rational lo = Rational(1) - pow(Rational(1, 2), l);
    const Rational hi = Rational(1) - pow(Rational(1, 2), l + 1);
    for (const Rational& lambda : {lo, (lo + hi) / Rational(2), (lo + Rational(3) * hi) / Rational(4)}) {
      for (unsigned k = 0; k <= 12; ++k)
        c.expect(in_language(a, CutPoint(lambda), Word(k, 0)) == (k > l), "membership rule");
    }
  }
  const auto b = determinize_zero(a, true);
  c.expect(b.matrix(0) == RatMatrix{{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 0, 0, 1}}, "transition table");
  c.expect(b.initial() == RatVector{0, 1, 0, 0}, "initial subset");
  c.expect(b.final() == RatVector{0, 0, 1, 1}, "final set {{s2},{s1,s2}}");
  c.expect(b.states()[2] == "{s2}" && b.states()[3] == "{s1,s2}", "subset names");
}

void c14(Check& c) {
  const auto a = example_acceptor("nonregular");
  for (unsigned i = 0; i <= 4; ++i) {
    for (unsigned j = 0; j <= 6; ++j) {
      Word x(i, 0);
      x.insert(x.end(), j, 1);
      const Rational p = accept_prob(a, x);
      if (j >= 1) c.expect(p == oracle::ab_closed_form(i, j), "closed form");
    }
  }
  std::vector<Word> expected;
  for (const auto& x : oracle::words_upto(2, 6)) {
    std::size_t i = 0;
    while (i < x.size() && x[i] == 0) ++i;
    std::size_t j = i;
    while (j < x.size() && x[j] == 1) ++j;
    if (j == x.size() && j - i >= i + 2) expected.push_back(x);
  }
  c.expect(enumerate_language(a, CutPoint(Rational(1, 2)), 6).accepted == expected, "language to length 6");
  std::size_t previous = 0;
  std::ostringstream counts;
  for (std::size_t p = 1; p <= 4; ++p) {
    const auto n = distinguishability_classes(a, CutPoint(Rational(1, 2)), p, kNerodeSuffix);
    counts << (p > 1 ? "," : "") << n;
    c.expect(n > previous, "class counts not strictly growing");
    previous = n;
  }
  if (c.ok) c.first_failure = "classes by prefix length 1..4: " + counts.str();
}

void c15(Check& c) {
  std::mt19937_64 rng(1515);
  for (unsigned p : {2u, 3u, 10u}) {
    const auto a = padic(p);
    std::uniform_int_distribution<std::size_t> len(0, 8);
    std::uniform_int_distribution<Symbol> digit(0, p - 1);
    for (int t = 0; t < kPadicWords; ++t) {
      Word x(len(rng));
      for (auto& d : x) d = digit(rng);
      c.expect(accept_prob(a, x) == oracle::mirrored_fraction(x, p), "p-adic value");
    }
  }
}

void c16(Check& c) {
  const Rational half(1, 2);
  for (const char* name : {"cutpoint0", "nonregular"}) {
    const auto a = example_acceptor(name);
    const auto words = oracle::words_upto(a.num_inputs(), 6);
    for (const Rational& mu : {Rational(1, 4), Rational(3, 4)}) {
      const auto b = rescale_cutpoint(a, CutPoint(half), mu);
      for (const auto& x : words)
        c.expect(in_language(a, CutPoint(half), x) == in_language(b, CutPoint(mu), x), "rescale");
    }
    const auto n = normalize_initial(a, CutPoint(half));
    for (const auto& x : words)
      c.expect(in_language(a, CutPoint(half), x) == in_language(n, CutPoint(half), x), "normalize");
  }
}

void c17(Check& c) {
  std::mt19937_64 rng(1717);
  std::uniform_int_distribution<Symbol> bit(0, 1);
  auto random_word = [&](std::size_t len) {
    Word w(len);
    for (auto& s : w) s = bit(rng);
    return w;
  };
  for (int t = 0; t < kPropertyCases; ++t) {
    const auto a = randmodel::random_automaton(rng, 1 + t % 4);
    // kernel normalization
    bool normalized = validate(a).ok();
    for (Symbol in = 0; in < a.num_inputs(); ++in) normalized = normalized && symbol_matrix(a, in).is_stochastic();
    c.expect(normalized, "kernel normalization");
    // Chapman-Kolmogorov splits
    const Word x1 = random_word(2), y1 = random_word(2), x2 = random_word(1), y2 = random_word(1);
    Word x = x1, y = y1;
    x.insert(x.end(), x2.begin(), x2.end());
    y.insert(y.end(), y2.begin(), y2.end());
    c.expect(word_matrix(a, x, y) == word_matrix(a, x1, y1) * word_matrix(a, x2, y2), "Chapman-Kolmogorov");
    // sum over outputs of eta(y|x) is the ones vector
    RatVector total(a.num_states());
    for (const auto& out : oracle::words_upto(2, 3)) {
      if (out.size() != 3) continue;
      const auto v = result_vector(a, x, out).values;
      for (std::size_t s = 0; s < v.size(); ++s) total[s] += v[s];
    }
    c.expect(total == ones(a.num_states()), "sum_y eta(y|x) = 1");
    // reduction keeps behaviour sets
    const auto dup = randmodel::with_duplicate(a, static_cast<std::size_t>(t) % a.num_states());
    const auto r = reduce(dup).first;
    c.expect(s_equivalent(dup, r), "s_equivalent(A, reduce(A))");
    // reduced and S-equivalent implies equal state counts
    const auto ra = reduce(a).first;
    c.expect(s_equivalent(r, ra) && r.num_states() == ra.num_states(), "reduced + S-equivalent state counts");
    // accepted kernel replacements are S-equivalent
    auto cand = dup.kernels();
    const std::size_t last = dup.num_states() - 1;
    const std::size_t orig = static_cast<std::size_t>(t) % a.num_states();
    for (auto& m : cand)
      for (std::size_t s = 0; s < dup.num_states(); ++s) {
        const Rational moved = m(s, orig) / Rational(3);
        m(s, orig) -= moved;
        m(s, last) += moved;
      }
    const auto accepted = th4_check(dup, cand);
    c.expect(accepted.has_value() && s_equivalent(dup, *accepted), "th4 acceptance implies S-equivalence");
  }
}

std::string mc_report() {
  std::ostringstream os;
  const SimConfig cfg{kMcSamples, kMcSeed, 4};
  const auto a = example_transducer("two_input");
  const std::pair<Word, Word> pairs[] = {{{0}, {0}}, {{1}, {1}}};
  for (std::size_t s = 0; s < 2; ++s)
    for (const auto& [x, y] : pairs) {
      const auto e = estimate_prob(a, StateDistribution::unit(2, s), x, y, cfg);
      os << "eta s" << s + 1 << ' ' << format_pair(a, {x, y}) << ' ' << e.hits << '/' << e.samples << '\n';
    }
  for (const char* name : {"acceptor3", "acceptor3_det"}) {
    const auto acc = example_acceptor(name);
    for (const auto& w : oracle::words_upto(2, 3)) {
      if (w.size() != 3) continue;
      const auto e = estimate_accept(acc, w, cfg);
      os << name << ' ' << format_word(acc.inputs(), w) << ' ' << e.hits << '/' << e.samples << '\n';
    }
  }
  return os.str();
}

void c18(Check& c) {
  const std::string first = mc_report();
  const std::string second = mc_report();
  c.expect(first == second, "reports differ for identical seeds");
  std::istringstream in(first);
  std::string line;
  const auto two_in = example_transducer("two_input");
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string head, state_or_word, label, frac;
    ls >> head;
    Rational exact;
    if (head == "eta") {
      ls >> state_or_word >> label >> frac;
      const std::size_t s = static_cast<std::size_t>(state_or_word[1] - '1');
      const auto bar = label.find('|');
      const Word y = parse_word(two_in.outputs(), label.substr(0, bar));
      const Word x = parse_word(two_in.inputs(), label.substr(bar + 1));
      exact = result_vector(two_in, x, y).values[s];
    } else {
      ls >> label >> frac;
      const auto acc = example_acceptor(head);
      exact = accept_prob(acc, parse_word(acc.inputs(), label));
    }
    const Rational freq = Rational::parse(frac);
    const double p = exact.to_double();
    const double band = kMcSigmas * std::sqrt(p * (1.0 - p) / static_cast<double>(kMcSamples));
    if (p == 0.0 || p == 1.0) {
      c.expect(freq == exact, line + " (degenerate value must be exact)");
    } else {
      c.expect(std::fabs(freq.to_double() - p) <= band, line + " outside 4-sigma band");
    }
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"power law of the two-state single-letter transducer", c01},
      {"result vectors of the two-input example; s1, s2 not equivalent", c02},
      {"H matrix, partition and both reductions of the four-state example", c03},
      {"four-cycle: 2-equivalent but not 3-equivalent", c04},
      {"minimization collapses 3 -> 2 states, equivalent", c05},
      {"five-state pair: equal H, minimal, not strongly reduced, not isomorphic", c06},
      {"mutual covering of the four-state example and its reduct", c07},
      {"classification battery", c08},
      {"Mealy factorization and reconstruction", c09},
      {"Moore construction on 3-state, 2-output inputs", c10},
      {"S-homomorphism verifies; every 1/8 perturbation is caught", c11},
      {"acceptance tables of length 3", c12},
      {"single-letter cut-point rule and full powerset determinization", c13},
      {"non-regular acceptor: closed form, language, growing class counts", c14},
      {"p-adic values against positional arithmetic", c15},
      {"cut-point rescaling and initial normalization preserve membership", c16},
      {"randomized property suites", c17},
      {"Monte Carlo estimates within 4 sigma; reproducible by seed", c18}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.first_failure = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2zu: %s  %s (%.2fs)", i + 1, c.ok ? "PASS" : "FAIL", criteria[i].first.c_str(), secs);
    if (!c.first_failure.empty()) std::printf("  [%s]", c.first_failure.c_str());
    std::printf("\n");
    if (!c.ok) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
