#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "random_models.hpp"
#include "stochata/hmatrix.hpp"

using namespace stochata;

namespace {

RatMatrix append_column(const RatMatrix& m, const RatVector& v) {
  RatMatrix out(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    out(i, m.cols()) = v[i];
  }
  return out;
}

// Every result vector over pairs of length < n, by path sums.
std::vector<RatVector> all_result_vectors(const StochasticAutomaton& a) {
  std::vector<RatVector> out;
  const std::size_t n = a.num_states();
  for (const auto& x : oracle::words_upto(a.num_inputs(), n - 1)) {
    for (const auto& y : oracle::words_upto(a.num_outputs(), x.size())) {
      if (y.size() != x.size()) continue;
      RatVector v;
      for (std::size_t s = 0; s < n; ++s) v.push_back(oracle::path_prob(a, s, x, y));
      out.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("H of the four-state reduction example") {
  const auto h = build_h(example_transducer("reduce_A"));
  CHECK(h.matrix == RatMatrix{{1, Rational(1, 3)}, {1, Rational(2, 3)}, {1, Rational(1, 2)},
                              {1, Rational(1, 2)}});
  REQUIRE(h.labels.size() == 2);
  CHECK(h.labels[0] == WordPair{{}, {}});
  CHECK(h.labels[1] == WordPair{{0}, {0}});
}

TEST_CASE("H of the five-state pair with output order (c,e,d)") {
  const RatMatrix expected{{1, Rational(1, 2), Rational(1, 2), Rational(1, 2)},
                           {1, Rational(1, 2), 0, Rational(1, 2)},
                           {1, 0, 0, Rational(1, 2)},
                           {1, 0, Rational(1, 2), Rational(1, 2)},
                           {1, 0, 0, 1}};
  const auto a = example_transducer("evenA");
  const auto b = example_transducer("evenB");
  CHECK(build_h(a).matrix == expected);
  CHECK(build_h(b).matrix == expected);
}

TEST_CASE("declaring outputs as (c,d,e) changes the chosen columns, not the span") {
  const auto a = example_transducer("evenA");
  // permute outputs to c, d, e: kernels indexed a * 3 + b
  std::vector<RatMatrix> k(6, RatMatrix(5, 5));
  const std::size_t from[3] = {0, 2, 1};  // new b -> old b
  for (Symbol in = 0; in < 2; ++in)
    for (Symbol b = 0; b < 3; ++b) k[in * 3 + b] = a.kernel(in, from[b]);
  const StochasticAutomaton a2(a.states(), a.inputs(), {"c", "d", "e"}, k);
  const auto h1 = build_h(a);
  const auto h2 = build_h(a2);
  CHECK(h2.dimension() == 4);
  CHECK(h2.matrix.column(3) == RatVector{0, 0, Rational(1, 2), Rational(1, 2), 0});
  for (std::size_t j = 0; j < 4; ++j)
    CHECK(oracle::rank(append_column(h1.matrix, h2.matrix.column(j))) == 4);
}

TEST_CASE("single state automaton has H = [1]") {
  const auto h = build_h(bsc(Rational(1, 4)));
  CHECK(h.matrix == RatMatrix{{1}});
}

TEST_CASE("distribution and state equivalence") {
  const auto bp = example_transducer("reduce_Bprime");
  CHECK(dist_equiv(bp, StateDistribution::unit(3, 2),
                   StateDistribution({Rational(1, 2), Rational(1, 2), 0})));
  const auto even = example_transducer("evenA");
  const StateDistribution p({Rational(1, 2), 0, Rational(1, 2), 0, 0});
  const StateDistribution q({0, Rational(1, 2), 0, Rational(1, 2), 0});
  CHECK(dist_equiv(even, p, q));
  CHECK(vec_mat(p.weights(), build_h(even).matrix) ==
        RatVector{1, Rational(1, 4), Rational(1, 4), Rational(1, 2)});
  CHECK(dist_equiv(even, p, p));
  CHECK(states_equiv(example_transducer("reduce_A"), 2, 3));
  CHECK_FALSE(states_equiv(example_transducer("two_input"), 0, 1));
  CHECK(states_equiv(example_transducer("two_input"), 1, 1));
}

TEST_CASE("k-equivalence on the four-cycle") {
  const auto a = example_transducer("cycle4");
  const auto s1 = StateDistribution::unit(4, 0), s2 = StateDistribution::unit(4, 1);
  CHECK(k_equiv(a, s1, a, s2, 0));
  CHECK(k_equiv(a, s1, a, s2, 2));
  CHECK_FALSE(k_equiv(a, s1, a, s2, 3));
  CHECK_THROWS_AS(k_equiv(a, s1, a, s2, 12, 1000), std::length_error);
}

TEST_CASE("direct sums and cross equivalence") {
  const auto a = example_transducer("reduce_A");
  const auto b = example_transducer("reduce_B");
  const auto bp = example_transducer("reduce_Bprime");
  const auto aa = direct_sum(a, a);
  CHECK(aa.num_states() == 8);
  CHECK(validate(aa).ok());
  CHECK(cross_equiv(a, StateDistribution::unit(4, 2), b, StateDistribution::unit(3, 2)));
  CHECK(cross_equiv(b, StateDistribution::unit(3, 0), bp, StateDistribution::unit(3, 0)));
  CHECK(cross_equiv(a, StateDistribution::unit(4, 1), a, StateDistribution::unit(4, 1)));
  CHECK_THROWS_AS(direct_sum(a, example_transducer("two_input")), std::invalid_argument);
}

TEST_CASE("covering certificates") {
  const auto a = example_transducer("reduce_A");
  const auto bp = example_transducer("reduce_Bprime");
  const auto c = covers(a, bp);
  REQUIRE(c);
  CHECK(c->q.is_stochastic());
  CHECK(h_image(c->q, build_h(a)).matrix == build_h(bp).matrix);
  const auto back = covers(bp, a);
  REQUIRE(back);
  CHECK(back->q.is_stochastic());
  CHECK(back->q.rows() == 4);
  const auto self = covers(a, a);
  REQUIRE(self);
  CHECK(automata_equivalent(a, bp));
  CHECK(automata_equivalent(example_transducer("evenA"), example_transducer("evenB")));
}

TEST_CASE("a one-state automaton with another output law is not equivalent") {
  const auto a = example_transducer("reduce_A");
  const StochasticAutomaton one({"u"}, {"a"}, {"b", "c"}, {RatMatrix{{1}}, RatMatrix{{0}}});
  CHECK_FALSE(automata_equivalent(a, one));
  CHECK_FALSE(covers(one, a));
}

TEST_CASE("S-equivalence compares sets of state behaviours") {
  CHECK(s_equivalent(example_transducer("evenA"), example_transducer("evenB")));
  CHECK(s_equivalent(example_transducer("reduce_A"), example_transducer("reduce_B")));
  const auto a = example_transducer("two_input");
  std::vector<RatMatrix> k;
  for (const auto& m : a.kernels()) k.push_back(RatMatrix{{m(1, 1), m(1, 0)}, {m(0, 1), m(0, 0)}});
  const StochasticAutomaton swapped({"s2", "s1"}, a.inputs(), a.outputs(), k);
  CHECK(s_equivalent(a, swapped));
}

TEST_CASE("h_image of a selection matrix") {
  const auto h = build_h(example_transducer("reduce_A"));
  const RatMatrix q{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}};
  CHECK(h_image(q, h).matrix == RatMatrix{{1, Rational(1, 3)}, {1, Rational(2, 3)}, {1, Rational(1, 2)}});
  CHECK(h_image(RatMatrix::identity(4), h).matrix == h.matrix);
  const RatMatrix twice{{1, 0, 0, 0}, {1, 0, 0, 0}};
  const auto img = h_image(twice, h).matrix;
  CHECK(img.row(0) == img.row(1));
}

TEST_CASE("property: H spans every result vector and has independent columns") {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 40; ++t) {
    const auto a = randmodel::random_automaton(rng, 1 + t % 4, 2, 2, 0.6);
    const auto h = build_h(a);
    CHECK(oracle::rank(h.matrix) == h.dimension());
    const auto all = all_result_vectors(a);
    for (const auto& v : all) CHECK(oracle::rank(append_column(h.matrix, v)) == h.dimension());
  }
}

TEST_CASE("property: equivalent distributions are k-equivalent") {
  std::mt19937_64 rng(34);
  int checked = 0;
  for (int t = 0; t < 100; ++t) {
    const auto base = randmodel::random_automaton(rng, 2 + t % 2);
    const auto a = randmodel::with_duplicate(base, 0);
    const std::size_t n = a.num_states();
    const auto p = StateDistribution::unit(n, 0);
    const auto q = StateDistribution::unit(n, n - 1);
    REQUIRE(dist_equiv(a, p, q));
    for (std::size_t k = 0; k <= 3; ++k) CHECK(k_equiv(a, p, a, q, k));
    ++checked;
  }
  CHECK(checked == 100);
}
