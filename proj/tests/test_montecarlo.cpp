#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "stochata/montecarlo.hpp"

using namespace stochata;

namespace {

bool within_band(const Estimate& e, const Rational& exact) {
  const double p = exact.to_double();
  const double band = 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(e.samples));
  return std::fabs(e.frequency().to_double() - p) <= band;
}

}  // namespace

TEST_CASE("deterministic runs follow the unique path") {
  const auto cyc = example_transducer("cycle4");
  const auto r = sample_run(cyc, 0, Word{0, 0}, std::uint64_t{7});
  CHECK(r.output == Word{0, 0});
  CHECK(r.state == 2);
  const auto empty = sample_run(cyc, 3, Word{}, std::uint64_t{7});
  CHECK(empty.output.empty());
  CHECK(empty.state == 3);
  const auto clean = sample_run(bsc(Rational(0)), 0, Word{0, 1, 0}, std::uint64_t{1});
  CHECK(clean.output == Word{0, 1, 0});
}

TEST_CASE("draws follow exact cumulative thresholds") {
  auto rng = replica_engine(3, 0);
  const RatVector w{0, 1, 0};
  for (int i = 0; i < 50; ++i) CHECK(draw_index(rng, w) == 1);
  CHECK_THROWS(draw_index(rng, RatVector{}));
}

TEST_CASE("estimates land in the binomial band") {
  const auto a = example_transducer("two_input");
  const SimConfig cfg{20000, 99, 1};
  const auto e = estimate_prob(a, StateDistribution::unit(2, 0), {0}, {0}, cfg);
  CHECK(within_band(e, Rational(3, 8)));
  CHECK(estimate_prob(a, StateDistribution::unit(2, 0), {0}, {}, cfg).hits == 0);
  const auto cyc = example_transducer("cycle4");
  CHECK(estimate_prob(cyc, StateDistribution::unit(4, 0), {0, 1}, {0, 0}, cfg).frequency().is_one());

  const auto acc = example_acceptor("acceptor3");
  CHECK(within_band(estimate_accept(acc, {0, 0, 0}, cfg), Rational(7, 8)));
  const auto det = example_acceptor("acceptor3_det");
  CHECK(estimate_accept(det, {1, 0, 0}, cfg).frequency().is_one());
  CHECK(estimate_accept(det, {0, 0, 0}, cfg).frequency().is_zero());
  CHECK(within_band(estimate_accept(padic(3), {2}, cfg), Rational(2, 3)));
}

TEST_CASE("identical seeds reproduce identical results") {
  const auto acc = example_acceptor("acceptor3");
  const SimConfig cfg{5000, 1234, 4};
  CHECK(estimate_accept(acc, {1, 0, 1}, cfg).hits == estimate_accept(acc, {1, 0, 1}, cfg).hits);
  const SimConfig other{5000, 1235, 4};
  CHECK(estimate_accept(acc, {1, 0, 1}, cfg).hits != estimate_accept(acc, {1, 0, 1}, other).hits);
  CHECK_THROWS(estimate_accept(acc, {0}, SimConfig{0, 1, 1}));
}
