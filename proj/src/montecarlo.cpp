#include "stochata/montecarlo.hpp"

#include <gmpxx.h>

#include <stdexcept>

namespace stochata {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

mpz_class to_mpz(std::uint64_t v) {
  mpz_class z(static_cast<unsigned long>(v >> 32));
  z <<= 32;
  z += static_cast<unsigned long>(v & 0xFFFFFFFFULL);
  return z;
}

template <typename Draw>
Estimate run_replicas(const SimConfig& config, Draw&& draw) {
  if (config.samples == 0) throw std::invalid_argument("sample count must be positive");
  if (config.replicas == 0) throw std::invalid_argument("replica count must be positive");
  Estimate e;
  e.samples = config.samples;
  for (std::size_t r = 0; r < config.replicas; ++r) {
    auto rng = replica_engine(config.seed, r);
    for (std::size_t i = r; i < config.samples; i += config.replicas)
      if (draw(rng)) ++e.hits;
  }
  return e;
}

}  // namespace

std::mt19937_64 replica_engine(std::uint64_t seed, std::size_t replica) {
  return std::mt19937_64(
      splitmix64(seed + static_cast<std::uint64_t>(replica) * 0x9E3779B97F4A7C15ULL));
}

std::size_t draw_index(std::mt19937_64& rng, std::span<const Rational> weights) {
  if (weights.empty()) throw std::invalid_argument("cannot draw from an empty distribution");
  // u / 2^64 < c  <=>  u * den(c) < num(c) * 2^64
  const mpz_class u = to_mpz(rng());
  Rational cumulative;
  std::size_t last_positive = weights.size();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i].is_zero()) continue;
    last_positive = i;
    cumulative += weights[i];
    mpz_class lhs = u * cumulative.denominator();
    mpz_class rhs = cumulative.numerator();
    rhs <<= 64;
    if (lhs < rhs) return i;
  }
  if (last_positive == weights.size()) throw std::invalid_argument("distribution has no mass");
  // Total mass below one only arises from substochastic input; the last
  // positive index absorbs the remainder.
  return last_positive;
}

RunResult sample_run(const StochasticAutomaton& a, std::size_t state, const Word& x,
                     std::mt19937_64& rng) {
  RunResult r{{}, state};
  const std::size_t n = a.num_states();
  RatVector weights(a.num_outputs() * n);
  for (Symbol in : x) {
    for (Symbol out = 0; out < a.num_outputs(); ++out) {
      const auto& k = a.kernel(in, out);
      for (std::size_t t = 0; t < n; ++t) weights[out * n + t] = k(r.state, t);
    }
    const std::size_t pick = draw_index(rng, weights);
    r.output.push_back(pick / n);
    r.state = pick % n;
  }
  return r;
}

RunResult sample_run(const StochasticAutomaton& a, std::size_t state, const Word& x,
                     std::uint64_t seed) {
  auto rng = replica_engine(seed, 0);
  return sample_run(a, state, x, rng);
}

Rational Estimate::frequency() const {
  if (samples == 0) return Rational(0);
  return Rational(mpz_class(static_cast<unsigned long>(hits)),
                  mpz_class(static_cast<unsigned long>(samples)));
}

Estimate estimate_prob(const StochasticAutomaton& a, const StateDistribution& pi, const Word& x,
                       const Word& y, const SimConfig& config) {
  if (x.size() != y.size()) return Estimate{0, config.samples};
  return run_replicas(config, [&](std::mt19937_64& rng) {
    const std::size_t start = draw_index(rng, pi.weights());
    return sample_run(a, start, x, rng).output == y;
  });
}

Estimate estimate_accept(const StochasticAcceptor& a, const Word& x, const SimConfig& config) {
  return run_replicas(config, [&](std::mt19937_64& rng) {
    std::size_t s = draw_index(rng, a.initial());
    for (Symbol sym : x) s = draw_index(rng, a.matrix(sym).row_view(s));
    return a.is_final(s);
  });
}

}  // namespace stochata
