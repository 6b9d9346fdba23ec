#pragma once

// Sampling oracle for transducer and acceptor probabilities. Streams come
// from std::mt19937_64 seeded per replica, so results are reproducible across
// platforms; draws are compared against exact rational thresholds.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

#include "stochata/acceptor.hpp"
#include "stochata/automaton.hpp"

namespace stochata {

struct SimConfig {
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  /// Independent streams; replica r draws samples r, r + replicas, ...
  std::size_t replicas = 1;
};

/// Generator for replica r of a seeded run.
std::mt19937_64 replica_engine(std::uint64_t seed, std::size_t replica);

/// Index i with cum[i-1] <= u < cum[i], where cum are partial sums of weights
/// and u is uniform on [0, 1) at 64-bit resolution. Exact comparison.
std::size_t draw_index(std::mt19937_64& rng, std::span<const Rational> weights);

struct RunResult {
  Word output;
  std::size_t state = 0;
};

/// One run from `state` on input x, drawing (b, s') from p(., . | a, s).
RunResult sample_run(const StochasticAutomaton& a, std::size_t state, const Word& x,
                     std::mt19937_64& rng);
RunResult sample_run(const StochasticAutomaton& a, std::size_t state, const Word& x,
                     std::uint64_t seed);

struct Estimate {
  std::size_t hits = 0;
  std::size_t samples = 0;
  Rational frequency() const;
};

/// Fraction of runs from π-sampled states that emit y on x. |x| != |y| gives 0.
Estimate estimate_prob(const StochasticAutomaton& a, const StateDistribution& pi, const Word& x,
                       const Word& y, const SimConfig& config);
/// Fraction of runs on x that end in a final state.
Estimate estimate_accept(const StochasticAcceptor& a, const Word& x, const SimConfig& config);

}  // namespace stochata
