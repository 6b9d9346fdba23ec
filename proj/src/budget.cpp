#include "stochata/budget.hpp"

#include <cstdlib>
#include <limits>
#include <string>

namespace stochata {

std::size_t default_budget() {
  static const std::size_t value = [] {
    if (const char* env = std::getenv("STOCHATA_BUDGET")) {
      try {
        const auto parsed = std::stoull(env);
        if (parsed > 0) return static_cast<std::size_t>(parsed);
      } catch (...) {
        // fall through to the default
      }
    }
    return std::size_t{1'000'000};
  }();
  return value;
}

std::size_t count_words_upto(std::size_t alphabet, std::size_t max_len) {
  constexpr auto kMax = std::numeric_limits<std::size_t>::max();
  std::size_t total = 1;
  std::size_t level = 1;
  for (std::size_t l = 1; l <= max_len; ++l) {
    if (alphabet != 0 && level > kMax / alphabet) return kMax;
    level *= alphabet;
    if (total > kMax - level) return kMax;
    total += level;
  }
  return total;
}

}  // namespace stochata
