#pragma once

#include <cstddef>

namespace stochata {

/// Enumeration cap used when a caller passes no explicit budget. Reads
/// STOCHATA_BUDGET once; falls back to 1'000'000.
std::size_t default_budget();

/// Number of words of length <= max_len over an alphabet of the given size,
/// saturating at SIZE_MAX.
std::size_t count_words_upto(std::size_t alphabet, std::size_t max_len);

}  // namespace stochata
