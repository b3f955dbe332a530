#pragma once

#include <cstddef>
#include <cstdint>

#include "symplex/random.hpp"
#include "symplex/symplectic.hpp"

namespace symplex {

/// Pseudo-random elementary word, drawn from SplitMix64(seed) as follows.
///
/// Per token, r = uniform(4). If r < 3 and n >= 2 the token is se_ij with
/// i = 1 + uniform(2n) and j = 1 + uniform(2n) redrawn until j != i and
/// j != sigma(i); otherwise it is se_{i sigma(i)} with i = 1 + uniform(2n).
///
/// The parameter is c * m where c is drawn first:
///   GF(p): c = 1 + uniform(p - 1)
///   Z:     c = range(1, 3), negated if uniform(2) == 1
///   Q:     the same signed numerator over range(1, 3)
/// and m = 1 for rank 0, otherwise m = x_k^e with k = uniform(rank),
/// e = uniform(2).
GenWord random_word(std::size_t n, std::size_t length, const Ring& ring, std::uint64_t seed);

/// Same draws from an existing generator.
GenWord random_word(std::size_t n, std::size_t length, const Ring& ring, SplitMix64& rng);

}  // namespace symplex
