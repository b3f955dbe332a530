#pragma once

#include <vector>

#include "symplex/random.hpp"
#include "symplex/ring_element.hpp"

namespace symplex::testing {

inline mpq_class random_coeff(const BaseRing& base, SplitMix64& rng) {
  switch (base.kind()) {
    case BaseRing::Kind::PrimeField:
      return mpq_class(static_cast<long>(rng.uniform(base.modulus())));
    case BaseRing::Kind::Integers:
      return mpq_class(rng.range(-9, 9));
    case BaseRing::Kind::Rationals: {
      mpq_class q(rng.range(-9, 9), static_cast<unsigned long>(rng.range(1, 4)));
      q.canonicalize();
      return q;
    }
  }
  return 0;
}

/// Random member of the monoid: a non-negative combination of generators with
/// coefficient sum at most `degree`.
inline ExponentVector random_exponent(const MonoidSpec& m, SplitMix64& rng, int degree) {
  ExponentVector e = m.zero();
  const auto gens = m.generators();
  if (gens.empty()) return e;
  const int steps = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(degree) + 1));
  for (int s = 0; s < steps; ++s) e = e + gens[rng.uniform(gens.size())];
  return e;
}

inline RingElement random_element(const Ring& ring, SplitMix64& rng, int max_terms, int degree = 4) {
  std::vector<std::pair<ExponentVector, mpq_class>> terms;
  const int count = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(max_terms) + 1));
  for (int k = 0; k < count; ++k) {
    terms.emplace_back(random_exponent(ring.monoid(), rng, degree), random_coeff(ring.base(), rng));
  }
  return ring.from_terms(std::move(terms));
}

}  // namespace symplex::testing
