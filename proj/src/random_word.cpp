#include "symplex/random_word.hpp"

namespace symplex {

namespace {

RingElement random_parameter(const Ring& ring, SplitMix64& rng) {
  mpq_class c;
  const BaseRing& base = ring.base();
  if (base.kind() == BaseRing::Kind::PrimeField) {
    c = static_cast<long>(1 + rng.uniform(base.modulus() - 1));
  } else {
    long num = static_cast<long>(rng.range(1, 3));
    if (rng.uniform(2) == 1) num = -num;
    c = num;
    if (base.kind() == BaseRing::Kind::Rationals) {
      c = mpq_class(num, static_cast<unsigned long>(rng.range(1, 3)));
      c.canonicalize();
    }
  }
  RingElement x = ring.constant(c);
  const std::size_t rank = ring.monoid().rank();
  if (rank > 0) {
    const std::size_t k = rng.uniform(rank);
    if (rng.uniform(2) == 1) x = x * ring.variable(k);
  }
  return x;
}

}  // namespace

GenWord random_word(std::size_t n, std::size_t length, const Ring& ring, SplitMix64& rng) {
  GenWord w(n, ring);
  const std::uint64_t size = 2 * n;
  for (std::size_t k = 0; k < length; ++k) {
    const std::uint64_t r = rng.uniform(4);
    if (r < 3 && n >= 2) {
      const std::size_t i = 1 + rng.uniform(size);
      std::size_t j = 1 + rng.uniform(size);
      while (j == i || j == sigma(i)) j = 1 + rng.uniform(size);
      w.tokens.push_back(Token::se(i, j, random_parameter(ring, rng)));
    } else {
      const std::size_t i = 1 + rng.uniform(size);
      w.tokens.push_back(Token::se_diag(i, random_parameter(ring, rng)));
    }
  }
  return w;
}

GenWord random_word(std::size_t n, std::size_t length, const Ring& ring, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return random_word(n, length, ring, rng);
}

}  // namespace symplex
