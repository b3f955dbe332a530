#include "symplex/base_ring.hpp"

#include <charconv>

#include "symplex/error.hpp"

namespace symplex {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MixedRing: return "MixedRing";
    case ErrorCode::NotInRing: return "NotInRing";
    case ErrorCode::NotMember: return "NotMember";
    case ErrorCode::MembershipBoundExceeded: return "MembershipBoundExceeded";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotEuclidean: return "NotEuclidean";
    case ErrorCode::IncompleteAssignment: return "IncompleteAssignment";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::RankTooLarge: return "RankTooLarge";
    case ErrorCode::NotSubcone: return "NotSubcone";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::BadIndices: return "BadIndices";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::NotMonomial: return "NotMonomial";
    case ErrorCode::SignConventionFault: return "SignConventionFault";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSymplectic: return "NotSymplectic";
    case ErrorCode::NotAField: return "NotAField";
    case ErrorCode::NotLocal: return "NotLocal";
    case ErrorCode::DecompositionFailed: return "DecompositionFailed";
    case ErrorCode::UnknownLemmaId: return "UnknownLemmaId";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

BaseRing BaseRing::prime_field(std::int64_t p) {
  if (p >= (std::int64_t{1} << 31) || !is_prime(p)) {
    throw Error(ErrorCode::NotInRing, "GF(p) needs a prime p < 2^31, got " + std::to_string(p));
  }
  return BaseRing(Kind::PrimeField, static_cast<std::uint32_t>(p));
}

BaseRing BaseRing::parse(std::string_view spec) {
  if (spec == "Z") return integers();
  if (spec == "Q") return rationals();
  if (spec.starts_with("Fp:")) {
    std::int64_t p = 0;
    auto digits = spec.substr(3);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw Error(ErrorCode::ParseError, "bad prime field spec '" + std::string(spec) + "'");
    }
    return prime_field(p);
  }
  throw Error(ErrorCode::ParseError, "unknown base ring '" + std::string(spec) + "'");
}

std::string BaseRing::to_string() const {
  switch (kind_) {
    case Kind::Integers: return "Z";
    case Kind::Rationals: return "Q";
    case Kind::PrimeField: return "Fp:" + std::to_string(modulus_);
  }
  return "?";
}

mpq_class BaseRing::reduce_mod(const mpq_class& x) const {
  const mpz_class p = modulus_;
  mpz_class den = x.get_den() % p;
  if (den == 0) {
    throw Error(ErrorCode::NotInRing, "denominator divisible by " + std::to_string(modulus_));
  }
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  mpz_class r = (x.get_num() * inv) % p;
  if (r < 0) r += p;
  return mpq_class(r);
}

mpq_class BaseRing::canonical(const mpq_class& x) const {
  switch (kind_) {
    case Kind::Integers:
      if (x.get_den() != 1) {
        mpq_class y = x;
        y.canonicalize();
        if (y.get_den() == 1) return y;
      }
      if (x.get_den() != 1) throw Error(ErrorCode::NotInRing, x.get_str() + " is not an integer");
      return x;
    case Kind::Rationals: {
      mpq_class y = x;
      y.canonicalize();
      return y;
    }
    case Kind::PrimeField:
      if (x.get_den() == 1 && x.get_num() >= 0 && x.get_num() < modulus_) return x;
      return reduce_mod(x);
  }
  return x;
}

bool BaseRing::contains(const mpq_class& x) const {
  switch (kind_) {
    case Kind::Integers: return x.get_den() == 1;
    case Kind::Rationals: return true;
    case Kind::PrimeField: return x.get_den() % modulus_ != 0;
  }
  return false;
}

mpq_class BaseRing::add(const mpq_class& a, const mpq_class& b) const {
  if (kind_ == Kind::PrimeField) {
    mpz_class s = a.get_num() + b.get_num();
    if (s >= modulus_) s -= modulus_;
    return mpq_class(s);
  }
  return a + b;
}

mpq_class BaseRing::sub(const mpq_class& a, const mpq_class& b) const {
  if (kind_ == Kind::PrimeField) {
    mpz_class s = a.get_num() - b.get_num();
    if (s < 0) s += modulus_;
    return mpq_class(s);
  }
  return a - b;
}

mpq_class BaseRing::mul(const mpq_class& a, const mpq_class& b) const {
  if (kind_ == Kind::PrimeField) {
    mpz_class s = (a.get_num() * b.get_num()) % modulus_;
    return mpq_class(s);
  }
  return a * b;
}

mpq_class BaseRing::neg(const mpq_class& a) const {
  if (kind_ == Kind::PrimeField) {
    if (a == 0) return a;
    return mpq_class(mpz_class(modulus_) - a.get_num());
  }
  return -a;
}

bool BaseRing::is_unit(const mpq_class& a) const {
  switch (kind_) {
    case Kind::Integers: return a == 1 || a == -1;
    case Kind::Rationals: return a != 0;
    case Kind::PrimeField: return a != 0;
  }
  return false;
}

std::optional<mpq_class> BaseRing::inverse(const mpq_class& a) const {
  if (!is_unit(a)) return std::nullopt;
  switch (kind_) {
    case Kind::Integers: return a;
    case Kind::Rationals: return mpq_class(1) / a;
    case Kind::PrimeField: return reduce_mod(mpq_class(1) / a);
  }
  return std::nullopt;
}

}  // namespace symplex
