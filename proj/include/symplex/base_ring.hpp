#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace symplex {

/// Coefficient ring: Z, Q or GF(p). Coefficients are held as exact rationals
/// in canonical form (integers for Z, residues in [0, p) for GF(p)).
class BaseRing {
 public:
  enum class Kind : std::uint8_t { Integers, Rationals, PrimeField };

  static BaseRing integers() { return BaseRing(Kind::Integers, 0); }
  static BaseRing rationals() { return BaseRing(Kind::Rationals, 0); }
  /// Throws NotInRing unless 2 <= p < 2^31 and p is prime.
  static BaseRing prime_field(std::int64_t p);
  /// Accepts "Z", "Q" or "Fp:<p>".
  static BaseRing parse(std::string_view spec);

  Kind kind() const noexcept { return kind_; }
  std::uint32_t modulus() const noexcept { return modulus_; }
  bool is_field() const noexcept { return kind_ != Kind::Integers; }

  /// Canonical representative of x. Throws NotInRing for non-integers over Z
  /// and for denominators divisible by p over GF(p).
  mpq_class canonical(const mpq_class& x) const;
  bool contains(const mpq_class& x) const;

  mpq_class add(const mpq_class& a, const mpq_class& b) const;
  mpq_class sub(const mpq_class& a, const mpq_class& b) const;
  mpq_class mul(const mpq_class& a, const mpq_class& b) const;
  mpq_class neg(const mpq_class& a) const;

  bool is_unit(const mpq_class& a) const;
  std::optional<mpq_class> inverse(const mpq_class& a) const;

  std::string to_string() const;

  friend bool operator==(const BaseRing&, const BaseRing&) = default;

 private:
  BaseRing(Kind kind, std::uint32_t modulus) : kind_(kind), modulus_(modulus) {}

  mpq_class reduce_mod(const mpq_class& x) const;

  Kind kind_;
  std::uint32_t modulus_;
};

bool is_prime(std::int64_t p);

}  // namespace symplex
