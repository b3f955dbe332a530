#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symplex/base_ring.hpp"
#include "symplex/monoid.hpp"

namespace symplex {

class RingElement;

/// The monoid algebra base[monoid].
class Ring {
 public:
  Ring(BaseRing base, MonoidPtr monoid);

  const BaseRing& base() const noexcept { return base_; }
  const MonoidSpec& monoid() const noexcept { return *monoid_; }
  const MonoidPtr& monoid_ptr() const noexcept { return monoid_; }

  /// Coefficients in a field and a trivial (rank 0) monoid.
  bool is_field() const noexcept { return base_.is_field() && monoid_->rank() == 0; }

  RingElement zero() const;
  RingElement one() const;
  RingElement constant(const mpq_class& c) const;
  RingElement constant(long c) const;
  RingElement monomial(const ExponentVector& e, const mpq_class& coeff = 1) const;
  /// The k-th coordinate monomial x_k.
  RingElement variable(std::size_t k) const;
  RingElement variable(std::string_view name) const;
  /// Validates membership of every exponent and merges duplicates.
  RingElement from_terms(std::vector<std::pair<ExponentVector, mpq_class>> terms) const;
  /// Parses "3*c*t^-1 - 1/2", "(1+x)^2" or "m[1/2,0]" (explicit exponent).
  RingElement parse(std::string_view text) const;

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.base_ == b.base_ && same_monoid(a.monoid_, b.monoid_);
  }

 private:
  BaseRing base_;
  MonoidPtr monoid_;
};

/// Sparse element of base[monoid]: terms sorted by exponent, no zero
/// coefficients. Values are immutable once built.
class RingElement {
 public:
  struct Term {
    ExponentVector exponent;
    mpq_class coeff;
  };

  explicit RingElement(Ring ring) : ring_(std::move(ring)) {}

  const Ring& ring() const noexcept { return ring_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_one() const;
  bool is_constant() const;
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  std::optional<mpq_class> constant_value() const;
  /// Coefficient of the given exponent (zero if absent).
  mpq_class coefficient(const ExponentVector& e) const;

  RingElement operator-() const;
  RingElement scaled(const mpq_class& c) const;
  RingElement pow(unsigned k) const;
  /// Same terms viewed in a ring whose monoid contains this one's.
  RingElement rehome(const Ring& super) const;

  friend RingElement operator+(const RingElement& a, const RingElement& b);
  friend RingElement operator-(const RingElement& a, const RingElement& b);
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  RingElement& operator+=(const RingElement& b) { return *this = *this + b; }
  RingElement& operator-=(const RingElement& b) { return *this = *this - b; }
  RingElement& operator*=(const RingElement& b) { return *this = *this * b; }

  friend bool operator==(const RingElement& a, const RingElement& b);

  std::string to_string() const;

  /// Terms must already be canonical (sorted, merged, nonzero).
  static RingElement from_canonical(Ring ring, std::vector<Term> terms);

 private:
  Ring ring_;
  std::vector<Term> terms_;
};

RingElement poly_add(const RingElement& a, const RingElement& b);
RingElement poly_mul(const RingElement& a, const RingElement& b);

enum class UnitStatus { Yes, No, Unknown };

struct UnitResult {
  UnitStatus status;
  std::optional<RingElement> inverse;
};

/// Units of base[M] for a domain base ring are monomials c*x^v with c a unit
/// and -v in M.
UnitResult is_unit(const RingElement& a);

/// Euclidean structure: Z (rank-0 monoid), a field (rank 0), or univariate
/// polynomials over a field (FreeMixed(1,0)).
bool is_euclidean(const Ring& ring);
/// |a| over Z, degree over k[x], 0 over a field. Zero has no norm.
mpz_class euclidean_norm(const RingElement& a);
std::pair<RingElement, RingElement> euclidean_divmod(const RingElement& a, const RingElement& b);

/// Ring map sending variable k of a FreeMixed ring to assignment[k].
/// Negative exponents need unit images.
RingElement substitute(const RingElement& a, const std::map<std::size_t, RingElement>& assignment,
                       const Ring& target);
/// Keeps exactly the terms whose exponent lies in the submonoid `face`.
RingElement retract(const RingElement& a, const MonoidSpec& face);

}  // namespace symplex
