#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symplex/lattice.hpp"

namespace symplex {

using IntVector = std::vector<std::int64_t>;

/// Point of Q^r stored as integers scaled by a common denominator D
/// (coordinate k is scaled()[k] / D). D = 1 for free and affine monoids and
/// c^k for a c-divisible truncation at level k.
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(IntVector scaled, std::int64_t denominator = 1);

  static ExponentVector zero(std::size_t rank, std::int64_t denominator = 1) {
    return ExponentVector(IntVector(rank, 0), denominator);
  }
  static ExponentVector from_rationals(std::span<const mpq_class> coords, std::int64_t denominator);

  std::size_t rank() const noexcept { return scaled_.size(); }
  std::int64_t denominator() const noexcept { return denominator_; }
  const IntVector& scaled() const noexcept { return scaled_; }
  mpq_class coord(std::size_t k) const;
  bool is_zero() const;

  ExponentVector operator+(const ExponentVector& other) const;
  ExponentVector operator-(const ExponentVector& other) const;
  ExponentVector operator-() const;
  ExponentVector times(std::int64_t k) const;

  /// Lexicographic on the scaled integers (same as lexicographic on the
  /// rational coordinates since D > 0).
  friend std::strong_ordering operator<=>(const ExponentVector& a, const ExponentVector& b) {
    return a.scaled_ <=> b.scaled_;
  }
  friend bool operator==(const ExponentVector& a, const ExponentVector& b) {
    return a.scaled_ == b.scaled_ && a.denominator_ == b.denominator_;
  }

  std::string to_string() const;

 private:
  IntVector scaled_;
  std::int64_t denominator_ = 1;
};

class MonoidSpec;
using MonoidPtr = std::shared_ptr<const MonoidSpec>;

/// Finitely described commutative monoid inside Q^r.
///
/// FreeMixed(m, n): Z_{>=0}^m x Z^n, polynomial variables first.
/// Affine(G): non-negative integer combinations of integer generators G.
/// CDivisibleTruncation(base, c, k): (1/c^k) * base, the level-k stage of the
///   c-divisible hull of an affine monoid.
///
/// Affine membership is decided by a certificate search over non-negative
/// combinations. The search is exact unless a certificate would need a
/// coefficient sum above search_bound(); in that case MembershipBoundExceeded
/// is thrown instead of answering "no".
class MonoidSpec {
 public:
  enum class Kind : std::uint8_t { FreeMixed, Affine, CDivisibleTruncation };

  static constexpr std::size_t kDefaultSearchBound = 64;

  static MonoidPtr free_mixed(std::size_t polynomial_vars, std::size_t laurent_vars,
                              std::vector<std::string> names = {});
  static MonoidPtr affine(std::vector<IntVector> generators,
                          std::size_t search_bound = kDefaultSearchBound,
                          std::vector<std::string> names = {});
  static MonoidPtr affine_with_rank(std::size_t rank, std::vector<IntVector> generators,
                                    std::size_t search_bound = kDefaultSearchBound,
                                    std::vector<std::string> names = {});
  static MonoidPtr c_divisible(MonoidPtr base, std::int64_t c, unsigned level);
  /// Smallest monoid of the same kind family containing m and -v. Returns m
  /// itself when -v is already a member.
  static MonoidPtr adjoin_inverse(const MonoidPtr& m, const ExponentVector& v);

  Kind kind() const noexcept { return kind_; }
  std::size_t rank() const noexcept { return rank_; }
  std::int64_t denominator() const noexcept { return denominator_; }
  std::size_t polynomial_vars() const noexcept { return poly_vars_; }
  std::size_t laurent_vars() const noexcept { return laurent_vars_; }
  std::size_t search_bound() const noexcept { return search_bound_; }
  const MonoidPtr& base() const noexcept { return base_; }
  std::int64_t c() const noexcept { return c_; }
  unsigned level() const noexcept { return level_; }

  /// Integer generators of an affine monoid (or of the base of a truncation).
  const std::vector<IntVector>& integer_generators() const noexcept { return int_gens_; }
  /// Monoid generators in this monoid's exponent scale. For FreeMixed the
  /// Laurent directions appear with both signs.
  std::vector<ExponentVector> generators() const;

  const std::vector<std::string>& names() const noexcept { return names_; }
  std::string variable_name(std::size_t k) const;
  std::optional<std::size_t> variable_index(std::string_view name) const;

  bool is_positive() const noexcept { return positive_; }
  bool contains(const ExponentVector& v) const;
  /// Coefficients on integer_generators() for affine monoids whose cone is
  /// pointed; nullopt when v is not a member.
  std::optional<IntVector> certificate(const ExponentVector& v) const;

  ExponentVector zero() const { return ExponentVector::zero(rank_, denominator_); }
  ExponentVector unit_vector(std::size_t k) const;

  /// Structural equality (kind, parameters, generators, names).
  bool same_as(const MonoidSpec& other) const;

  std::string describe() const;

  // Construction goes through the factories; public for make_shared.
  struct Private {};
  MonoidSpec(Private, Kind kind) : kind_(kind) {}

 private:
  void finish_affine();
  bool affine_contains(const lattice::ZVec& target, IntVector* cert) const;

  Kind kind_;
  std::size_t rank_ = 0;
  std::int64_t denominator_ = 1;
  std::size_t poly_vars_ = 0;
  std::size_t laurent_vars_ = 0;
  std::size_t search_bound_ = kDefaultSearchBound;
  std::vector<IntVector> int_gens_;
  MonoidPtr base_;
  std::int64_t c_ = 1;
  unsigned level_ = 0;
  std::vector<std::string> names_;
  bool positive_ = true;

  // Affine cache.
  lattice::ConeData cone_;
  lattice::LatticeBasis lattice_;
  lattice::LatticeBasis unit_lattice_;
  std::vector<std::size_t> graded_gens_;  // generators off the lineality space
};

bool same_monoid(const MonoidPtr& a, const MonoidPtr& b);

}  // namespace symplex
