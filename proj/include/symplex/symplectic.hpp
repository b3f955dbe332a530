#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "symplex/matrix.hpp"

namespace symplex {

/// Pair permutation (1,2)(3,4)...(2n-1,2n) on 1-based indices.
constexpr std::size_t sigma(std::size_t i) noexcept { return (i % 2 == 1) ? i + 1 : i - 1; }

/// Standard form psi_n = psi_1 + ... + psi_1 (block diagonal), psi_1 = [[0,1],[-1,0]].
Matrix psi(const Ring& ring, std::size_t n);

/// A square matrix of even size 2n with a cached Sp membership flag.
class SympMatrix {
 public:
  /// Throws DimensionMismatch unless the matrix is square of even size.
  explicit SympMatrix(Matrix m);
  SympMatrix(const SympMatrix& other);
  SympMatrix& operator=(const SympMatrix& other);

  std::size_t n() const noexcept { return m_.rows() / 2; }
  const Matrix& matrix() const noexcept { return m_; }
  const Ring& ring() const noexcept { return m_.ring(); }
  const RingElement& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  /// alpha^T psi alpha == psi, computed once.
  bool is_symplectic() const;
  std::optional<bool> cached_certificate() const;

  /// Product; the certificate is inherited when both factors carry one.
  SympMatrix operator*(const SympMatrix& other) const;
  /// -psi alpha^T psi. Only meaningful for symplectic input.
  SympMatrix symplectic_inverse() const;

  friend bool operator==(const SympMatrix& a, const SympMatrix& b) { return a.m_ == b.m_; }

 private:
  SympMatrix(Matrix m, std::int8_t certificate);

  Matrix m_;
  mutable std::atomic<std::int8_t> certificate_{-1};
};

bool sp_check(const SympMatrix& alpha);

/// A member of M^(n): exactly one of each pair {2k-1, 2k}.
class IndexSet {
 public:
  /// Throws BadIndices if a pair is missing or doubled, or an index is out of range.
  IndexSet(std::size_t n, std::vector<std::size_t> members);

  /// The set containing the odd index of each pair.
  static IndexSet odd(std::size_t n);
  /// All 2^n members of M^(n) in a fixed order.
  static std::vector<IndexSet> all(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  const std::vector<std::size_t>& members() const noexcept { return members_; }
  bool contains(std::size_t i) const;
  /// sigma(I), which is the complement in {1..2n}.
  IndexSet complement() const;

  std::string to_string() const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::size_t n_;
  std::vector<std::size_t> members_;  // sorted
};

// Elementary generators. Indices are 1-based; the ring is taken from the
// parameter.

/// Id + l e_ij - l (-1)^(i+j) e_{sigma(j) sigma(i)}. Any i != j with
/// sigma(i) != j is accepted.
SympMatrix se(std::size_t n, std::size_t i, std::size_t j, const RingElement& lambda);
/// Id + l e_{i sigma(i)}.
SympMatrix se_diag(std::size_t n, std::size_t i, const RingElement& lambda);

struct SeIndices {
  std::size_t i;
  std::size_t j;
  RingElement lambda;
};
/// Rewrites se_ij(l) with i > j as the same matrix se_{sigma(j) sigma(i)}(-(-1)^(i+j) l).
SeIndices normalize_se(std::size_t i, std::size_t j, const RingElement& lambda);

/// se_ij(u) se_{sigma(i) sigma(j)}(s u^-1) se_ij(u) for an explicit middle sign s.
Matrix sw_product(std::size_t n, std::size_t i, std::size_t j, const RingElement& u, int middle_sign);

/// sw with s = (-1)^(i+j). If that product is not monomial, s = +1 is tried
/// and a fault is counted; SignConventionFault if both fail.
SympMatrix sw(std::size_t n, std::size_t i, std::size_t j, const RingElement& u);
std::size_t sign_convention_faults() noexcept;

/// Long-root Weyl element se_{i sigma(i)}(u) se_{sigma(i) i}(-u^-1) se_{i sigma(i)}(u).
SympMatrix sw_long(std::size_t n, std::size_t i, const RingElement& u);

struct DeltaPair {
  Ring ring;  // the Laurent extension in which t is a unit
  RingElement t;
  RingElement t_inverse;
  Matrix delta;
  Matrix inverse;
};

/// delta_I = diag(d_1..d_2n), d_i = t for i in I and 1 otherwise. Throws
/// NotMonomial unless t is a nonzero monomial, NotUnit if its coefficient is
/// not a unit of the base ring.
DeltaPair delta(const IndexSet& index_set, const RingElement& t);

/// delta_I alpha delta_I^-1 (direction +1) or delta_I^-1 alpha delta_I (-1),
/// computed by scaling entry (a,b) by d_a/d_b. The result lives over the
/// extended ring. With `verify_literal` the product is also formed and compared.
SympMatrix delta_conjugate(const IndexSet& index_set, const SympMatrix& alpha, const RingElement& t,
                           int direction, bool verify_literal = false);

/// u^T psi_n.
Vector tilde(const Vector& u);

// Words.

struct Token {
  enum class Op : std::uint8_t { SE, SEDiag, SW, DeltaConj };

  Op op = Op::SE;
  std::size_t i = 0;
  std::size_t j = 0;
  std::optional<RingElement> value;      // lambda or u
  std::optional<IndexSet> index_set;     // DeltaConj only
  int direction = 1;                     // DeltaConj only
  bool inverted = false;

  static Token se(std::size_t i, std::size_t j, RingElement lambda);
  static Token se_diag(std::size_t i, RingElement lambda);
  static Token sw(std::size_t i, std::size_t j, RingElement u);
  static Token delta_conj(IndexSet index_set, int direction);

  Token inverse() const;
  std::string to_string() const;
};

/// A product of generators, read left to right. A DeltaConj token stands for
/// the diagonal delta_I^direction and needs `t`.
struct GenWord {
  std::size_t n = 0;
  Ring ring;
  std::optional<RingElement> t;
  std::vector<Token> tokens;

  GenWord(std::size_t n_, Ring ring_) : n(n_), ring(std::move(ring_)) {}

  std::size_t size() const noexcept { return tokens.size(); }
  bool empty() const noexcept { return tokens.empty(); }
  std::string to_string() const;
};

/// Validates indices, units and rings. Throws BadIndices, NotUnit, MixedRing.
void validate_token(const Token& token, std::size_t n, const Ring& ring);
/// The matrix of a single token over `ring` (the word ring or its extension).
Matrix token_matrix(const Token& token, std::size_t n, const Ring& ring,
                    const std::optional<RingElement>& t);
SympMatrix word_eval(const GenWord& word);
GenWord word_invert(const GenWord& word);

/// The se or se_{i sigma(i)} token whose matrix equals alpha, if any. The
/// se form is returned with the first index given by the entry found first
/// in row-major order.
std::optional<Token> as_single_generator(const SympMatrix& alpha);

// Subgroup shapes.

using Predicate = std::function<bool(const RingElement&)>;

/// Accepts every element.
Predicate whole_ring();
/// Elements all of whose terms are divisible by the monomial t inside the ring.
Predicate ideal_of_monomial(const RingElement& t);

struct Shape {
  enum class Kind : std::uint8_t { SI, SD, SW, SJ };
  Kind kind;
  std::optional<IndexSet> index_set;
  Predicate lambda;

  static Shape sI(IndexSet index_set, Predicate lambda = whole_ring());
  static Shape sJ(IndexSet index_set, Predicate lambda = whole_ring());
  static Shape sD(Predicate lambda = whole_ring());
  static Shape sW();
};

/// Pattern check. sD: diagonal symplectic with d - 1 in Lambda. sW: monomial
/// symplectic. sI/sJ: Id, one generator se_ij(l) with i in I and l in
/// Lambda, or a symplectic matrix that is upper unitriangular in the order
/// (i_1 < ... < i_n, sigma(i_n), ..., sigma(i_1)) with off-diagonal entries in
/// Lambda. Products outside these patterns are reported false.
bool subgroup_shape(const SympMatrix& alpha, const Shape& shape);

// Transvections on P + R^2 with P = (R^2k, psi_k).

struct FormVector {
  Vector p;
  RingElement a;
  RingElement b;
};

/// <p, q> = p^T psi_k q.
RingElement phi_q(const Vector& q, const Vector& p);
/// <(p,a,b),(p',a',b')> = <p,p'> + a b' - b a'.
RingElement combined_form(const FormVector& x, const FormVector& y);
/// (p, a, b) -> (p + b q, a - <p,q> + b, b).
FormVector transvection_delta(const Vector& q, const FormVector& v);
/// (p, a, b) -> (p + a q, a, b + <p,q> - a).
FormVector transvection_gamma(const Vector& q, const FormVector& v);

}  // namespace symplex
