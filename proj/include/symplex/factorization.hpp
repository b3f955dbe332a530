#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "symplex/symplectic.hpp"

namespace symplex {

struct FactorStats {
  std::size_t token_count = 0;
  std::size_t pivot_steps = 0;
};

/// word_eval(word) * residual == input.
struct FactorizationResult {
  GenWord word;
  SympMatrix residual;
  FactorStats stats;

  bool complete() const { return residual.matrix().is_identity(); }
};

struct FactorOptions {
  /// Re-check the form after every row operation.
  bool verify_steps = false;
};

/// Throws NotSymplectic or NotAField.
FactorizationResult factor_over_field(const SympMatrix& alpha, FactorOptions options = {});
/// Z, a field, or k[x]. Throws NotSymplectic or NotEuclidean.
FactorizationResult factor_over_euclidean(const SympMatrix& alpha, FactorOptions options = {});
/// Entries are rationals with denominators prime to p. Throws NotLocal or NotSymplectic.
FactorizationResult local_ring_factor(const SympMatrix& alpha, std::int64_t p, FactorOptions options = {});

/// p-adic valuation of a nonzero rational.
std::int64_t p_valuation(const mpq_class& x, std::int64_t p);

/// alpha = beta1 * beta2 * beta3 with beta1 a word of se tokens whose first
/// index lies in I, beta2 monomial symplectic, beta3 a word of se tokens
/// whose first index lies in J.
struct BruhatResult {
  GenWord beta1;
  SympMatrix beta2;
  GenWord beta3;
};

/// Over a field of characteristic other than 2 with n >= 2 (long-root
/// generators are expanded as commutators). Throws NotSymplectic, NotAField
/// or DecompositionFailed.
BruhatResult bruhat_decompose(const SympMatrix& alpha, const IndexSet& index_i, const IndexSet& index_j);

/// The π_K order: members of K ascending, then their partners descending.
std::vector<std::size_t> pi_order(const IndexSet& k);

/// Monomial symplectic x sending e_{π_J[k]} to ±e_{π_I[k]}.
SympMatrix order_transport(const Ring& ring, const IndexSet& index_i, const IndexSet& index_j);

/// Word of se tokens with first index in K for a symplectic matrix that is
/// upper unitriangular in the π_K order. Throws DecompositionFailed otherwise.
GenWord factor_parabolic_unipotent(const SympMatrix& u, const IndexSet& k);

}  // namespace symplex
