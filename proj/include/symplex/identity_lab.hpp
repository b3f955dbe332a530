#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "symplex/random.hpp"
#include "symplex/symplectic.hpp"

namespace symplex {

struct LemmaReport {
  enum class Mode { Symbolic, Randomized };

  std::string lemma_id;
  Mode mode = Mode::Symbolic;
  std::size_t instances_run = 0;
  std::vector<std::string> failures;
  std::map<std::string, std::string> notes;

  bool passed() const { return failures.empty(); }
  /// Adds the other report's instances and failures.
  void absorb(const LemmaReport& other);
};

/// Which sign turns f into f' in the rank-one formulas.
enum class SignReading { PowerOfJ, PowerOfSigmaJ };

/// gamma se_ij(t f) gamma^-1 against Id + t f' v w~ + t f' w v~ (or
/// Id + t f' v v~ when j = sigma(i)), with v = gamma e_i, w = gamma e_sigma(j);
/// then the delta_I-conjugated form Id + f'(v1 w1~ + w1 v1~) and the
/// orthogonality (f' w~) v = 0. When the ring is a field the conjugated
/// matrix is also re-factored.
LemmaReport check_rank_one_conjugation(const GenWord& gamma, std::size_t i, std::size_t j, const RingElement& f,
                                       const RingElement& t, const IndexSet& index_set, SignReading reading);

/// delta_I alpha delta_I^-1 by the entry pattern against the literal
/// product; notes whether the result stays polynomial in t.
LemmaReport check_eq_pattern(const IndexSet& index_set, const SympMatrix& alpha, const RingElement& t);

/// delta_I se_ij(c) delta_I^-1 against se_ij(tc), se_ij(c/t) or se_ij(c) as
/// the index pattern predicts (j = sigma(i) means the long-root generator).
LemmaReport check_generator_table(std::size_t i, std::size_t j, const IndexSet& index_set, const RingElement& c,
                                  const RingElement& t);

/// Randomized: both transvections preserve the combined form on R^2k + R^2.
LemmaReport check_transvection_preservation(std::size_t trials, std::size_t k, const BaseRing& base,
                                            SplitMix64& rng);
/// One instance with every coordinate a free variable over Q.
LemmaReport check_transvection_symbolic(std::size_t k);

struct SuiteReport {
  std::uint64_t seed = 0;
  std::map<std::string, LemmaReport> lemmas;

  bool all_passed() const;
};

/// form-axioms, generators, delta-identities, l1-rank-one, l1-eq-pattern,
/// l2-table, transvections.
const std::vector<std::string>& lemma_ids();

/// Throws UnknownLemmaId. Deterministic in (selection, seed).
SuiteReport run_suite(const std::vector<std::string>& selection, std::uint64_t seed);

}  // namespace symplex
