// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>

#include "symplex/error.hpp"
#include "symplex/factorization.hpp"
#include "symplex/geometry.hpp"
#include "symplex/identity_lab.hpp"
#include "symplex/random_word.hpp"

using namespace symplex;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool ok = true;
  std::string detail;
};

Outcome suite_outcome(const std::string& id) {
  const auto rep = run_suite({id}, kSeed).lemmas.at(id);
  Outcome o{rep.passed(), std::to_string(rep.instances_run) + " instances, " + std::to_string(rep.failures.size()) +
                              " failures"};
  if (!rep.failures.empty()) o.detail += "; first: " + rep.failures.front();
  return o;
}

Ring constants(const BaseRing& base) { return Ring(base, MonoidSpec::free_mixed(0, 0)); }

Outcome form_axioms() {
  Outcome o = suite_outcome("form-axioms");
  // Entry-level check straight from the definition.
  const Ring z = constants(BaseRing::integers());
  for (std::size_t n = 1; n <= 6; ++n) {
    const Matrix p = psi(z, n);
    for (std::size_t r = 0; r < 2 * n; ++r) {
      for (std::size_t c = 0; c < 2 * n; ++c) {
        long want = 0;
        if (r % 2 == 0 && c == r + 1) want = 1;
        if (r % 2 == 1 && c + 1 == r) want = -1;
        if (!(p(r, c) == z.constant(want))) o.ok = false;
        RingElement sq = z.zero();
        for (std::size_t k = 0; k < 2 * n; ++k) sq += p(r, k) * p(k, c);
        if (!(sq == z.constant(r == c ? -1 : 0))) o.ok = false;
      }
    }
  }
  return o;
}

Outcome generators() {
  const std::size_t before = sign_convention_faults();
  Outcome o = suite_outcome("generators");
  const std::size_t faults = sign_convention_faults() - before;
  o.detail += ", sign convention faults " + std::to_string(faults);
  o.ok = o.ok && faults == 0;
  return o;
}

Outcome factorization() {
  Outcome o;
  SplitMix64 rng(kSeed);
  const Ring f7 = constants(BaseRing::prime_field(7));
  const Ring z = constants(BaseRing::integers());
  std::size_t done = 0, max_tokens = 0;
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = k % 2 == 0 ? 2 : 3;
    const SympMatrix alpha = word_eval(random_word(n, 4 + rng.uniform(12), f7, rng));
    const auto r = factor_over_field(alpha);
    if (r.complete() && word_eval(r.word) == alpha) ++done;
    if (n == 2) max_tokens = std::max(max_tokens, r.stats.token_count);
  }
  std::size_t done_z = 0;
  for (int k = 0; k < 200; ++k) {
    const GenWord w = random_word(2, 4 + rng.uniform(8), z, rng);
    for (const auto& t : w.tokens) {
      const mpq_class v = *t.value->constant_value();
      if (abs(v) > 3) o.ok = false;
    }
    const SympMatrix alpha = word_eval(w);
    const auto r = factor_over_euclidean(alpha);
    if (r.complete() && word_eval(r.word) == alpha) ++done_z;
  }
  o.ok = o.ok && done == 500 && done_z == 200;
  o.detail = "GF(7) " + std::to_string(done) + "/500, Z " + std::to_string(done_z) + "/200, max Sp4 tokens " +
             std::to_string(max_tokens);
  return o;
}

Outcome bruhat() {
  Outcome o;
  SplitMix64 rng(kSeed + 9);
  const Ring f5 = constants(BaseRing::prime_field(5));
  const IndexSet def = IndexSet::odd(2);
  std::size_t good = 0, failed = 0, all_pairs = 0, all_failed = 0;
  for (int k = 0; k < 100; ++k) {
    GenWord w = random_word(2, 10, f5, rng);
    if (rng.uniform(2) == 1) w.tokens.push_back(Token::sw(1 + rng.uniform(2), 3 + rng.uniform(2), f5.constant(2)));
    const SympMatrix alpha = word_eval(w);
    try {
      const auto b = bruhat_decompose(alpha, def, def);
      const bool mono = b.beta2.matrix().is_monomial() && sp_check(b.beta2);
      if (mono && word_eval(b.beta1) * b.beta2 * word_eval(b.beta3) == alpha) ++good;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DecompositionFailed) throw;
      ++failed;
    }
    for (const auto& si : IndexSet::all(2)) {
      for (const auto& sj : IndexSet::all(2)) {
        ++all_pairs;
        try {
          (void)bruhat_decompose(alpha, si, sj);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::DecompositionFailed) throw;
          ++all_failed;
        }
      }
    }
  }
  o.ok = good == 100 && failed == 0;
  o.detail = std::to_string(good) + "/100 reconstructed, DecompositionFailed rate " + std::to_string(failed) +
             "/100 (I=J={1,3}); " + std::to_string(all_failed) + "/" + std::to_string(all_pairs) + " over all (I,J)";
  return o;
}

Outcome geometry() {
  Outcome o;
  const PolarizedReport rep = validate_polarized(shipped_polarized_example());
  o.ok = rep.all_passed() && rep.bound == 8;
  const RationalCone gamma(2, {{1, 0}, {1, 1}, {1, 2}});
  const PyramidSplit split = pyramid_split(gamma);
  SplitMix64 rng(kSeed + 10);
  std::size_t agree = 0;
  for (int k = 0; k < 1000; ++k) {
    lattice::ZVec v;
    do {
      v = {mpz_class(static_cast<long>(rng.range(-30, 30))), mpz_class(static_cast<long>(rng.range(-30, 30)))};
    } while (v[0] == 0 && v[1] == 0);
    if (gamma.contains(v) == (split.pyramid.contains(v) || split.rest.contains(v))) ++agree;
  }
  o.ok = o.ok && agree == 1000;
  o.detail = std::string("polarized axioms ") + (rep.all_passed() ? "pass" : "fail") + " at bound " +
             std::to_string(rep.bound) + "; split agrees on " + std::to_string(agree) + "/1000 rays";
  return o;
}

RingElement naive_product(const RingElement& a, const RingElement& b) {
  const BaseRing& base = a.ring().base();
  std::map<ExponentVector, mpq_class> acc;
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) {
      const ExponentVector e = x.exponent + y.exponent;
      const mpq_class c = base.mul(x.coeff, y.coeff);
      auto it = acc.find(e);
      if (it == acc.end()) acc.emplace(e, c);
      else it->second = base.add(it->second, c);
    }
  }
  std::vector<std::pair<ExponentVector, mpq_class>> terms;
  for (const auto& [e, c] : acc) {
    if (c != 0) terms.emplace_back(e, c);
  }
  return a.ring().from_terms(std::move(terms));
}

Outcome ring_oracle() {
  Outcome o;
  SplitMix64 rng(kSeed + 11);
  std::size_t pairs = 0, units = 0;
  for (const BaseRing& base : {BaseRing::integers(), BaseRing::rationals(), BaseRing::prime_field(101)}) {
    const Ring r(base, MonoidSpec::free_mixed(2, 1));
    auto random_element = [&]() {
      std::vector<std::pair<ExponentVector, mpq_class>> terms;
      const std::size_t count = rng.uniform(6);
      for (std::size_t k = 0; k < count; ++k) {
        const ExponentVector e(IntVector{rng.range(0, 3), rng.range(0, 3), rng.range(-3, 3)});
        mpq_class c(static_cast<long>(rng.range(-9, 9)));
        if (base.kind() == BaseRing::Kind::Rationals) c /= static_cast<long>(rng.range(1, 4));
        terms.emplace_back(e, base.canonical(c));
      }
      return r.from_terms(std::move(terms));
    };
    for (int k = 0; k < 100; ++k) {
      const RingElement a = random_element(), b = random_element();
      if (poly_mul(a, b) == naive_product(a, b)) ++pairs;
      else o.ok = false;
      for (const RingElement& x : {a, r.monomial(ExponentVector(IntVector{0, 0, rng.range(-3, 3)}),
                                                 base.canonical(static_cast<long>(rng.range(1, 5))))}) {
        const UnitResult u = is_unit(x);
        if (u.status != UnitStatus::Yes) continue;
        ++units;
        if (!u.inverse || !(x * *u.inverse).is_one()) o.ok = false;
      }
    }
  }
  o.detail = std::to_string(pairs) + "/300 products match the convolution, " + std::to_string(units) +
             " units inverted";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "form axioms", 1, form_axioms},
      {2, "generator soundness", 5, generators},
      {3, "delta conjugation table", 30, [] { return suite_outcome("l2-table"); }},
      {4, "delta identities", 5, [] { return suite_outcome("delta-identities"); }},
      {5, "entrywise delta pattern", 30, [] { return suite_outcome("l1-eq-pattern"); }},
      {6, "rank-one conjugation", 60, [] { return suite_outcome("l1-rank-one"); }},
      {7, "transvections", 10, [] { return suite_outcome("transvections"); }},
      {8, "factorization round trip", 120, factorization},
      {9, "Bruhat splitting", 60, bruhat},
      {10, "geometry", 30, geometry},
      {11, "ring oracle", 10, ring_oracle},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.ok && secs <= c.limit_seconds;
    if (!pass) ++failures;
    std::printf("criterion %2d %-26s %s  %.2fs/%gs  %s\n", c.id, c.name, pass ? "PASS" : "FAIL", secs,
                c.limit_seconds, o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
