#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "symplex/lattice.hpp"
#include "symplex/monoid.hpp"

namespace symplex {

/// Polyhedral cone spanned by finitely many integer rays. Points of the unit
/// sphere are represented by the primitive integer vector on their ray.
class RationalCone {
 public:
  RationalCone() = default;
  /// Rays are made primitive and deduplicated; non-extreme rays are kept.
  /// Throws RankTooLarge for r > 6.
  RationalCone(std::size_t rank, const std::vector<IntVector>& rays);

  std::size_t rank() const noexcept { return rank_; }
  std::size_t dim() const noexcept { return data_.dim; }
  bool pointed() const noexcept { return data_.pointed; }
  const std::vector<lattice::ZVec>& rays() const noexcept { return rays_; }
  std::vector<lattice::ZVec> extreme_rays() const;
  const std::vector<lattice::ZVec>& facets() const noexcept { return data_.facets; }
  const std::vector<lattice::ZVec>& equations() const noexcept { return data_.equations; }

  bool contains(const lattice::ZVec& v) const { return data_.contains(v); }
  bool contains_interior(const lattice::ZVec& v) const { return data_.contains_relative_interior(v); }
  bool contains(const RationalCone& other) const;
  bool same_as(const RationalCone& other) const {
    return contains(other) && other.contains(*this);
  }

  /// Rays lying on the facet with the given index.
  std::vector<lattice::ZVec> facet_rays(std::size_t facet) const;
  /// Every face other than the cone itself, as ray subsets (the apex {0} is
  /// the empty subset). Requires a pointed cone.
  std::vector<std::vector<lattice::ZVec>> proper_faces() const;

  std::string describe() const;

 private:
  std::size_t rank_ = 0;
  std::vector<lattice::ZVec> rays_;
  lattice::ConeData data_;
};

RationalCone cone_of(const MonoidSpec& m);

/// Members of m reachable with at most `bound` generator steps, 0 excluded.
std::vector<ExponentVector> enumerate_members(const MonoidSpec& m, std::size_t bound);

struct SelectedMonoid {
  MonoidPtr monoid;
  /// Generators were read off a bounded enumeration, so the result may be a
  /// proper submonoid of the true M(X).
  bool bounded_approximation = true;
  std::size_t bound = 0;
};

/// M(X): generators are the irreducible members of M (up to `bound`
/// generator steps) lying in X. Throws NotSubcone unless X lies in cone(M).
SelectedMonoid submonoid_select(const MonoidSpec& m, const RationalCone& x, std::size_t bound);

/// Generators of int(M) (members strictly inside every facet) up to `bound`.
/// Monoids whose cone has no facets are returned unchanged.
SelectedMonoid interior_monoid(const MonoidPtr& m, std::size_t bound);
bool is_interior(const MonoidSpec& m, const ExponentVector& v);

struct DivisibilityReport {
  bool holds_on_sample = true;
  std::size_t checked = 0;
  std::vector<std::pair<ExponentVector, ExponentVector>> witnesses;  // (m, n) with c*n = m
  /// Members whose c-th part only exists at the next truncation level.
  std::vector<ExponentVector> truncation_frontier;
  std::vector<ExponentVector> failures;
};

DivisibilityReport is_c_divisible(const MonoidSpec& m, std::int64_t c, std::size_t bound);

struct PolarizedTriple {
  MonoidPtr monoid;
  lattice::ZVec apex;
  RationalCone base;
  ExponentVector t_exponent;
  std::size_t generation_bound = 8;
};

struct AxiomResult {
  bool passed = true;
  std::string detail;
  std::vector<std::string> witnesses;
};

struct PolarizedReport {
  AxiomResult axiom1;
  AxiomResult axiom2;
  AxiomResult axiom3;
  std::size_t bound = 0;
  bool all_passed() const { return axiom1.passed && axiom2.passed && axiom3.passed; }
};

PolarizedReport validate_polarized(const PolarizedTriple& triple);

/// Z_{>=0}^2 with apex e1 over the base cone(e2, (1,1)); t = e1.
PolarizedTriple shipped_polarized_example();

struct PyramidSplit {
  lattice::ZVec apex;     // the chosen ray v
  RationalCone pyramid;   // delta = cone(v, F)
  RationalCone rest;      // gamma
  std::vector<lattice::ZVec> shared;  // rays of F = delta cap gamma
  bool simplicial = false;
};

/// Splits a pointed cone into a pyramid over its colexicographically least
/// ray (compared from the last coordinate) and the remaining cone. Throws TooSmall for dim < 2 or fewer than 3
/// rays.
PyramidSplit pyramid_split(const RationalCone& gamma);

}  // namespace symplex
