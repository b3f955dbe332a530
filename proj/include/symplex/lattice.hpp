#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

// Exact integer linear algebra for small ambient dimensions: ranks, kernels,
// lattice membership and brute-force facet enumeration of rational cones.

namespace symplex::lattice {

using ZVec = std::vector<mpz_class>;

ZVec to_zvec(std::span<const std::int64_t> v);
std::vector<std::int64_t> to_int64(const ZVec& v);

mpz_class dot(const ZVec& a, const ZVec& b);
bool is_zero(const ZVec& v);
/// Divides out the gcd of the coordinates. The zero vector is returned as is.
ZVec primitive(ZVec v);

std::size_t rank(const std::vector<ZVec>& rows, std::size_t ambient);
/// Pivot columns of the reduced row echelon form. Projection onto these
/// coordinates is injective on the row space.
std::vector<std::size_t> pivot_columns(const std::vector<ZVec>& rows, std::size_t ambient);
/// Primitive integer basis of {x : r.x = 0 for all rows r}.
std::vector<ZVec> orthogonal_complement(const std::vector<ZVec>& rows, std::size_t ambient);
/// Generalized cross product of d-1 vectors in Z^d (signed maximal minors).
ZVec cofactor_normal(const std::vector<ZVec>& vectors);

bool in_span(const std::vector<ZVec>& rows, const ZVec& v, std::size_t ambient);

void for_each_combination(std::size_t n, std::size_t k,
                          const std::function<void(const std::vector<std::size_t>&)>& visit);

/// Integer row-echelon basis of the subgroup of Z^n generated by a set of
/// vectors; answers "v in Z-span(gens)" exactly.
class LatticeBasis {
 public:
  LatticeBasis() = default;
  LatticeBasis(const std::vector<ZVec>& gens, std::size_t ambient);

  bool contains(ZVec v) const;
  std::size_t ambient() const noexcept { return ambient_; }

 private:
  std::size_t ambient_ = 0;
  std::vector<ZVec> rows_;
  std::vector<std::size_t> pivots_;
};

/// Half-space description of the cone generated by a finite set of integer
/// vectors: x in cone iff equations.x = 0 and facets.x >= 0.
struct ConeData {
  std::size_t ambient = 0;
  std::size_t dim = 0;
  std::vector<ZVec> facets;     // primitive inward normals
  std::vector<ZVec> equations;  // primitive basis of span^perp
  bool pointed = true;
  ZVec grading;                 // sum of facets: > 0 on cone \ lineality

  bool contains(const ZVec& x) const;
  /// Relative interior: equations hold, all facet inequalities strict.
  bool contains_relative_interior(const ZVec& x) const;
  bool in_span(const ZVec& x) const;
};

ConeData analyze_cone(const std::vector<ZVec>& generators, std::size_t ambient);

}  // namespace symplex::lattice
