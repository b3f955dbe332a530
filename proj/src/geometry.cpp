#include "symplex/geometry.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "symplex/error.hpp"

namespace symplex {

using lattice::ZVec;

namespace {

constexpr std::size_t kMaxConeRank = 6;

std::string zvec_string(const ZVec& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ',';
    s += v[k].get_str();
  }
  return s + ")";
}

std::vector<IntVector> to_int_rays(const std::vector<ZVec>& rays) {
  std::vector<IntVector> out;
  for (const auto& r : rays) out.push_back(lattice::to_int64(r));
  return out;
}

bool colex_less(const ZVec& a, const ZVec& b) {
  for (std::size_t k = a.size(); k-- > 0;) {
    if (a[k] != b[k]) return a[k] < b[k];
  }
  return false;
}

MonoidPtr monoid_like(const MonoidSpec& m, std::vector<IntVector> gens) {
  if (m.kind() == MonoidSpec::Kind::CDivisibleTruncation) {
    auto base = MonoidSpec::affine_with_rank(m.rank(), std::move(gens), m.search_bound(), m.names());
    return MonoidSpec::c_divisible(base, m.c(), m.level());
  }
  return MonoidSpec::affine_with_rank(m.rank(), std::move(gens), m.search_bound(), m.names());
}

/// Members of `pool` that are not a sum of two nonzero members of `pool`.
std::vector<IntVector> irreducibles(const std::vector<IntVector>& pool) {
  std::set<IntVector> lookup(pool.begin(), pool.end());
  std::vector<IntVector> out;
  for (const auto& e : pool) {
    bool reducible = false;
    for (const auto& a : pool) {
      if (a == e) continue;
      IntVector rest(e.size());
      for (std::size_t k = 0; k < e.size(); ++k) rest[k] = e[k] - a[k];
      if (lookup.count(rest)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) out.push_back(e);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// RationalCone

RationalCone::RationalCone(std::size_t rank, const std::vector<IntVector>& rays) : rank_(rank) {
  if (rank > kMaxConeRank) throw Error(ErrorCode::RankTooLarge, "cones are limited to rank 6");
  std::set<ZVec> seen;
  std::vector<ZVec> candidates;
  for (const auto& r : rays) {
    if (r.size() != rank) throw Error(ErrorCode::DimensionMismatch, "ray of wrong length");
    ZVec z = lattice::primitive(lattice::to_zvec(r));
    if (lattice::is_zero(z)) continue;
    if (seen.insert(z).second) candidates.push_back(std::move(z));
  }
  data_ = lattice::analyze_cone(candidates, rank);
  rays_ = std::move(candidates);
  std::sort(rays_.begin(), rays_.end());
}

std::vector<ZVec> RationalCone::extreme_rays() const {
  if (!data_.pointed) return rays_;
  std::vector<ZVec> out;
  for (const auto& r : rays_) {
    std::vector<ZVec> tight;
    for (const auto& h : data_.facets) {
      if (lattice::dot(h, r) == 0) tight.push_back(h);
    }
    if (lattice::rank(tight, rank_) + 1 == data_.dim) out.push_back(r);
  }
  return out;
}

bool RationalCone::contains(const RationalCone& other) const {
  return std::all_of(other.rays_.begin(), other.rays_.end(),
                     [&](const ZVec& r) { return contains(r); });
}

std::vector<ZVec> RationalCone::facet_rays(std::size_t facet) const {
  std::vector<ZVec> out;
  for (const auto& r : rays_) {
    if (lattice::dot(data_.facets.at(facet), r) == 0) out.push_back(r);
  }
  return out;
}

std::vector<std::vector<ZVec>> RationalCone::proper_faces() const {
  if (!pointed()) throw Error(ErrorCode::Unsupported, "face lattice of a non-pointed cone");
  using Mask = std::vector<bool>;
  std::set<Mask> faces;
  std::vector<Mask> frontier;
  for (std::size_t f = 0; f < data_.facets.size(); ++f) {
    Mask m(rays_.size());
    for (std::size_t i = 0; i < rays_.size(); ++i) m[i] = lattice::dot(data_.facets[f], rays_[i]) == 0;
    if (faces.insert(m).second) frontier.push_back(m);
  }
  faces.insert(Mask(rays_.size(), false));
  while (!frontier.empty()) {
    std::vector<Mask> next;
    const std::vector<Mask> known(faces.begin(), faces.end());
    for (const auto& a : frontier) {
      for (const auto& b : known) {
        Mask m(rays_.size());
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = a[i] && b[i];
        if (faces.insert(m).second) next.push_back(m);
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::vector<ZVec>> out;
  for (const auto& m : faces) {
    std::vector<ZVec> face;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i]) face.push_back(rays_[i]);
    }
    if (face.size() == rays_.size() && !rays_.empty()) continue;
    out.push_back(std::move(face));
  }
  return out;
}

std::string RationalCone::describe() const {
  std::string s = "cone[";
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    if (i) s += ',';
    s += zvec_string(rays_[i]);
  }
  return s + "]";
}

RationalCone cone_of(const MonoidSpec& m) {
  if (m.rank() > kMaxConeRank) throw Error(ErrorCode::RankTooLarge, "cones are limited to rank 6");
  std::vector<IntVector> rays;
  for (const auto& g : m.generators()) rays.push_back(g.scaled());
  const RationalCone all(m.rank(), rays);
  return RationalCone(m.rank(), to_int_rays(all.extreme_rays()));
}

// ---------------------------------------------------------------------------
// Submonoids

std::vector<ExponentVector> enumerate_members(const MonoidSpec& m, std::size_t bound) {
  const auto gens = m.generators();
  std::set<IntVector> seen{m.zero().scaled()};
  std::vector<IntVector> frontier{m.zero().scaled()};
  for (std::size_t step = 0; step < bound; ++step) {
    std::vector<IntVector> next;
    for (const auto& x : frontier) {
      for (const auto& g : gens) {
        IntVector y(x.size());
        for (std::size_t k = 0; k < y.size(); ++k) y[k] = x[k] + g.scaled()[k];
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  std::vector<ExponentVector> out;
  for (const auto& x : seen) {
    ExponentVector e(x, m.denominator());
    if (!e.is_zero()) out.push_back(std::move(e));
  }
  return out;
}

SelectedMonoid submonoid_select(const MonoidSpec& m, const RationalCone& x, std::size_t bound) {
  const RationalCone whole = cone_of(m);
  if (x.rank() != m.rank() || !whole.contains(x)) {
    throw Error(ErrorCode::NotSubcone, x.describe() + " is not inside " + whole.describe());
  }
  std::vector<IntVector> pool;
  for (const auto& e : enumerate_members(m, bound)) {
    if (x.contains(lattice::to_zvec(e.scaled()))) pool.push_back(e.scaled());
  }
  if (m.is_positive()) pool = irreducibles(pool);
  return {monoid_like(m, std::move(pool)), true, bound};
}

bool is_interior(const MonoidSpec& m, const ExponentVector& v) {
  return m.contains(v) && cone_of(m).contains_interior(lattice::to_zvec(v.scaled()));
}

SelectedMonoid interior_monoid(const MonoidPtr& m, std::size_t bound) {
  const RationalCone whole = cone_of(*m);
  if (whole.facets().empty()) return {m, false, bound};
  std::vector<IntVector> pool;
  for (const auto& e : enumerate_members(*m, bound)) {
    if (whole.contains_interior(lattice::to_zvec(e.scaled()))) pool.push_back(e.scaled());
  }
  if (m->is_positive()) pool = irreducibles(pool);
  return {monoid_like(*m, std::move(pool)), true, bound};
}

DivisibilityReport is_c_divisible(const MonoidSpec& m, std::int64_t c, std::size_t bound) {
  if (c <= 1) throw Error(ErrorCode::Unsupported, "c-divisibility needs c > 1");
  DivisibilityReport report;
  MonoidPtr next;
  if (m.kind() == MonoidSpec::Kind::CDivisibleTruncation && m.c() == c) {
    next = MonoidSpec::c_divisible(m.base(), c, m.level() + 1);
  }
  for (const auto& e : enumerate_members(m, bound)) {
    ++report.checked;
    const auto& s = e.scaled();
    if (std::all_of(s.begin(), s.end(), [c](std::int64_t x) { return x % c == 0; })) {
      IntVector part;
      for (auto x : s) part.push_back(x / c);
      ExponentVector n(std::move(part), e.denominator());
      if (m.contains(n)) {
        report.witnesses.emplace_back(e, std::move(n));
        continue;
      }
    }
    if (next && next->contains(ExponentVector(s, e.denominator() * c))) {
      report.truncation_frontier.push_back(e);
      continue;
    }
    report.failures.push_back(e);
  }
  report.holds_on_sample = report.failures.empty();
  return report;
}

// ---------------------------------------------------------------------------
// Polarized triples

namespace {

void fail(AxiomResult& a, std::string witness) {
  a.passed = false;
  a.witnesses.push_back(std::move(witness));
}

void check_normality_sample(const MonoidSpec& m, const RationalCone& cone, std::size_t bound,
                            AxiomResult& out) {
  std::vector<ZVec> gens;
  for (const auto& g : m.generators()) gens.push_back(lattice::to_zvec(g.scaled()));
  const lattice::LatticeBasis group(gens, m.rank());
  // Box radius R with (2R+1)^rank kept small.
  std::int64_t radius = static_cast<std::int64_t>(bound);
  auto box_size = [&](std::int64_t r) {
    double s = 1;
    for (std::size_t k = 0; k < m.rank(); ++k) s *= static_cast<double>(2 * r + 1);
    return s;
  };
  while (radius > 1 && box_size(radius) > 20000) --radius;
  IntVector x(m.rank(), -radius);
  while (true) {
    ZVec z = lattice::to_zvec(x);
    if (cone.contains(z) && group.contains(z) && !m.contains(ExponentVector(x))) {
      fail(out, "not normal: " + zvec_string(z) + " lies in cone(M) and gp(M) but not in M");
      return;
    }
    std::size_t k = 0;
    while (k < x.size() && x[k] == radius) x[k++] = -radius;
    if (k == x.size()) break;
    ++x[k];
  }
}

}  // namespace

PolarizedReport validate_polarized(const PolarizedTriple& triple) {
  PolarizedReport report;
  report.bound = triple.generation_bound;
  const MonoidSpec& m = *triple.monoid;
  const RationalCone& base = triple.base;
  const ZVec& p = triple.apex;

  // Axiom (i)
  AxiomResult& a1 = report.axiom1;
  a1.detail = "affine normal monoid (normality sampled), rational apex, apex off every proper face";
  const bool affine = m.kind() == MonoidSpec::Kind::Affine ||
                      (m.kind() == MonoidSpec::Kind::FreeMixed && m.laurent_vars() == 0);
  if (!affine) fail(a1, "monoid is not affine: " + m.describe());
  const RationalCone cone = cone_of(m);
  if (affine) check_normality_sample(m, cone, triple.generation_bound, a1);
  if (p.size() != m.rank() || lattice::is_zero(p)) {
    fail(a1, "apex must be a nonzero vector of rank " + std::to_string(m.rank()));
    report.axiom2.passed = report.axiom3.passed = false;
    return report;
  }
  if (!base.pointed()) {
    fail(a1, "base " + base.describe() + " is not a closed polytope (cone not pointed)");
  } else {
    for (const auto& face : base.proper_faces()) {
      if (lattice::in_span(face, p, m.rank())) {
        std::string f = "face{";
        for (std::size_t i = 0; i < face.size(); ++i) f += (i ? "," : "") + zvec_string(face[i]);
        fail(a1, "apex " + zvec_string(p) + " lies in the span of " + f + "}");
      }
    }
  }
  // t must generate M({P}): t = kP in M and no smaller multiple of P is in M.
  const ExponentVector& t = triple.t_exponent;
  {
    const ZVec tz = lattice::to_zvec(t.scaled());
    const ZVec pp = lattice::primitive(p);
    mpz_class k = 0;
    for (std::size_t i = 0; i < pp.size(); ++i) {
      if (pp[i] != 0) {
        k = tz[i] / pp[i];
        break;
      }
    }
    bool on_ray = k > 0;
    for (std::size_t i = 0; on_ray && i < pp.size(); ++i) on_ray = tz[i] == k * pp[i];
    if (!on_ray || !m.contains(t)) {
      fail(a1, "t = " + t.to_string() + " is not a member on the apex ray");
    } else {
      for (long j = 1; j < k.get_si(); ++j) {
        IntVector smaller;
        for (const auto& x : pp) smaller.push_back(x.get_si() * j);
        if (m.contains(ExponentVector(smaller, t.denominator()))) {
          fail(a1, "t does not generate M({P}): " + zvec_string(lattice::to_zvec(smaller)) +
                       " is a smaller member on the ray");
          break;
        }
      }
    }
  }

  // Axiom (ii)
  AxiomResult& a2 = report.axiom2;
  a2.detail = "dim(base) = dim(cone(M)) and cone(M) = cone(P, base)";
  if (base.dim() != cone.dim()) {
    fail(a2, "dim(base) = " + std::to_string(base.dim()) + " but dim(cone(M)) = " +
                 std::to_string(cone.dim()));
  }
  std::vector<IntVector> joined = to_int_rays(base.rays());
  joined.push_back(lattice::to_int64(p));
  const RationalCone hull(m.rank(), joined);
  if (!hull.same_as(cone)) {
    fail(a2, "cone(P, base) = " + hull.describe() + " differs from cone(M) = " + cone.describe());
  }

  // Axiom (iii)
  AxiomResult& a3 = report.axiom3;
  const std::size_t bound = triple.generation_bound;
  a3.detail = "verified to bound " + std::to_string(bound);
  if (!base.pointed()) {
    fail(a3, "base is not pointed");
    return report;
  }
  const auto members = enumerate_members(m, bound);
  for (std::size_t f = 0; f < base.facets().size(); ++f) {
    const auto gamma_rays = base.facet_rays(f);
    const RationalCone gamma(m.rank(), to_int_rays(gamma_rays));
    std::vector<IntVector> pyramid_rays = to_int_rays(gamma_rays);
    pyramid_rays.push_back(lattice::to_int64(p));
    const RationalCone pyramid(m.rank(), pyramid_rays);
    std::vector<IntVector> gens{t.scaled()};
    try {
      const auto face = submonoid_select(m, gamma, bound);
      for (const auto& g : face.monoid->integer_generators()) {
        if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
      }
    } catch (const Error& e) {
      fail(a3, "facet " + gamma.describe() + ": " + e.what());
      continue;
    }
    auto generated = MonoidSpec::affine_with_rank(m.rank(), gens, std::max<std::size_t>(64, 8 * bound));
    for (const auto& e : members) {
      if (!pyramid.contains(lattice::to_zvec(e.scaled()))) continue;
      bool ok = false;
      try {
        ok = generated->contains(ExponentVector(e.scaled()));
      } catch (const Error&) {
        ok = false;
      }
      if (!ok) {
        fail(a3, "facet " + gamma.describe() + ": " + e.to_string() +
                     " is not generated by M({P}) and M(facet)");
        break;
      }
    }
  }
  return report;
}

PolarizedTriple shipped_polarized_example() {
  PolarizedTriple t;
  t.monoid = MonoidSpec::affine({{1, 0}, {0, 1}});
  t.apex = ZVec{1, 0};
  t.base = RationalCone(2, {{0, 1}, {1, 1}});
  t.t_exponent = ExponentVector(IntVector{1, 0});
  t.generation_bound = 8;
  return t;
}

// ---------------------------------------------------------------------------
// Pyramid split

PyramidSplit pyramid_split(const RationalCone& gamma) {
  if (gamma.dim() < 2 || gamma.rays().size() < 3) {
    throw Error(ErrorCode::TooSmall, "pyramid split needs dim >= 2 and at least 3 rays, got " +
                                         gamma.describe());
  }
  if (!gamma.pointed()) throw Error(ErrorCode::Unsupported, "pyramid split of a non-pointed cone");
  const std::size_t r = gamma.rank();
  std::vector<ZVec> rays = gamma.rays();
  std::sort(rays.begin(), rays.end(), colex_less);
  ZVec v = rays.front();
  std::vector<ZVec> rest(rays.begin() + 1, rays.end());

  PyramidSplit out;
  out.apex = v;
  out.simplicial = gamma.rays().size() == gamma.dim();

  const RationalCone w_cone(r, to_int_rays(rest));
  if (w_cone.dim() == gamma.dim()) {
    std::vector<std::size_t> visible;
    for (std::size_t f = 0; f < w_cone.facets().size(); ++f) {
      if (lattice::dot(w_cone.facets()[f], v) < 0) visible.push_back(f);
    }
    if (visible.size() == 1) {
      out.shared = w_cone.facet_rays(visible[0]);
      auto d = to_int_rays(out.shared);
      d.push_back(lattice::to_int64(v));
      out.pyramid = RationalCone(r, d);
      out.rest = w_cone;
      return out;
    }
  }

  // Strict separator h: h(v) > 0 > h(w) for every other ray w. It exists
  // when v is extreme, so fall back to the least extreme ray.
  {
    auto extreme = gamma.extreme_rays();
    std::sort(extreme.begin(), extreme.end(), colex_less);
    if (extreme.front() != v) {
      v = extreme.front();
      rest.clear();
      for (const auto& w : rays) {
        if (w != v) rest.push_back(w);
      }
      out.apex = v;
    }
  }
  ZVec g(r), h0(r);
  for (const auto& h : gamma.facets()) {
    for (std::size_t k = 0; k < r; ++k) g[k] += h[k];
    if (lattice::dot(h, v) == 0) {
      for (std::size_t k = 0; k < r; ++k) h0[k] += h[k];
    }
  }
  std::optional<mpq_class> ratio;
  for (const auto& w : rest) {
    mpq_class q(lattice::dot(h0, w), lattice::dot(g, w));
    q.canonicalize();
    if (!ratio || q < *ratio) ratio = q;
  }
  const mpq_class alpha = *ratio / 2;
  ZVec h(r);
  for (std::size_t k = 0; k < r; ++k) h[k] = alpha.get_num() * g[k] - alpha.get_den() * h0[k];
  const mpz_class hv = lattice::dot(h, v);
  std::vector<IntVector> section;
  for (const auto& w : rest) {
    const mpz_class hw = lattice::dot(h, w);
    ZVec f(r);
    for (std::size_t k = 0; k < r; ++k) f[k] = hv * w[k] - hw * v[k];
    section.push_back(lattice::to_int64(lattice::primitive(std::move(f))));
  }
  out.shared = RationalCone(r, section).rays();
  auto d = section;
  d.push_back(lattice::to_int64(v));
  out.pyramid = RationalCone(r, d);
  auto c = section;
  for (const auto& w : rest) c.push_back(lattice::to_int64(w));
  out.rest = RationalCone(r, c);
  return out;
}

}  // namespace symplex
