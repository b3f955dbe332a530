#include "symplex/monoid.hpp"

#include <algorithm>
#include <functional>
#include <tuple>
#include <map>
#include <set>
#include <sstream>

#include "symplex/error.hpp"

namespace symplex {

namespace {

constexpr std::size_t kMaxAffineRank = 6;

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Unsupported, "exponent overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Unsupported, "exponent overflow");
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// ExponentVector

ExponentVector::ExponentVector(IntVector scaled, std::int64_t denominator)
    : scaled_(std::move(scaled)), denominator_(denominator) {
  if (denominator_ <= 0) throw Error(ErrorCode::NotMember, "exponent denominator must be positive");
}

ExponentVector ExponentVector::from_rationals(std::span<const mpq_class> coords,
                                              std::int64_t denominator) {
  IntVector scaled;
  scaled.reserve(coords.size());
  for (const auto& q : coords) {
    mpq_class s = q * denominator;
    if (s.get_den() != 1) {
      throw Error(ErrorCode::NotMember,
                  "coordinate " + q.get_str() + " not representable with denominator " +
                      std::to_string(denominator));
    }
    if (!s.get_num().fits_slong_p()) throw Error(ErrorCode::Unsupported, "exponent too large");
    scaled.push_back(s.get_num().get_si());
  }
  return ExponentVector(std::move(scaled), denominator);
}

mpq_class ExponentVector::coord(std::size_t k) const {
  mpq_class q(static_cast<long>(scaled_[k]), static_cast<unsigned long>(denominator_));
  q.canonicalize();
  return q;
}

bool ExponentVector::is_zero() const {
  return std::all_of(scaled_.begin(), scaled_.end(), [](std::int64_t x) { return x == 0; });
}

ExponentVector ExponentVector::operator+(const ExponentVector& other) const {
  if (other.rank() != rank() || other.denominator_ != denominator_) {
    throw Error(ErrorCode::MixedRing, "exponent vectors of different shape");
  }
  IntVector s(rank());
  for (std::size_t k = 0; k < rank(); ++k) s[k] = checked_add(scaled_[k], other.scaled_[k]);
  return ExponentVector(std::move(s), denominator_);
}

ExponentVector ExponentVector::operator-() const {
  IntVector s(rank());
  for (std::size_t k = 0; k < rank(); ++k) s[k] = -scaled_[k];
  return ExponentVector(std::move(s), denominator_);
}

ExponentVector ExponentVector::operator-(const ExponentVector& other) const { return *this + (-other); }

ExponentVector ExponentVector::times(std::int64_t k) const {
  IntVector s(rank());
  for (std::size_t i = 0; i < rank(); ++i) s[i] = checked_mul(scaled_[i], k);
  return ExponentVector(std::move(s), denominator_);
}

std::string ExponentVector::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < rank(); ++k) {
    if (k) os << ',';
    os << coord(k).get_str();
  }
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// MonoidSpec factories

MonoidPtr MonoidSpec::free_mixed(std::size_t polynomial_vars, std::size_t laurent_vars,
                                 std::vector<std::string> names) {
  auto m = std::make_shared<MonoidSpec>(Private{}, Kind::FreeMixed);
  m->poly_vars_ = polynomial_vars;
  m->laurent_vars_ = laurent_vars;
  m->rank_ = polynomial_vars + laurent_vars;
  if (!names.empty() && names.size() != m->rank_) {
    throw Error(ErrorCode::DimensionMismatch, "variable name count differs from rank");
  }
  m->names_ = std::move(names);
  m->positive_ = laurent_vars == 0;
  return m;
}

MonoidPtr MonoidSpec::affine(std::vector<IntVector> generators, std::size_t search_bound,
                             std::vector<std::string> names) {
  if (generators.empty()) {
    throw Error(ErrorCode::NotMember, "affine monoid needs a generator (use affine_with_rank)");
  }
  const std::size_t r = generators.front().size();
  return affine_with_rank(r, std::move(generators), search_bound, std::move(names));
}

MonoidPtr MonoidSpec::affine_with_rank(std::size_t rank, std::vector<IntVector> generators,
                                       std::size_t search_bound, std::vector<std::string> names) {
  if (rank > kMaxAffineRank) {
    throw Error(ErrorCode::RankTooLarge, "affine monoids are limited to rank 6");
  }
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const auto& g = generators[i];
    if (g.size() != rank) throw Error(ErrorCode::DimensionMismatch, "generator of wrong length");
    if (std::all_of(g.begin(), g.end(), [](std::int64_t x) { return x == 0; })) {
      throw Error(ErrorCode::NotMember, "affine generators must be nonzero");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (generators[j] == g) throw Error(ErrorCode::NotMember, "affine generators must be distinct");
    }
  }
  auto m = std::make_shared<MonoidSpec>(Private{}, Kind::Affine);
  m->rank_ = rank;
  m->int_gens_ = std::move(generators);
  m->search_bound_ = search_bound;
  if (!names.empty() && names.size() != rank) {
    throw Error(ErrorCode::DimensionMismatch, "variable name count differs from rank");
  }
  m->names_ = std::move(names);
  m->finish_affine();
  return m;
}

MonoidPtr MonoidSpec::c_divisible(MonoidPtr base, std::int64_t c, unsigned level) {
  if (c <= 1) throw Error(ErrorCode::NotMember, "c-divisible truncation needs c > 1");
  if (base->kind() == Kind::FreeMixed) {
    std::vector<IntVector> gens;
    for (const auto& g : base->generators()) gens.push_back(g.scaled());
    base = affine_with_rank(base->rank(), std::move(gens), base->search_bound(), base->names());
  }
  if (base->kind() != Kind::Affine) {
    throw Error(ErrorCode::Unsupported, "c-divisible truncation needs an affine base");
  }
  auto m = std::make_shared<MonoidSpec>(Private{}, Kind::CDivisibleTruncation);
  m->rank_ = base->rank();
  m->c_ = c;
  m->level_ = level;
  std::int64_t d = 1;
  for (unsigned i = 0; i < level; ++i) d = checked_mul(d, c);
  m->denominator_ = d;
  m->int_gens_ = base->integer_generators();
  m->names_ = base->names();
  m->positive_ = base->is_positive();
  m->search_bound_ = base->search_bound();
  m->base_ = std::move(base);
  return m;
}

MonoidPtr MonoidSpec::adjoin_inverse(const MonoidPtr& m, const ExponentVector& v) {
  if (m->contains(-v)) return m;
  switch (m->kind()) {
    case Kind::FreeMixed: {
      // Last polynomial variable turning Laurent keeps the FreeMixed layout.
      if (m->poly_vars_ > 0 && v == m->unit_vector(m->poly_vars_ - 1)) {
        return free_mixed(m->poly_vars_ - 1, m->laurent_vars_ + 1, m->names_);
      }
      std::vector<IntVector> gens;
      for (const auto& g : m->generators()) gens.push_back(g.scaled());
      gens.push_back((-v).scaled());
      return affine_with_rank(m->rank(), std::move(gens), m->search_bound(), m->names_);
    }
    case Kind::Affine: {
      auto gens = m->int_gens_;
      auto neg = (-v).scaled();
      if (std::find(gens.begin(), gens.end(), neg) == gens.end()) gens.push_back(neg);
      return affine_with_rank(m->rank(), std::move(gens), m->search_bound(), m->names_);
    }
    case Kind::CDivisibleTruncation: {
      auto base = adjoin_inverse(m->base_, ExponentVector(v.scaled(), 1));
      return c_divisible(base, m->c_, m->level_);
    }
  }
  return m;
}

void MonoidSpec::finish_affine() {
  std::vector<lattice::ZVec> gens;
  for (const auto& g : int_gens_) gens.push_back(lattice::to_zvec(g));
  cone_ = lattice::analyze_cone(gens, rank_);
  lattice_ = lattice::LatticeBasis(gens, rank_);
  std::vector<lattice::ZVec> units;
  graded_gens_.clear();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (lattice::dot(cone_.grading, gens[i]) == 0) {
      units.push_back(gens[i]);
    } else {
      graded_gens_.push_back(i);
    }
  }
  unit_lattice_ = lattice::LatticeBasis(units, rank_);
  positive_ = cone_.pointed;
}

// ---------------------------------------------------------------------------
// Queries

std::vector<ExponentVector> MonoidSpec::generators() const {
  std::vector<ExponentVector> out;
  switch (kind_) {
    case Kind::FreeMixed:
      for (std::size_t k = 0; k < rank_; ++k) {
        out.push_back(unit_vector(k));
        if (k >= poly_vars_) out.push_back(-unit_vector(k));
      }
      break;
    case Kind::Affine:
    case Kind::CDivisibleTruncation:
      for (const auto& g : int_gens_) out.emplace_back(g, denominator_);
      break;
  }
  return out;
}

std::string MonoidSpec::variable_name(std::size_t k) const {
  if (k < names_.size()) return names_[k];
  return "x" + std::to_string(k + 1);
}

std::optional<std::size_t> MonoidSpec::variable_index(std::string_view name) const {
  for (std::size_t k = 0; k < rank_; ++k) {
    if (variable_name(k) == name) return k;
  }
  return std::nullopt;
}

ExponentVector MonoidSpec::unit_vector(std::size_t k) const {
  IntVector s(rank_, 0);
  s[k] = denominator_;
  return ExponentVector(std::move(s), denominator_);
}

bool MonoidSpec::contains(const ExponentVector& v) const {
  if (v.rank() != rank_) return false;
  switch (kind_) {
    case Kind::FreeMixed: {
      if (v.denominator() != 1) {
        for (auto x : v.scaled()) {
          if (x % v.denominator() != 0) return false;
        }
      }
      for (std::size_t k = 0; k < poly_vars_; ++k) {
        if (v.scaled()[k] < 0) return false;
      }
      return true;
    }
    case Kind::Affine: {
      if (v.denominator() != 1) {
        for (auto x : v.scaled()) {
          if (x % v.denominator() != 0) return false;
        }
        IntVector s;
        for (auto x : v.scaled()) s.push_back(x / v.denominator());
        return affine_contains(lattice::to_zvec(s), nullptr);
      }
      return affine_contains(lattice::to_zvec(v.scaled()), nullptr);
    }
    case Kind::CDivisibleTruncation: {
      // Bring v to this monoid's scale, then test D*v in the base.
      mpz_class scale = denominator_;
      IntVector s;
      for (std::size_t k = 0; k < rank_; ++k) {
        mpq_class x = v.coord(k) * scale;
        if (x.get_den() != 1) return false;
        s.push_back(x.get_num().get_si());
      }
      return base_->contains(ExponentVector(std::move(s), 1));
    }
  }
  return false;
}

std::optional<IntVector> MonoidSpec::certificate(const ExponentVector& v) const {
  if (kind_ != Kind::Affine || !positive_) {
    throw Error(ErrorCode::Unsupported, "certificates exist for pointed affine monoids only");
  }
  IntVector cert(int_gens_.size(), 0);
  if (v.denominator() != 1) return std::nullopt;
  if (!affine_contains(lattice::to_zvec(v.scaled()), &cert)) return std::nullopt;
  return cert;
}

bool MonoidSpec::affine_contains(const lattice::ZVec& target, IntVector* cert) const {
  if (!cone_.contains(target)) return false;
  if (!lattice_.contains(target)) return false;

  std::vector<lattice::ZVec> gens;
  for (auto i : graded_gens_) gens.push_back(lattice::to_zvec(int_gens_[i]));
  IntVector coeffs(graded_gens_.size(), 0);
  bool bound_hit = false;
  std::set<std::tuple<std::size_t, std::size_t, lattice::ZVec>> failed;

  std::function<bool(const lattice::ZVec&, std::size_t, std::size_t)> search =
      [&](const lattice::ZVec& rem, std::size_t k, std::size_t used) -> bool {
    if (k == gens.size()) return unit_lattice_.contains(rem);
    auto key = std::make_tuple(k, used, rem);
    if (failed.count(key)) return false;
    lattice::ZVec cur = rem;
    std::size_t c = 0;
    while (true) {
      if (search(cur, k + 1, used + c)) {
        coeffs[k] = static_cast<std::int64_t>(c);
        return true;
      }
      if (used + c + 1 > search_bound_) {
        bound_hit = true;
        break;
      }
      for (std::size_t i = 0; i < cur.size(); ++i) cur[i] -= gens[k][i];
      ++c;
      if (!cone_.contains(cur)) break;
    }
    failed.insert(std::move(key));
    return false;
  };

  if (search(target, 0, 0)) {
    if (cert) {
      for (std::size_t k = 0; k < graded_gens_.size(); ++k) (*cert)[graded_gens_[k]] = coeffs[k];
    }
    return true;
  }
  if (bound_hit) {
    throw Error(ErrorCode::MembershipBoundExceeded,
                "no certificate with coefficient sum <= " + std::to_string(search_bound_));
  }
  return false;
}

bool MonoidSpec::same_as(const MonoidSpec& o) const {
  if (this == &o) return true;
  if (kind_ != o.kind_ || rank_ != o.rank_ || denominator_ != o.denominator_ ||
      poly_vars_ != o.poly_vars_ || laurent_vars_ != o.laurent_vars_ || int_gens_ != o.int_gens_ ||
      c_ != o.c_ || level_ != o.level_ || names_ != o.names_ || search_bound_ != o.search_bound_) {
    return false;
  }
  if (base_ && o.base_) return base_->same_as(*o.base_);
  return !base_ && !o.base_;
}

bool same_monoid(const MonoidPtr& a, const MonoidPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

std::string MonoidSpec::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::FreeMixed:
      os << "FreeMixed(" << poly_vars_ << "," << laurent_vars_ << ")";
      break;
    case Kind::Affine:
      os << "Affine{";
      for (std::size_t i = 0; i < int_gens_.size(); ++i) {
        if (i) os << ",";
        os << ExponentVector(int_gens_[i]).to_string();
      }
      os << "}";
      break;
    case Kind::CDivisibleTruncation:
      os << "CDivisible(" << base_->describe() << ", c=" << c_ << ", level=" << level_ << ")";
      break;
  }
  return os.str();
}

}  // namespace symplex
