#include "symplex/ring_element.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "symplex/error.hpp"

namespace symplex {

namespace {

using Term = RingElement::Term;

void require_same_ring(const RingElement& a, const RingElement& b) {
  if (!(a.ring() == b.ring())) {
    throw Error(ErrorCode::MixedRing, "operands live in different rings");
  }
}

/// Rewrites e with the monoid's denominator.
ExponentVector rescale(const ExponentVector& e, const MonoidSpec& m) {
  if (e.rank() != m.rank()) throw Error(ErrorCode::DimensionMismatch, "exponent of wrong rank");
  if (e.denominator() == m.denominator()) return e;
  std::vector<mpq_class> coords;
  for (std::size_t k = 0; k < e.rank(); ++k) coords.push_back(e.coord(k));
  return ExponentVector::from_rationals(coords, m.denominator());
}

/// Sorts, merges equal exponents and drops zero coefficients.
std::vector<Term> canonicalize(const BaseRing& base, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return x.exponent < y.exponent; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().exponent == t.exponent) {
      out.back().coeff = base.add(out.back().coeff, t.coeff);
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Ring

Ring::Ring(BaseRing base, MonoidPtr monoid) : base_(base), monoid_(std::move(monoid)) {
  if (!monoid_) throw Error(ErrorCode::NotMember, "ring needs a monoid");
}

RingElement Ring::zero() const { return RingElement(*this); }

RingElement Ring::one() const { return constant(1); }

RingElement Ring::constant(const mpq_class& c) const { return monomial(monoid_->zero(), c); }

RingElement Ring::constant(long c) const { return constant(mpq_class(c)); }

RingElement Ring::monomial(const ExponentVector& e, const mpq_class& coeff) const {
  return from_terms({{e, coeff}});
}

RingElement Ring::variable(std::size_t k) const {
  if (k >= monoid_->rank()) throw Error(ErrorCode::DimensionMismatch, "no such variable");
  return monomial(monoid_->unit_vector(k));
}

RingElement Ring::variable(std::string_view name) const {
  auto k = monoid_->variable_index(name);
  if (!k) throw Error(ErrorCode::ParseError, "unknown variable '" + std::string(name) + "'");
  return variable(*k);
}

RingElement Ring::from_terms(std::vector<std::pair<ExponentVector, mpq_class>> terms) const {
  std::vector<Term> ts;
  ts.reserve(terms.size());
  for (auto& [e, c] : terms) {
    mpq_class coeff = base_.canonical(c);
    if (coeff == 0) continue;
    ExponentVector ex = rescale(e, *monoid_);
    if (!monoid_->contains(ex)) {
      throw Error(ErrorCode::NotMember,
                  "exponent " + ex.to_string() + " not in " + monoid_->describe());
    }
    ts.push_back({std::move(ex), std::move(coeff)});
  }
  return RingElement::from_canonical(*this, canonicalize(base_, std::move(ts)));
}

// ---------------------------------------------------------------------------
// Parsing. Expressions are built in the ambient Laurent group with rational
// exponents; monoid membership is checked once at the end.

namespace {

using Exps = std::vector<mpq_class>;
using Poly = std::map<Exps, mpq_class>;

Poly padd(const Poly& a, const Poly& b, int sign = 1) {
  Poly r = a;
  for (const auto& [e, c] : b) {
    r[e] += sign * c;
    if (r[e] == 0) r.erase(e);
  }
  return r;
}

Poly pmul(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      Exps e(ea.size());
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      r[e] += ca * cb;
      if (r[e] == 0) r.erase(e);
    }
  }
  return r;
}

class Parser {
 public:
  Parser(std::string_view text, const MonoidSpec& m) : s_(text), m_(m) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError,
                what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Poly constant(const mpq_class& c) const {
    Poly p;
    if (c != 0) p[Exps(m_.rank())] = c;
    return p;
  }

  Poly expr() {
    Poly acc;
    bool first = true;
    while (true) {
      int sign = 1;
      if (accept('-')) {
        sign = -1;
      } else if (accept('+')) {
        sign = 1;
      } else if (!first) {
        return acc;
      }
      acc = padd(acc, product(), sign);
      first = false;
    }
  }

  Poly product() {
    Poly acc = power();
    while (true) {
      if (accept('*')) {
        acc = pmul(acc, power());
      } else if (accept('/')) {
        Poly d = power();
        if (d.size() != 1 || !std::all_of(d.begin()->first.begin(), d.begin()->first.end(),
                                          [](const mpq_class& x) { return x == 0; })) {
          fail("division only by nonzero constants");
        }
        const mpq_class inv = 1 / d.begin()->second;
        for (auto& [e, c] : acc) c *= inv;
      } else {
        return acc;
      }
    }
  }

  Poly power() {
    Poly b = atom();
    if (!accept('^')) return b;
    mpq_class k;
    if (accept('(')) {
      k = signed_rational();
      expect(')');
    } else {
      const bool neg = accept('-');
      k = number();
      if (neg) k = -k;
    }
    if (k.get_den() == 1 && k >= 0) {
      Poly r = constant(1);
      for (long i = 0; i < k.get_num().get_si(); ++i) r = pmul(r, b);
      return r;
    }
    if (b.size() != 1) fail("negative or fractional powers need a monomial");
    Poly r;
    Exps e = b.begin()->first;
    for (auto& x : e) x *= k;
    const mpq_class& c = b.begin()->second;
    if (c != 1) fail("negative or fractional powers need coefficient 1");
    r[e] = 1;
    return r;
  }

  mpq_class signed_rational() {
    bool neg = accept('-');
    mpq_class q = number();
    skip();
    if (pos_ < s_.size() && s_[pos_] == '/' && pos_ + 1 < s_.size() &&
        std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
      ++pos_;
      q /= number();
    }
    return neg ? mpq_class(-q) : q;
  }

  mpq_class number() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return mpq_class(mpz_class(std::string(s_.substr(start, pos_ - start))));
  }

  Poly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      expect(')');
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return constant(number());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name(s_.substr(start, pos_ - start));
      skip();
      if (name == "m" && pos_ < s_.size() && s_[pos_] == '[') return explicit_monomial();
      auto k = m_.variable_index(name);
      if (!k) fail("unknown variable '" + name + "'");
      Exps e(m_.rank());
      e[*k] = 1;
      Poly p;
      p[e] = 1;
      return p;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Poly explicit_monomial() {
    expect('[');
    Exps e;
    if (!accept(']')) {
      do {
        e.push_back(signed_rational());
      } while (accept(','));
      expect(']');
    }
    if (e.size() != m_.rank()) fail("explicit monomial of wrong rank");
    Poly p;
    p[e] = 1;
    return p;
  }

  std::string_view s_;
  const MonoidSpec& m_;
  std::size_t pos_ = 0;
};

}  // namespace

RingElement Ring::parse(std::string_view text) const {
  Poly p = Parser(text, *monoid_).parse();
  std::vector<std::pair<ExponentVector, mpq_class>> terms;
  for (const auto& [e, c] : p) {
    terms.emplace_back(ExponentVector::from_rationals(e, monoid_->denominator()), c);
  }
  return from_terms(std::move(terms));
}

// ---------------------------------------------------------------------------
// RingElement

RingElement RingElement::from_canonical(Ring ring, std::vector<Term> terms) {
  RingElement r(std::move(ring));
  r.terms_ = std::move(terms);
  return r;
}

bool RingElement::is_one() const {
  return terms_.size() == 1 && terms_[0].exponent.is_zero() && terms_[0].coeff == 1;
}

bool RingElement::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

std::optional<mpq_class> RingElement::constant_value() const {
  if (terms_.empty()) return mpq_class(0);
  if (is_constant()) return terms_[0].coeff;
  return std::nullopt;
}

mpq_class RingElement::coefficient(const ExponentVector& e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, const ExponentVector& x) { return t.exponent < x; });
  if (it != terms_.end() && it->exponent == e) return it->coeff;
  return 0;
}

RingElement RingElement::operator-() const {
  RingElement r(ring_);
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.coeff = ring_.base().neg(t.coeff);
  return r;
}

RingElement RingElement::scaled(const mpq_class& c) const {
  const mpq_class k = ring_.base().canonical(c);
  if (k == 0) return ring_.zero();
  RingElement r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    mpq_class x = ring_.base().mul(t.coeff, k);
    if (x != 0) r.terms_.push_back({t.exponent, std::move(x)});
  }
  return r;
}

RingElement RingElement::pow(unsigned k) const {
  RingElement result = ring_.one();
  RingElement base = *this;
  while (k) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k) base = base * base;
  }
  return result;
}

RingElement RingElement::rehome(const Ring& super) const {
  if (ring_ == super) return *this;
  std::vector<std::pair<ExponentVector, mpq_class>> ts;
  ts.reserve(terms_.size());
  for (const auto& t : terms_) ts.emplace_back(t.exponent, t.coeff);
  return super.from_terms(std::move(ts));
}

RingElement operator+(const RingElement& a, const RingElement& b) {
  require_same_ring(a, b);
  const BaseRing& base = a.ring_.base();
  RingElement r(a.ring_);
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  auto i = a.terms_.begin();
  auto j = b.terms_.begin();
  while (i != a.terms_.end() || j != b.terms_.end()) {
    if (j == b.terms_.end() || (i != a.terms_.end() && i->exponent < j->exponent)) {
      r.terms_.push_back(*i++);
    } else if (i == a.terms_.end() || j->exponent < i->exponent) {
      r.terms_.push_back(*j++);
    } else {
      mpq_class c = base.add(i->coeff, j->coeff);
      if (c != 0) r.terms_.push_back({i->exponent, std::move(c)});
      ++i;
      ++j;
    }
  }
  return r;
}

RingElement operator-(const RingElement& a, const RingElement& b) { return a + (-b); }

RingElement operator*(const RingElement& a, const RingElement& b) {
  require_same_ring(a, b);
  if (a.is_zero() || b.is_zero()) return a.ring_.zero();
  const BaseRing& base = a.ring_.base();
  if (a.terms_.size() == 1 && a.terms_[0].exponent.is_zero()) return b.scaled(a.terms_[0].coeff);
  if (b.terms_.size() == 1 && b.terms_[0].exponent.is_zero()) return a.scaled(b.terms_[0].coeff);
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      prod.push_back({x.exponent + y.exponent, base.mul(x.coeff, y.coeff)});
    }
  }
  return RingElement::from_canonical(a.ring_, canonicalize(base, std::move(prod)));
}

bool operator==(const RingElement& a, const RingElement& b) {
  if (!(a.ring_ == b.ring_) || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k) {
    if (a.terms_[k].exponent != b.terms_[k].exponent || a.terms_[k].coeff != b.terms_[k].coeff) {
      return false;
    }
  }
  return true;
}

std::string RingElement::to_string() const {
  if (terms_.empty()) return "0";
  const MonoidSpec& m = ring_.monoid();
  std::ostringstream os;
  for (std::size_t idx = 0; idx < terms_.size(); ++idx) {
    const auto& t = terms_[idx];
    mpq_class c = t.coeff;
    if (idx == 0) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (c < 0) c = -c;
    std::string mono;
    for (std::size_t k = 0; k < t.exponent.rank(); ++k) {
      const mpq_class e = t.exponent.coord(k);
      if (e == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += m.variable_name(k);
      if (e == 1) continue;
      if (e.get_den() == 1) {
        mono += '^' + e.get_str();
      } else {
        mono += "^(" + e.get_str() + ')';
      }
    }
    if (mono.empty()) {
      os << c.get_str();
    } else if (c == 1) {
      os << mono;
    } else {
      os << c.get_str() << '*' << mono;
    }
  }
  return os.str();
}

RingElement poly_add(const RingElement& a, const RingElement& b) { return a + b; }

RingElement poly_mul(const RingElement& a, const RingElement& b) { return a * b; }

// ---------------------------------------------------------------------------
// Units and division

UnitResult is_unit(const RingElement& a) {
  if (!a.is_monomial()) return {UnitStatus::No, std::nullopt};
  const auto& t = a.terms()[0];
  const Ring& ring = a.ring();
  auto inv = ring.base().inverse(t.coeff);
  if (!inv) return {UnitStatus::No, std::nullopt};
  try {
    if (!ring.monoid().contains(-t.exponent)) return {UnitStatus::No, std::nullopt};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MembershipBoundExceeded) return {UnitStatus::Unknown, std::nullopt};
    throw;
  }
  return {UnitStatus::Yes, ring.monomial(-t.exponent, *inv)};
}

bool is_euclidean(const Ring& ring) {
  const MonoidSpec& m = ring.monoid();
  if (m.rank() == 0) return true;
  return ring.base().is_field() && m.kind() == MonoidSpec::Kind::FreeMixed &&
         m.polynomial_vars() == 1 && m.laurent_vars() == 0;
}

namespace {

std::int64_t degree(const RingElement& a) { return a.terms().back().exponent.scaled()[0]; }

}  // namespace

mpz_class euclidean_norm(const RingElement& a) {
  if (!is_euclidean(a.ring())) throw Error(ErrorCode::NotEuclidean, a.ring().monoid().describe());
  if (a.is_zero()) throw Error(ErrorCode::DivisionByZero, "zero has no Euclidean norm");
  if (a.ring().monoid().rank() == 0) {
    if (a.ring().base().is_field()) return 0;
    return abs(a.terms()[0].coeff.get_num());
  }
  return degree(a);
}

std::pair<RingElement, RingElement> euclidean_divmod(const RingElement& a, const RingElement& b) {
  require_same_ring(a, b);
  const Ring& ring = a.ring();
  if (!is_euclidean(ring)) throw Error(ErrorCode::NotEuclidean, ring.monoid().describe());
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
  const BaseRing& base = ring.base();
  if (ring.monoid().rank() == 0) {
    const mpq_class x = *a.constant_value();
    const mpq_class y = *b.constant_value();
    if (base.is_field()) return {ring.constant(base.mul(x, *base.inverse(y))), ring.zero()};
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.get_num_mpz_t(), y.get_num_mpz_t());
    return {ring.constant(mpq_class(q)), ring.constant(mpq_class(r))};
  }
  RingElement q = ring.zero();
  RingElement r = a;
  const auto& lead_b = b.terms().back();
  const mpq_class inv_lead = *base.inverse(lead_b.coeff);
  const std::int64_t db = degree(b);
  while (!r.is_zero() && degree(r) >= db) {
    const auto& lead_r = r.terms().back();
    IntVector e{degree(r) - db};
    RingElement step = ring.monomial(ExponentVector(e), base.mul(lead_r.coeff, inv_lead));
    q += step;
    r -= step * b;
  }
  return {q, r};
}

// ---------------------------------------------------------------------------
// Ring maps

RingElement substitute(const RingElement& a, const std::map<std::size_t, RingElement>& assignment,
                       const Ring& target) {
  RingElement result = target.zero();
  std::map<std::size_t, RingElement> inverses;
  for (const auto& t : a.terms()) {
    RingElement term = target.constant(t.coeff);
    for (std::size_t k = 0; k < t.exponent.rank(); ++k) {
      const mpq_class e = t.exponent.coord(k);
      if (e == 0) continue;
      auto it = assignment.find(k);
      if (it == assignment.end()) {
        throw Error(ErrorCode::IncompleteAssignment,
                    "no image for variable " + a.ring().monoid().variable_name(k));
      }
      if (!(it->second.ring() == target)) {
        throw Error(ErrorCode::MixedRing, "assignment images must live in the target ring");
      }
      if (e.get_den() != 1) {
        throw Error(ErrorCode::Unsupported, "substitution into fractional exponents");
      }
      const long n = e.get_num().get_si();
      if (n > 0) {
        term *= it->second.pow(static_cast<unsigned>(n));
        continue;
      }
      auto inv = inverses.find(k);
      if (inv == inverses.end()) {
        UnitResult u = is_unit(it->second);
        if (u.status != UnitStatus::Yes) {
          throw Error(ErrorCode::NotUnit, "negative exponent needs a unit image for " +
                                              a.ring().monoid().variable_name(k));
        }
        inv = inverses.emplace(k, *u.inverse).first;
      }
      term *= inv->second.pow(static_cast<unsigned>(-n));
    }
    result += term;
  }
  return result;
}

RingElement retract(const RingElement& a, const MonoidSpec& face) {
  std::vector<Term> kept;
  for (const auto& t : a.terms()) {
    if (face.contains(t.exponent)) kept.push_back(t);
  }
  return RingElement::from_canonical(a.ring(), std::move(kept));
}

}  // namespace symplex
