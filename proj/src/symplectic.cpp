#include "symplex/symplectic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "symplex/error.hpp"

namespace symplex {

namespace {

std::atomic<std::size_t> g_sign_faults{0};

int parity_sign(std::size_t k) { return k % 2 == 0 ? 1 : -1; }

void check_index(std::size_t n, std::size_t i) {
  if (i < 1 || i > 2 * n) {
    throw Error(ErrorCode::BadIndices, "index " + std::to_string(i) + " outside 1.." + std::to_string(2 * n));
  }
}

void check_se_indices(std::size_t n, std::size_t i, std::size_t j) {
  check_index(n, i);
  check_index(n, j);
  if (i == j || sigma(i) == j) {
    throw Error(ErrorCode::BadIndices,
                "se needs i != j and sigma(i) != j, got (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
}

RingElement unit_inverse(const RingElement& u) {
  auto r = is_unit(u);
  if (r.status != UnitStatus::Yes) throw Error(ErrorCode::NotUnit, u.to_string() + " is not a unit");
  return *r.inverse;
}

Matrix se_matrix(std::size_t n, std::size_t i, std::size_t j, const RingElement& lambda) {
  Matrix m = Matrix::identity(lambda.ring(), 2 * n);
  if (lambda.is_zero()) return m;
  m.set(i - 1, j - 1, lambda);
  const RingElement other = parity_sign(i + j) > 0 ? -lambda : lambda;
  m.set(sigma(j) - 1, sigma(i) - 1, other);
  return m;
}

Matrix se_diag_matrix(std::size_t n, std::size_t i, const RingElement& lambda) {
  Matrix m = Matrix::identity(lambda.ring(), 2 * n);
  if (!lambda.is_zero()) m.set(i - 1, sigma(i) - 1, lambda);
  return m;
}

}  // namespace

Matrix psi(const Ring& ring, std::size_t n) {
  Matrix m(ring, 2 * n, 2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    m.set(2 * k, 2 * k + 1, ring.one());
    m.set(2 * k + 1, 2 * k, -ring.one());
  }
  return m;
}

SympMatrix::SympMatrix(Matrix m) : SympMatrix(std::move(m), -1) {}

SympMatrix::SympMatrix(Matrix m, std::int8_t certificate) : m_(std::move(m)), certificate_(certificate) {
  if (m_.rows() != m_.cols() || m_.rows() % 2 != 0 || m_.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "symplectic matrices are square of even size");
  }
}

SympMatrix::SympMatrix(const SympMatrix& other)
    : m_(other.m_), certificate_(other.certificate_.load(std::memory_order_relaxed)) {}

SympMatrix& SympMatrix::operator=(const SympMatrix& other) {
  if (this != &other) {
    m_ = other.m_;
    certificate_.store(other.certificate_.load(std::memory_order_relaxed), std::memory_order_relaxed);
  }
  return *this;
}

bool SympMatrix::is_symplectic() const {
  const std::int8_t c = certificate_.load(std::memory_order_acquire);
  if (c >= 0) return c == 1;
  const Matrix p = psi(m_.ring(), n());
  const bool ok = m_.transpose() * p * m_ == p;
  certificate_.store(ok ? 1 : 0, std::memory_order_release);
  return ok;
}

std::optional<bool> SympMatrix::cached_certificate() const {
  const std::int8_t c = certificate_.load(std::memory_order_acquire);
  if (c < 0) return std::nullopt;
  return c == 1;
}

SympMatrix SympMatrix::operator*(const SympMatrix& other) const {
  const bool both = cached_certificate().value_or(false) && other.cached_certificate().value_or(false);
  return SympMatrix(m_ * other.m_, both ? 1 : -1);
}

SympMatrix SympMatrix::symplectic_inverse() const {
  const Matrix p = psi(m_.ring(), n());
  return SympMatrix((p * m_.transpose() * p).scaled(-m_.ring().one()), certificate_.load());
}

bool sp_check(const SympMatrix& alpha) { return alpha.is_symplectic(); }

IndexSet::IndexSet(std::size_t n, std::vector<std::size_t> members) : n_(n), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (members_.size() != n_) throw Error(ErrorCode::BadIndices, "an index set holds one index of each pair");
  std::vector<int> seen(n_, 0);
  for (std::size_t i : members_) {
    check_index(n_, i);
    if (++seen[(i - 1) / 2] > 1) {
      throw Error(ErrorCode::BadIndices, "both " + std::to_string(i) + " and " + std::to_string(sigma(i)) +
                                             " in index set");
    }
  }
}

IndexSet IndexSet::odd(std::size_t n) {
  std::vector<std::size_t> m;
  for (std::size_t k = 0; k < n; ++k) m.push_back(2 * k + 1);
  return IndexSet(n, m);
}

std::vector<IndexSet> IndexSet::all(std::size_t n) {
  std::vector<IndexSet> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> m;
    for (std::size_t k = 0; k < n; ++k) m.push_back(2 * k + 1 + ((mask >> k) & 1));
    out.emplace_back(n, m);
  }
  return out;
}

bool IndexSet::contains(std::size_t i) const { return std::binary_search(members_.begin(), members_.end(), i); }

IndexSet IndexSet::complement() const {
  std::vector<std::size_t> m;
  for (std::size_t i : members_) m.push_back(sigma(i));
  return IndexSet(n_, m);
}

std::string IndexSet::to_string() const {
  std::string s = "{";
  for (std::size_t k = 0; k < members_.size(); ++k) s += (k ? "," : "") + std::to_string(members_[k]);
  return s + "}";
}

SympMatrix se(std::size_t n, std::size_t i, std::size_t j, const RingElement& lambda) {
  check_se_indices(n, i, j);
  return SympMatrix(se_matrix(n, i, j, lambda));
}

SympMatrix se_diag(std::size_t n, std::size_t i, const RingElement& lambda) {
  check_index(n, i);
  return SympMatrix(se_diag_matrix(n, i, lambda));
}

SeIndices normalize_se(std::size_t i, std::size_t j, const RingElement& lambda) {
  if (i < j) return {i, j, lambda};
  return {sigma(j), sigma(i), parity_sign(i + j) > 0 ? -lambda : lambda};
}

Matrix sw_product(std::size_t n, std::size_t i, std::size_t j, const RingElement& u, int middle_sign) {
  check_se_indices(n, i, j);
  RingElement mid = unit_inverse(u);
  if (middle_sign < 0) mid = -mid;
  const Matrix outer = se_matrix(n, i, j, u);
  return outer * se_matrix(n, sigma(i), sigma(j), mid) * outer;
}

SympMatrix sw(std::size_t n, std::size_t i, std::size_t j, const RingElement& u) {
  Matrix m = sw_product(n, i, j, u, parity_sign(i + j));
  if (m.is_monomial()) return SympMatrix(std::move(m));
  g_sign_faults.fetch_add(1, std::memory_order_relaxed);
  m = sw_product(n, i, j, u, 1);
  if (m.is_monomial()) return SympMatrix(std::move(m));
  throw Error(ErrorCode::SignConventionFault,
              "sw_" + std::to_string(i) + std::to_string(j) + " is not monomial for either sign");
}

std::size_t sign_convention_faults() noexcept { return g_sign_faults.load(std::memory_order_relaxed); }

SympMatrix sw_long(std::size_t n, std::size_t i, const RingElement& u) {
  check_index(n, i);
  const RingElement inv = unit_inverse(u);
  const Matrix outer = se_diag_matrix(n, i, u);
  return SympMatrix(outer * se_diag_matrix(n, sigma(i), -inv) * outer);
}

DeltaPair delta(const IndexSet& index_set, const RingElement& t) {
  if (!t.is_monomial()) throw Error(ErrorCode::NotMonomial, t.to_string() + " is not a monomial");
  const auto& term = t.terms()[0];
  const Ring& ring = t.ring();
  auto coeff_inv = ring.base().inverse(term.coeff);
  if (!coeff_inv) throw Error(ErrorCode::NotUnit, "coefficient of " + t.to_string() + " is not a unit");

  Ring ext = ring;
  if (!ring.monoid().contains(-term.exponent)) {
    ext = Ring(ring.base(), MonoidSpec::adjoin_inverse(ring.monoid_ptr(), term.exponent));
  }
  RingElement te = t.rehome(ext);
  RingElement ti = ext.monomial(-term.exponent, *coeff_inv);

  const std::size_t size = 2 * index_set.n();
  Matrix d = Matrix::identity(ext, size);
  Matrix di = Matrix::identity(ext, size);
  for (std::size_t i : index_set.members()) {
    d.set(i - 1, i - 1, te);
    di.set(i - 1, i - 1, ti);
  }
  return DeltaPair{ext, te, ti, std::move(d), std::move(di)};
}

SympMatrix delta_conjugate(const IndexSet& index_set, const SympMatrix& alpha, const RingElement& t,
                           int direction, bool verify_literal) {
  if (alpha.n() != index_set.n()) throw Error(ErrorCode::DimensionMismatch, "index set size");
  if (!(alpha.ring() == t.ring())) throw Error(ErrorCode::MixedRing, "t and alpha over different rings");
  const DeltaPair dp = delta(index_set, t);
  const Matrix a = alpha.matrix().rehome(dp.ring);
  const RingElement& up = direction > 0 ? dp.t : dp.t_inverse;
  const RingElement& down = direction > 0 ? dp.t_inverse : dp.t;

  Matrix out = a;
  const std::size_t size = a.rows();
  for (std::size_t r = 0; r < size; ++r) {
    const bool in_r = index_set.contains(r + 1);
    for (std::size_t c = 0; c < size; ++c) {
      if (a(r, c).is_zero()) continue;
      const bool in_c = index_set.contains(c + 1);
      if (in_r && !in_c) out.set(r, c, up * a(r, c));
      if (!in_r && in_c) out.set(r, c, down * a(r, c));
    }
  }
  if (verify_literal) {
    const Matrix literal = direction > 0 ? dp.delta * a * dp.inverse : dp.inverse * a * dp.delta;
    if (!(literal == out)) throw std::logic_error("delta conjugation pattern differs from the product");
  }
  return SympMatrix(std::move(out));
}

Vector tilde(const Vector& u) {
  if (u.empty() || u.size() % 2 != 0) throw Error(ErrorCode::DimensionMismatch, "tilde needs length 2n");
  Vector out;
  out.reserve(u.size());
  // (u^T psi)_b = u_{b-1} for even b, -u_{b+1} for odd b (1-based).
  for (std::size_t b = 0; b < u.size(); ++b) out.push_back(b % 2 == 1 ? u[b - 1] : -u[b + 1]);
  return out;
}

Token Token::se(std::size_t i, std::size_t j, RingElement lambda) {
  Token t;
  t.op = Op::SE;
  t.i = i;
  t.j = j;
  t.value = std::move(lambda);
  return t;
}

Token Token::se_diag(std::size_t i, RingElement lambda) {
  Token t;
  t.op = Op::SEDiag;
  t.i = i;
  t.j = sigma(i);
  t.value = std::move(lambda);
  return t;
}

Token Token::sw(std::size_t i, std::size_t j, RingElement u) {
  Token t;
  t.op = Op::SW;
  t.i = i;
  t.j = j;
  t.value = std::move(u);
  return t;
}

Token Token::delta_conj(IndexSet index_set, int direction) {
  Token t;
  t.op = Op::DeltaConj;
  t.index_set = std::move(index_set);
  t.direction = direction;
  return t;
}

Token Token::inverse() const {
  Token t = *this;
  t.inverted = !inverted;
  return t;
}

std::string Token::to_string() const {
  std::ostringstream os;
  switch (op) {
    case Op::SE: os << "se_" << i << "," << j << "(" << value->to_string() << ")"; break;
    case Op::SEDiag: os << "se_" << i << "," << sigma(i) << "(" << value->to_string() << ")"; break;
    case Op::SW: os << "sw_" << i << "," << j << "(" << value->to_string() << ")"; break;
    case Op::DeltaConj: os << "delta_" << index_set->to_string() << "^" << (direction > 0 ? "+1" : "-1"); break;
  }
  if (inverted) os << "^-1";
  return os.str();
}

std::string GenWord::to_string() const {
  if (tokens.empty()) return "Id";
  std::string s;
  for (std::size_t k = 0; k < tokens.size(); ++k) s += (k ? " * " : "") + tokens[k].to_string();
  return s;
}

void validate_token(const Token& token, std::size_t n, const Ring& ring) {
  if (token.op != Token::Op::DeltaConj) {
    if (!token.value) throw Error(ErrorCode::ParseError, "generator token without a parameter");
    if (!(token.value->ring() == ring)) throw Error(ErrorCode::MixedRing, "token parameter from another ring");
  }
  switch (token.op) {
    case Token::Op::SE: check_se_indices(n, token.i, token.j); break;
    case Token::Op::SEDiag: check_index(n, token.i); break;
    case Token::Op::SW:
      check_se_indices(n, token.i, token.j);
      (void)unit_inverse(*token.value);
      break;
    case Token::Op::DeltaConj:
      if (!token.index_set || token.index_set->n() != n) {
        throw Error(ErrorCode::BadIndices, "delta token needs an index set of size n");
      }
      if (token.direction != 1 && token.direction != -1) throw Error(ErrorCode::BadIndices, "direction is +1 or -1");
      break;
  }
}

Matrix token_matrix(const Token& token, std::size_t n, const Ring& ring, const std::optional<RingElement>& t) {
  if (token.op == Token::Op::DeltaConj) {
    if (!t) throw Error(ErrorCode::ParseError, "delta token in a word without t");
    const DeltaPair dp = delta(*token.index_set, *t);
    const bool forward = (token.direction > 0) != token.inverted;
    return (forward ? dp.delta : dp.inverse).rehome(ring);
  }
  const RingElement v = token.value->rehome(ring);
  switch (token.op) {
    case Token::Op::SE: return se_matrix(n, token.i, token.j, token.inverted ? -v : v);
    case Token::Op::SEDiag: return se_diag_matrix(n, token.i, token.inverted ? -v : v);
    case Token::Op::SW: {
      SympMatrix m = sw(n, token.i, token.j, v);
      return token.inverted ? m.symplectic_inverse().matrix() : m.matrix();
    }
    case Token::Op::DeltaConj: break;
  }
  throw std::logic_error("unreachable token kind");
}

SympMatrix word_eval(const GenWord& word) {
  Ring ring = word.ring;
  bool has_delta = false;
  for (const auto& tok : word.tokens) {
    validate_token(tok, word.n, word.ring);
    has_delta |= tok.op == Token::Op::DeltaConj;
  }
  if (has_delta) {
    if (!word.t) throw Error(ErrorCode::ParseError, "delta token in a word without t");
    ring = delta(IndexSet::odd(word.n), *word.t).ring;
  }
  Matrix acc = Matrix::identity(ring, 2 * word.n);
  for (const auto& tok : word.tokens) acc = acc * token_matrix(tok, word.n, ring, word.t);
  return SympMatrix(std::move(acc));
}

GenWord word_invert(const GenWord& word) {
  GenWord out(word.n, word.ring);
  out.t = word.t;
  for (auto it = word.tokens.rbegin(); it != word.tokens.rend(); ++it) out.tokens.push_back(it->inverse());
  return out;
}

std::optional<Token> as_single_generator(const SympMatrix& alpha) {
  const Matrix& m = alpha.matrix();
  const std::size_t size = m.rows();
  for (std::size_t r = 0; r < size; ++r) {
    for (std::size_t c = 0; c < size; ++c) {
      if (r == c || m(r, c).is_zero()) continue;
      const std::size_t i = r + 1;
      const std::size_t j = c + 1;
      const RingElement& l = m(r, c);
      if (j == sigma(i)) {
        if (m == se_diag_matrix(alpha.n(), i, l)) return Token::se_diag(i, l);
        return std::nullopt;
      }
      if (m == se_matrix(alpha.n(), i, j, l)) return Token::se(i, j, l);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

Predicate whole_ring() {
  return [](const RingElement&) { return true; };
}

Predicate ideal_of_monomial(const RingElement& t) {
  if (!t.is_monomial()) throw Error(ErrorCode::NotMonomial, t.to_string() + " is not a monomial");
  const ExponentVector e = t.terms()[0].exponent;
  const mpq_class c = t.terms()[0].coeff;
  return [e, c](const RingElement& x) {
    const BaseRing& base = x.ring().base();
    for (const auto& term : x.terms()) {
      if (!x.ring().monoid().contains(term.exponent - e)) return false;
      // Over Z the coefficient must also be divisible by c.
      if (base.kind() == BaseRing::Kind::Integers &&
          mpz_divisible_p(term.coeff.get_num_mpz_t(), c.get_num_mpz_t()) == 0) {
        return false;
      }
    }
    return true;
  };
}

Shape Shape::sI(IndexSet index_set, Predicate lambda) {
  return Shape{Kind::SI, std::move(index_set), std::move(lambda)};
}
Shape Shape::sJ(IndexSet index_set, Predicate lambda) {
  return Shape{Kind::SJ, std::move(index_set), std::move(lambda)};
}
Shape Shape::sD(Predicate lambda) { return Shape{Kind::SD, std::nullopt, std::move(lambda)}; }
Shape Shape::sW() { return Shape{Kind::SW, std::nullopt, whole_ring()}; }

namespace {

bool single_generator(const SympMatrix& alpha, const IndexSet& set, const Predicate& lambda) {
  const auto tok = as_single_generator(alpha);
  if (!tok) return false;
  const RingElement& l = *tok->value;
  if (tok->op == Token::Op::SEDiag) return set.contains(tok->i) && lambda(l);
  const SeIndices other{sigma(tok->j), sigma(tok->i), parity_sign(tok->i + tok->j) > 0 ? -l : l};
  return (set.contains(tok->i) && lambda(l)) || (set.contains(other.i) && lambda(other.lambda));
}

bool parabolic_unitriangular(const SympMatrix& alpha, const IndexSet& set, const Predicate& lambda) {
  std::vector<std::size_t> order(set.members().begin(), set.members().end());
  for (auto it = set.members().rbegin(); it != set.members().rend(); ++it) order.push_back(sigma(*it));
  const Matrix& m = alpha.matrix();
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = 0; b < order.size(); ++b) {
      const RingElement& x = m(order[a] - 1, order[b] - 1);
      if (a == b && !x.is_one()) return false;
      if (a > b && !x.is_zero()) return false;
      if (a < b && !x.is_zero() && !lambda(x)) return false;
    }
  }
  return alpha.is_symplectic();
}

}  // namespace

bool subgroup_shape(const SympMatrix& alpha, const Shape& shape) {
  const Matrix& m = alpha.matrix();
  switch (shape.kind) {
    case Shape::Kind::SD: {
      if (!m.is_diagonal()) return false;
      for (std::size_t k = 0; k < m.rows(); ++k) {
        if (!shape.lambda(m(k, k) - m.ring().one())) return false;
      }
      return alpha.is_symplectic();
    }
    case Shape::Kind::SW: return m.is_monomial() && alpha.is_symplectic();
    case Shape::Kind::SI:
    case Shape::Kind::SJ: {
      if (!shape.index_set || shape.index_set->n() != alpha.n()) {
        throw Error(ErrorCode::DimensionMismatch, "shape index set does not match the matrix");
      }
      if (m.is_identity()) return true;
      return single_generator(alpha, *shape.index_set, shape.lambda) ||
             parabolic_unitriangular(alpha, *shape.index_set, shape.lambda);
    }
  }
  return false;
}

namespace {

void check_form_vectors(const Vector& a, const Vector& b) {
  if (a.size() != b.size() || a.empty() || a.size() % 2 != 0) {
    throw Error(ErrorCode::DimensionMismatch, "form vectors need equal even length");
  }
}

}  // namespace

RingElement phi_q(const Vector& q, const Vector& p) {
  check_form_vectors(q, p);
  return dot(tilde(p), q);
}

RingElement combined_form(const FormVector& x, const FormVector& y) {
  return phi_q(y.p, x.p) + x.a * y.b - x.b * y.a;
}

FormVector transvection_delta(const Vector& q, const FormVector& v) {
  check_form_vectors(q, v.p);
  FormVector out = v;
  for (std::size_t k = 0; k < q.size(); ++k) out.p[k] += v.b * q[k];
  out.a = v.a - phi_q(q, v.p) + v.b;
  return out;
}

FormVector transvection_gamma(const Vector& q, const FormVector& v) {
  check_form_vectors(q, v.p);
  FormVector out = v;
  for (std::size_t k = 0; k < q.size(); ++k) out.p[k] += v.a * q[k];
  out.b = v.b + phi_q(q, v.p) - v.a;
  return out;
}

}  // namespace symplex
