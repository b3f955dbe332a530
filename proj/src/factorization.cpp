#include "symplex/factorization.hpp"

#include <functional>
#include <stdexcept>

#include "symplex/error.hpp"

namespace symplex {

namespace {

int parity_sign(std::size_t k) { return k % 2 == 0 ? 1 : -1; }

// Left multiplication by the token's matrix as row operations.
void apply_rows(Matrix& m, const Token& tok) {
  const RingElement& l = *tok.value;
  if (tok.op == Token::Op::SEDiag) {
    m.add_row_multiple(tok.i - 1, sigma(tok.i) - 1, l);
    return;
  }
  const RingElement c = parity_sign(tok.i + tok.j) > 0 ? -l : l;
  m.add_row_multiple(tok.i - 1, tok.j - 1, l);
  m.add_row_multiple(sigma(tok.j) - 1, sigma(tok.i) - 1, c);
}

Token negated(const Token& tok) {
  Token t = tok;
  t.value = -*tok.value;
  return t;
}

struct Division {
  std::function<mpz_class(const RingElement&)> norm;
  std::function<std::pair<RingElement, RingElement>(const RingElement&, const RingElement&)> divmod;
  std::function<std::optional<RingElement>(const RingElement&)> inverse;
};

Division euclidean_division() {
  return Division{
      [](const RingElement& x) { return euclidean_norm(x); },
      [](const RingElement& a, const RingElement& b) { return euclidean_divmod(a, b); },
      [](const RingElement& x) -> std::optional<RingElement> {
        auto u = is_unit(x);
        if (u.status != UnitStatus::Yes) return std::nullopt;
        return u.inverse;
      }};
}

Division local_division(std::int64_t p) {
  return Division{
      [p](const RingElement& x) { return mpz_class(p_valuation(*x.constant_value(), p)); },
      [p](const RingElement& a, const RingElement& b) -> std::pair<RingElement, RingElement> {
        const mpq_class av = *a.constant_value();
        const mpq_class bv = *b.constant_value();
        if (av == 0 || p_valuation(av, p) >= p_valuation(bv, p)) {
          return {a.ring().constant(mpq_class(av / bv)), a.ring().zero()};
        }
        return {a.ring().zero(), a};
      },
      [p](const RingElement& x) -> std::optional<RingElement> {
        const mpq_class v = *x.constant_value();
        if (v == 0 || p_valuation(v, p) != 0) return std::nullopt;
        return x.ring().constant(mpq_class(1 / v));
      }};
}

// Reduces a symplectic matrix to Id by left multiplication with elementary
// generators, one (2k-1, 2k) column pair at a time from the right.
class Eliminator {
 public:
  Eliminator(const SympMatrix& alpha, Division div, FactorOptions options)
      : work_(alpha.matrix()), div_(std::move(div)), options_(options) {}

  void run() {
    for (std::size_t last = work_.rows(); last >= 2; last -= 2) {
      clear_last_column(last);
      clear_paired_column(last);
    }
    if (!work_.is_identity()) throw Error(ErrorCode::NotSymplectic, "elimination left a non-identity residue");
  }

  FactorizationResult result(const SympMatrix& alpha) const {
    GenWord word(alpha.n(), alpha.ring());
    for (const auto& tok : applied_) word.tokens.push_back(negated(tok));
    const SympMatrix residual = word_eval(word).symplectic_inverse() * alpha;
    return FactorizationResult{word, residual, FactorStats{word.size(), pivot_steps_}};
  }

 private:
  const RingElement& v(std::size_t row, std::size_t col) const { return work_(row - 1, col - 1); }

  void apply(Token tok) {
    if (tok.value->is_zero()) return;
    apply_rows(work_, tok);
    if (options_.verify_steps && !SympMatrix(work_).is_symplectic()) {
      throw std::logic_error("row operation " + tok.to_string() + " broke the form");
    }
    applied_.push_back(std::move(tok));
  }

  // Column `last` becomes e_last.
  void clear_last_column(std::size_t last) {
    const Ring& ring = work_.ring();
    const std::size_t col = last;
    std::size_t p = 0;
    for (;;) {
      p = 0;
      mpz_class best;
      std::size_t nonzero = 0;
      for (std::size_t k = 1; k <= last; ++k) {
        if (v(k, col).is_zero()) continue;
        ++nonzero;
        const mpz_class nk = div_.norm(v(k, col));
        if (p == 0 || nk < best) {
          p = k;
          best = nk;
        }
      }
      const bool others = nonzero > 1;
      if (p == 0) throw Error(ErrorCode::NotSymplectic, "zero column");
      if (!others) break;
      ++pivot_steps_;
      const RingElement pivot = v(p, col);
      for (std::size_t k = 1; k <= last; ++k) {
        if (k == p || k == sigma(p) || v(k, col).is_zero()) continue;
        auto [q, r] = div_.divmod(v(k, col), pivot);
        apply(Token::se(k, p, -q));
      }
      if (!v(sigma(p), col).is_zero()) {
        auto [q, r] = div_.divmod(v(sigma(p), col), pivot);
        apply(Token::se_diag(sigma(p), -q));
      }
    }
    if (p == last - 1) {
      apply(Token::se_diag(last, ring.one()));
      apply(Token::se_diag(last - 1, -ring.one()));
    } else if (p != last) {
      apply(Token::se(last, p, ring.one()));
      apply(Token::se(p, last, -ring.one()));
    }
    const RingElement a = v(last, col);
    if (a.is_one()) return;
    const auto inv = div_.inverse(a);
    if (!inv) throw Error(ErrorCode::NotSymplectic, "column is not unimodular");
    apply(Token::se_diag(last - 1, *inv));
    apply(Token::se_diag(last, ring.one() - a));
    apply(Token::se_diag(last - 1, -ring.one()));
  }

  // With column `last` equal to e_last, column last-1 becomes e_{last-1}.
  void clear_paired_column(std::size_t last) {
    const std::size_t col = last - 1;
    if (!v(last - 1, col).is_one()) throw Error(ErrorCode::NotSymplectic, "paired column fails the form");
    for (std::size_t k = 1; k + 1 < last; ++k) {
      if (!v(k, col).is_zero()) apply(Token::se(k, last - 1, -v(k, col)));
    }
    if (!v(last, col).is_zero()) apply(Token::se_diag(last, -v(last, col)));
  }

  Matrix work_;
  Division div_;
  FactorOptions options_;
  std::vector<Token> applied_;
  std::size_t pivot_steps_ = 0;
};

void require_symplectic(const SympMatrix& alpha) {
  if (!alpha.is_symplectic()) throw Error(ErrorCode::NotSymplectic, "input fails alpha^T psi alpha = psi");
}

FactorizationResult eliminate(const SympMatrix& alpha, Division div, FactorOptions options) {
  Eliminator e(alpha, std::move(div), options);
  e.run();
  return e.result(alpha);
}

}  // namespace

std::int64_t p_valuation(const mpq_class& x, std::int64_t p) {
  if (x == 0) throw Error(ErrorCode::DivisionByZero, "valuation of zero");
  const mpz_class pp(static_cast<long>(p));
  std::int64_t v = 0;
  mpz_class num = x.get_num();
  while (mpz_divisible_p(num.get_mpz_t(), pp.get_mpz_t())) {
    num /= pp;
    ++v;
  }
  mpz_class den = x.get_den();
  while (mpz_divisible_p(den.get_mpz_t(), pp.get_mpz_t())) {
    den /= pp;
    --v;
  }
  return v;
}

FactorizationResult factor_over_field(const SympMatrix& alpha, FactorOptions options) {
  if (!alpha.ring().is_field()) throw Error(ErrorCode::NotAField, "factor_over_field needs a field");
  require_symplectic(alpha);
  return eliminate(alpha, euclidean_division(), options);
}

FactorizationResult factor_over_euclidean(const SympMatrix& alpha, FactorOptions options) {
  if (!is_euclidean(alpha.ring())) throw Error(ErrorCode::NotEuclidean, "ring has no Euclidean structure");
  require_symplectic(alpha);
  return eliminate(alpha, euclidean_division(), options);
}

FactorizationResult local_ring_factor(const SympMatrix& alpha, std::int64_t p, FactorOptions options) {
  const Ring& ring = alpha.ring();
  if (ring.base().kind() != BaseRing::Kind::Rationals || ring.monoid().rank() != 0 || !is_prime(p)) {
    throw Error(ErrorCode::NotLocal, "local factorization works over Z_(p) inside Q");
  }
  const Matrix& m = alpha.matrix();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto x = m(r, c).constant_value();
      if (*x != 0 && p_valuation(mpq_class(1, x->get_den()), p) < 0) {
        throw Error(ErrorCode::NotLocal, m(r, c).to_string() + " has a denominator divisible by p");
      }
    }
  }
  require_symplectic(alpha);
  return eliminate(alpha, local_division(p), options);
}

std::vector<std::size_t> pi_order(const IndexSet& k) {
  std::vector<std::size_t> order(k.members().begin(), k.members().end());
  for (auto it = k.members().rbegin(); it != k.members().rend(); ++it) order.push_back(sigma(*it));
  return order;
}

SympMatrix order_transport(const Ring& ring, const IndexSet& index_i, const IndexSet& index_j) {
  const auto oi = pi_order(index_i);
  const auto oj = pi_order(index_j);
  const std::size_t n = index_i.n();
  Matrix x(ring, 2 * n, 2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = oi[k];
    const std::size_t j = oj[k];
    // <e_i, e_sigma(i)> is +1 for odd i, so the partner sign matches parities.
    const long s = parity_sign(i + j);
    x.set(i - 1, j - 1, ring.one());
    x.set(sigma(i) - 1, sigma(j) - 1, ring.constant(s));
  }
  return SympMatrix(std::move(x));
}

GenWord factor_parabolic_unipotent(const SympMatrix& u, const IndexSet& k) {
  const std::size_t n = k.n();
  const std::size_t size = 2 * n;
  if (u.n() != n) throw Error(ErrorCode::DimensionMismatch, "index set size");
  const auto ord = pi_order(k);
  Matrix work = u.matrix();
  auto at = [&](std::size_t a, std::size_t b) -> const RingElement& { return work(ord[a] - 1, ord[b] - 1); };
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      if (a == b ? !at(a, b).is_one() : !at(a, b).is_zero()) {
        throw Error(ErrorCode::DecompositionFailed, "matrix is not unitriangular in the order of " + k.to_string());
      }
    }
  }
  if (!u.is_symplectic()) throw Error(ErrorCode::DecompositionFailed, "unipotent factor is not symplectic");

  std::vector<Token> applied;
  auto apply = [&](Token tok) {
    apply_rows(work, tok);
    applied.push_back(std::move(tok));
  };
  // Levi block first, bottom row up, so each source row is already clean there.
  for (std::size_t a = n; a-- > 0;) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!at(a, b).is_zero()) apply(Token::se(ord[a], ord[b], -at(a, b)));
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = n; b < size; ++b) {
      if (at(a, b).is_zero()) continue;
      if (ord[b] == sigma(ord[a])) {
        apply(Token::se_diag(ord[a], -at(a, b)));
      } else {
        apply(Token::se(ord[a], ord[b], -at(a, b)));
      }
    }
  }
  if (!work.is_identity()) throw Error(ErrorCode::DecompositionFailed, "unipotent reduction did not reach Id");

  const Ring& ring = u.ring();
  const bool commutators = n >= 2 && !(ring.base().kind() == BaseRing::Kind::PrimeField && ring.base().modulus() == 2);
  GenWord word(n, ring);
  for (const auto& tok : applied) {
    const Token inv = negated(tok);
    if (inv.op != Token::Op::SEDiag || !commutators) {
      word.tokens.push_back(inv);
      continue;
    }
    // se_{i sigma(i)}(l) = [se_ik(1), se_{k sigma(i)}(l/2)] for k in K, k != i.
    const std::size_t i = inv.i;
    std::size_t kk = 0;
    for (std::size_t m : k.members()) {
      if (m != i) {
        kk = m;
        break;
      }
    }
    const RingElement half = *inv.value * ring.constant(mpq_class(1, 2));
    word.tokens.push_back(Token::se(i, kk, ring.one()));
    word.tokens.push_back(Token::se(kk, sigma(i), half));
    word.tokens.push_back(Token::se(i, kk, -ring.one()));
    word.tokens.push_back(Token::se(kk, sigma(i), -half));
  }
  return word;
}

BruhatResult bruhat_decompose(const SympMatrix& alpha, const IndexSet& index_i, const IndexSet& index_j) {
  const Ring& ring = alpha.ring();
  if (!ring.is_field()) throw Error(ErrorCode::NotAField, "Bruhat splitting needs a field");
  require_symplectic(alpha);
  const std::size_t n = alpha.n();
  if (index_i.n() != n || index_j.n() != n) throw Error(ErrorCode::DimensionMismatch, "index set size");
  const std::size_t size = 2 * n;
  const SympMatrix id(Matrix::identity(ring, size));

  if (auto tok = as_single_generator(alpha)) {
    if (tok->op == Token::Op::SEDiag && index_i.contains(tok->i)) {
      return BruhatResult{factor_parabolic_unipotent(alpha, index_i), id, GenWord(n, ring)};
    }
    if (tok->op == Token::Op::SE) {
      GenWord beta1(n, ring);
      if (index_i.contains(tok->i)) {
        beta1.tokens.push_back(*tok);
      } else if (index_i.contains(sigma(tok->j))) {
        const RingElement& l = *tok->value;
        beta1.tokens.push_back(Token::se(sigma(tok->j), sigma(tok->i), parity_sign(tok->i + tok->j) > 0 ? -l : l));
      }
      if (!beta1.empty()) return BruhatResult{beta1, id, GenWord(n, ring)};
    }
  }

  const SympMatrix x = order_transport(ring, index_i, index_j);
  const SympMatrix g = alpha * x.symplectic_inverse();
  const auto ord = pi_order(index_i);

  // Reordered copy; row operations add multiples of lower rows to upper rows.
  Matrix h(ring, size, size);
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = 0; b < size; ++b) h.set(a, b, g(ord[a] - 1, ord[b] - 1));
  }
  Matrix u1 = Matrix::identity(ring, size);
  std::vector<bool> used(size, false);
  std::vector<std::size_t> pivot_col(size, 0);
  for (std::size_t c = 0; c < size; ++c) {
    std::size_t r = size;
    for (std::size_t a = size; a-- > 0;) {
      if (!used[a] && !h(a, c).is_zero()) {
        r = a;
        break;
      }
    }
    if (r == size) continue;
    const RingElement inv = *is_unit(h(r, c)).inverse;
    for (std::size_t a = 0; a < r; ++a) {
      if (used[a] || h(a, c).is_zero()) continue;
      const RingElement lambda = -(h(a, c) * inv);
      h.add_row_multiple(a, r, lambda);
      // u1 <- u1 (Id - lambda e_ar): column r -= lambda column a.
      for (std::size_t row = 0; row < size; ++row) {
        if (!u1(row, a).is_zero()) u1.set(row, r, u1(row, r) - lambda * u1(row, a));
      }
    }
    used[r] = true;
    pivot_col[r] = c;
  }
  for (bool b : used) {
    if (!b) throw Error(ErrorCode::DecompositionFailed, "no pivot for some row");
  }

  Matrix m(ring, size, size);
  Matrix u2(ring, size, size);
  Matrix u1_orig(ring, size, size);
  for (std::size_t r = 0; r < size; ++r) {
    const std::size_t c = pivot_col[r];
    const RingElement piv = h(r, c);
    const RingElement inv = *is_unit(piv).inverse;
    m.set(ord[r] - 1, ord[c] - 1, piv);
    for (std::size_t b = 0; b < size; ++b) {
      if (!h(r, b).is_zero()) u2.set(ord[c] - 1, ord[b] - 1, h(r, b) * inv);
      u1_orig.set(ord[r] - 1, ord[b] - 1, u1(r, b));
    }
  }

  const SympMatrix beta2 = SympMatrix(m) * x;
  const SympMatrix u3 = x.symplectic_inverse() * SympMatrix(u2) * x;
  BruhatResult out{factor_parabolic_unipotent(SympMatrix(u1_orig), index_i), beta2,
                   factor_parabolic_unipotent(u3, index_j)};
  if (!out.beta2.matrix().is_monomial() || !out.beta2.is_symplectic()) {
    throw Error(ErrorCode::DecompositionFailed, "middle factor is not monomial symplectic");
  }
  if (!(word_eval(out.beta1) * out.beta2 * word_eval(out.beta3) == alpha)) {
    throw Error(ErrorCode::DecompositionFailed, "factors do not reproduce the input");
  }
  return out;
}

}  // namespace symplex
