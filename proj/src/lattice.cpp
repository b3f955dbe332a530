#include "symplex/lattice.hpp"

#include <algorithm>
#include <set>

namespace symplex::lattice {

namespace {

using QRow = std::vector<mpq_class>;

struct Echelon {
  std::vector<QRow> rows;
  std::vector<std::size_t> pivots;
};

Echelon reduced_row_echelon(const std::vector<ZVec>& input, std::size_t ambient) {
  std::vector<QRow> m;
  m.reserve(input.size());
  for (const auto& r : input) {
    QRow q(ambient);
    for (std::size_t k = 0; k < ambient; ++k) q[k] = r[k];
    m.push_back(std::move(q));
  }
  Echelon out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ambient && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    const mpq_class inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const mpq_class f = m[r][col];
      for (std::size_t k = 0; k < ambient; ++k) m[r][k] -= f * m[row][k];
    }
    out.pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  out.rows = std::move(m);
  return out;
}

mpq_class determinant(std::vector<QRow> m) {
  const std::size_t n = m.size();
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && m[sel][c] == 0) ++sel;
    if (sel == n) return 0;
    if (sel != c) {
      std::swap(m[sel], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      const mpq_class f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

ZVec clear_denominators(const QRow& q) {
  mpz_class l = 1;
  for (const auto& x : q) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  ZVec z(q.size());
  for (std::size_t k = 0; k < q.size(); ++k) z[k] = q[k].get_num() * (l / q[k].get_den());
  return primitive(std::move(z));
}

}  // namespace

ZVec to_zvec(std::span<const std::int64_t> v) {
  ZVec z;
  z.reserve(v.size());
  for (auto x : v) z.emplace_back(static_cast<long>(x));
  return z;
}

std::vector<std::int64_t> to_int64(const ZVec& v) {
  std::vector<std::int64_t> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

mpz_class dot(const ZVec& a, const ZVec& b) {
  mpz_class s = 0;
  for (std::size_t k = 0; k < a.size() && k < b.size(); ++k) s += a[k] * b[k];
  return s;
}

bool is_zero(const ZVec& v) {
  return std::all_of(v.begin(), v.end(), [](const mpz_class& x) { return x == 0; });
}

ZVec primitive(ZVec v) {
  mpz_class g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1) {
    for (auto& x : v) x /= g;
  }
  return v;
}

std::size_t rank(const std::vector<ZVec>& rows, std::size_t ambient) {
  return reduced_row_echelon(rows, ambient).pivots.size();
}

std::vector<std::size_t> pivot_columns(const std::vector<ZVec>& rows, std::size_t ambient) {
  return reduced_row_echelon(rows, ambient).pivots;
}

std::vector<ZVec> orthogonal_complement(const std::vector<ZVec>& rows, std::size_t ambient) {
  const Echelon e = reduced_row_echelon(rows, ambient);
  std::vector<bool> is_pivot(ambient, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<ZVec> basis;
  for (std::size_t free = 0; free < ambient; ++free) {
    if (is_pivot[free]) continue;
    QRow x(ambient);
    x[free] = 1;
    for (std::size_t k = 0; k < e.pivots.size(); ++k) x[e.pivots[k]] = -e.rows[k][free];
    basis.push_back(clear_denominators(x));
  }
  return basis;
}

ZVec cofactor_normal(const std::vector<ZVec>& vectors) {
  const std::size_t d = vectors.size() + 1;
  ZVec h(d);
  for (std::size_t skip = 0; skip < d; ++skip) {
    std::vector<QRow> minor;
    for (const auto& v : vectors) {
      QRow r;
      for (std::size_t k = 0; k < d; ++k) {
        if (k != skip) r.emplace_back(v[k]);
      }
      minor.push_back(std::move(r));
    }
    const mpq_class det = determinant(std::move(minor));
    h[skip] = (skip % 2 == 0) ? det.get_num() : mpz_class(-det.get_num());
  }
  return h;
}

bool in_span(const std::vector<ZVec>& rows, const ZVec& v, std::size_t ambient) {
  auto extended = rows;
  extended.push_back(v);
  return rank(extended, ambient) == rank(rows, ambient);
}

void for_each_combination(std::size_t n, std::size_t k,
                          const std::function<void(const std::vector<std::size_t>&)>& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

LatticeBasis::LatticeBasis(const std::vector<ZVec>& gens, std::size_t ambient) : ambient_(ambient) {
  std::vector<ZVec> m;
  for (const auto& g : gens) {
    if (!is_zero(g)) m.push_back(g);
  }
  std::size_t cur = 0;
  for (std::size_t col = 0; col < ambient && cur < m.size(); ++col) {
    while (true) {
      // Smallest nonzero |entry| at or below cur becomes the working pivot.
      std::size_t best = m.size();
      for (std::size_t r = cur; r < m.size(); ++r) {
        if (m[r][col] == 0) continue;
        if (best == m.size() || abs(m[r][col]) < abs(m[best][col])) best = r;
      }
      if (best == m.size()) break;
      std::swap(m[cur], m[best]);
      bool done = true;
      for (std::size_t r = cur + 1; r < m.size(); ++r) {
        if (m[r][col] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[r][col].get_mpz_t(), m[cur][col].get_mpz_t());
        for (std::size_t k = 0; k < ambient; ++k) m[r][k] -= q * m[cur][k];
        if (m[r][col] != 0) done = false;
      }
      if (done) {
        rows_.push_back(m[cur]);
        pivots_.push_back(col);
        ++cur;
        break;
      }
    }
  }
}

bool LatticeBasis::contains(ZVec v) const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const auto p = pivots_[k];
    if (v[p] == 0) continue;
    if (!mpz_divisible_p(v[p].get_mpz_t(), rows_[k][p].get_mpz_t())) return false;
    const mpz_class q = v[p] / rows_[k][p];
    for (std::size_t c = 0; c < ambient_; ++c) v[c] -= q * rows_[k][c];
  }
  return is_zero(v);
}

bool ConeData::in_span(const ZVec& x) const {
  return std::all_of(equations.begin(), equations.end(),
                     [&](const ZVec& e) { return dot(e, x) == 0; });
}

bool ConeData::contains(const ZVec& x) const {
  if (!in_span(x)) return false;
  return std::all_of(facets.begin(), facets.end(), [&](const ZVec& h) { return dot(h, x) >= 0; });
}

bool ConeData::contains_relative_interior(const ZVec& x) const {
  if (!in_span(x)) return false;
  return std::all_of(facets.begin(), facets.end(), [&](const ZVec& h) { return dot(h, x) > 0; });
}

ConeData analyze_cone(const std::vector<ZVec>& generators, std::size_t ambient) {
  ConeData cone;
  cone.ambient = ambient;
  cone.grading = ZVec(ambient);

  std::vector<ZVec> rays;
  {
    std::set<std::vector<mpz_class>> seen;
    for (const auto& g : generators) {
      if (is_zero(g)) continue;
      ZVec p = primitive(g);
      if (seen.insert(p).second) rays.push_back(std::move(p));
    }
  }
  cone.equations = orthogonal_complement(rays, ambient);
  if (rays.empty()) {
    cone.dim = 0;
    return cone;
  }
  const auto coords = pivot_columns(rays, ambient);
  const std::size_t d = coords.size();
  cone.dim = d;

  std::vector<ZVec> proj;
  for (const auto& r : rays) {
    ZVec p(d);
    for (std::size_t k = 0; k < d; ++k) p[k] = r[coords[k]];
    proj.push_back(std::move(p));
  }

  std::vector<ZVec> facets_proj;
  if (d == 1) {
    bool pos = false, neg = false;
    for (const auto& p : proj) {
      if (p[0] > 0) pos = true;
      if (p[0] < 0) neg = true;
    }
    if (pos && !neg) facets_proj.push_back(ZVec{1});
    if (neg && !pos) facets_proj.push_back(ZVec{-1});
  } else {
    std::set<std::vector<mpz_class>> seen;
    for_each_combination(proj.size(), d - 1, [&](const std::vector<std::size_t>& subset) {
      std::vector<ZVec> vs;
      for (auto i : subset) vs.push_back(proj[i]);
      ZVec h = cofactor_normal(vs);
      if (is_zero(h)) return;
      bool pos = false, neg = false;
      for (const auto& p : proj) {
        const auto s = sgn(dot(h, p));
        if (s > 0) pos = true;
        if (s < 0) neg = true;
      }
      if (pos && neg) return;
      if (neg) {
        for (auto& x : h) x = -x;
      }
      h = primitive(std::move(h));
      if (seen.insert(h).second) facets_proj.push_back(std::move(h));
    });
  }

  cone.pointed = rank(facets_proj, d) == d;
  for (const auto& h : facets_proj) {
    ZVec lifted(ambient);
    for (std::size_t k = 0; k < d; ++k) lifted[coords[k]] = h[k];
    for (std::size_t k = 0; k < ambient; ++k) cone.grading[k] += lifted[k];
    cone.facets.push_back(std::move(lifted));
  }
  std::sort(cone.facets.begin(), cone.facets.end());
  return cone;
}

}  // namespace symplex::lattice
