#include "zslice/cycres.hpp"

#include <utility>

#include "zslice/errors.hpp"

namespace zslice {

namespace {

// Determinant of a square matrix over Z/q, q prime, by elimination.
i64 det_mod_prime(std::vector<std::vector<i64>> a, i64 q) {
  const std::size_t n = a.size();
  for (auto& row : a)
    for (auto& x : row) x = mod_floor(x, q);
  i64 det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = q - det;
    }
    det = mul_mod(det, a[c][c], q);
    i64 inv = *inverse_mod(a[c][c], q);
    for (std::size_t r = c + 1; r < n; ++r) {
      i64 f = mul_mod(a[r][c], inv, q);
      if (f == 0) continue;
      for (std::size_t k = c; k < n; ++k) a[r][k] = mod_floor(a[r][k] - mul_mod(f, a[c][k], q), q);
    }
  }
  return det % q;
}

}  // namespace

QuotRing::QuotRing(i64 p, i64 m) : p_(p), m_(m) {
  require(p >= 3 && is_prime(p), "p must be an odd prime");
  require(m >= 2 && m < (i64(1) << 31), "modulus must lie in [2, 2^31)");
  require(gcd64(m, p) == 1, "modulus must be coprime to p (the ramified case is not supported)");
}

std::optional<i64> QuotRing::size() const {
  __int128 s = 1;
  for (std::size_t i = 0; i < degree(); ++i) {
    s *= m_;
    if (s > (__int128(1) << 62)) return std::nullopt;
  }
  return static_cast<i64>(s);
}

QuotRing::Elem QuotRing::from_int(i64 c) const {
  Elem e = zero();
  e[0] = mod_floor(c, m_);
  return e;
}

QuotRing::Elem QuotRing::t() const {
  Elem e = zero();
  e[1] = 1;
  return e;
}

namespace {

// Reduces a length-p vector (mod t^p - 1) modulo Phi_p and m.
QuotRing::Elem reduce_cyclic(const std::vector<i64>& c, i64 p, i64 m) {
  QuotRing::Elem out(std::size_t(p - 1));
  const i64 top = c[std::size_t(p - 1)];
  for (std::size_t i = 0; i + 1 < std::size_t(p); ++i) out[i] = mod_floor(c[i] - top, m);
  return out;
}

}  // namespace

QuotRing::Elem QuotRing::from_laurent(const LaurentPoly& f) const {
  std::vector<i64> c(std::size_t(p_), 0);
  for (long e = f.low(); !f.is_zero() && e <= f.high(); ++e) {
    Integer r = f.coeff(e) % Integer(static_cast<long>(m_));
    std::size_t slot = std::size_t(mod_floor(i64(e), p_));
    c[slot] = mod_floor(c[slot] + to_int64(r), m_);
  }
  return reduce_cyclic(c, p_, m_);
}

QuotRing::Elem QuotRing::add(const Elem& a, const Elem& b) const {
  Elem r(degree());
  for (std::size_t i = 0; i < degree(); ++i) r[i] = (a[i] + b[i]) % m_;
  return r;
}

QuotRing::Elem QuotRing::sub(const Elem& a, const Elem& b) const {
  Elem r(degree());
  for (std::size_t i = 0; i < degree(); ++i) r[i] = mod_floor(a[i] - b[i], m_);
  return r;
}

QuotRing::Elem QuotRing::neg(const Elem& a) const { return sub(zero(), a); }

QuotRing::Elem QuotRing::mul(const Elem& a, const Elem& b) const {
  std::vector<i64> c(std::size_t(p_), 0);
  for (std::size_t i = 0; i < degree(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < degree(); ++j) {
      if (b[j] == 0) continue;
      std::size_t k = (i + j) % std::size_t(p_);
      c[k] = (c[k] + mul_mod(a[i], b[j], m_)) % m_;
    }
  }
  return reduce_cyclic(c, p_, m_);
}

QuotRing::Elem QuotRing::conj(const Elem& a) const {
  std::vector<i64> c(std::size_t(p_), 0);
  for (std::size_t i = 0; i < degree(); ++i) c[(std::size_t(p_) - i) % std::size_t(p_)] = a[i];
  return reduce_cyclic(c, p_, m_);
}

QuotRing::Elem QuotRing::norm(const Elem& a) const {
  Elem n = mul(a, conj(a));
  verify(is_fixed(n), "norm left the fixed subring");
  return n;
}

QuotRing::Elem QuotRing::trace(const Elem& a) const {
  Elem s = add(a, conj(a));
  verify(is_fixed(s), "trace left the fixed subring");
  return s;
}

bool QuotRing::is_unit(const Elem& a) const {
  // Multiplication by a is invertible mod every prime factor of m.
  const std::size_t d = degree();
  std::vector<std::vector<i64>> mat(d, std::vector<i64>(d));
  Elem basis = zero();
  for (std::size_t j = 0; j < d; ++j) {
    basis.assign(d, 0);
    basis[j] = 1;
    Elem col = mul(a, basis);
    for (std::size_t i = 0; i < d; ++i) mat[i][j] = col[i];
  }
  for (auto [q, e] : factorize(m_)) {
    (void)e;
    if (det_mod_prime(mat, q) == 0) return false;
  }
  return true;
}

std::optional<QuotRing::Elem> QuotRing::inverse(const Elem& a) const {
  if (!is_unit(a)) return std::nullopt;
  const std::size_t d = degree();
  ExactMatrix mat(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    Elem basis = zero();
    basis[j] = 1;
    Elem col = mul(a, basis);
    for (std::size_t i = 0; i < d; ++i) mat(i, j) = Integer(static_cast<long>(col[i]));
  }
  const Integer mm = static_cast<long>(m_);
  Integer det = determinant(mat);
  Integer det_inv;
  det = det % mm;
  if (det < 0) det += mm;
  verify(mpz_invert(det_inv.get_mpz_t(), det.get_mpz_t(), mm.get_mpz_t()) != 0,
         "unit with non-invertible multiplication determinant");
  ExactMatrix adj = adjugate(mat);
  Elem inv = zero();
  for (std::size_t i = 0; i < d; ++i) {
    Integer v = (adj(i, 0) * det_inv) % mm;
    if (v < 0) v += mm;
    inv[i] = to_int64(v);
  }
  verify(mul(a, inv) == one(), "ring inverse check failed");
  return inv;
}

i64 QuotRing::index(const Elem& a) const {
  i64 idx = 0;
  for (std::size_t i = degree(); i-- > 0;) idx = idx * m_ + a[i];
  return idx;
}

QuotRing::Elem QuotRing::element(i64 idx) const {
  Elem e(degree());
  for (std::size_t i = 0; i < degree(); ++i) {
    e[i] = idx % m_;
    idx /= m_;
  }
  return e;
}

std::string QuotRing::to_string(const Elem& a) const {
  std::vector<Integer> c;
  for (i64 x : a) c.emplace_back(static_cast<long>(x));
  return zslice::to_string(LaurentPoly::from_coeffs(0, c));
}

namespace {

i64 checked_size(const QuotRing& r, i64 max_size) {
  auto s = r.size();
  if (!s || *s > max_size)
    throw BudgetExceeded("ring has more than " + std::to_string(max_size) + " elements");
  return *s;
}

}  // namespace

bool surjectivity_check(const QuotRing& r, RingMap which, i64 max_size) {
  const i64 total = checked_size(r, max_size);
  std::vector<char> hit(static_cast<std::size_t>(total), 0);
  for (i64 i = 0; i < total; ++i) {
    QuotRing::Elem x = r.element(i);
    if (which == RingMap::norm) {
      if (!r.is_unit(x)) continue;
      hit[std::size_t(r.index(r.norm(x)))] = 1;
    } else {
      hit[std::size_t(r.index(r.trace(x)))] = 1;
    }
  }
  for (i64 i = 0; i < total; ++i) {
    QuotRing::Elem x = r.element(i);
    if (!r.is_fixed(x)) continue;
    if (which == RingMap::norm && !r.is_unit(x)) continue;
    if (!hit[std::size_t(i)]) return false;
  }
  return true;
}

NormTable::NormTable(const QuotRing& r, i64 max_size) : ring_(r) {
  const i64 total = checked_size(r, max_size);
  first_.assign(static_cast<std::size_t>(total), -1);
  for (i64 i = 0; i < total; ++i) {
    i64 n = r.index(r.norm(r.element(i)));
    if (first_[std::size_t(n)] < 0) first_[std::size_t(n)] = i;
  }
}

std::optional<QuotRing::Elem> NormTable::preimage(const QuotRing::Elem& x) const {
  i64 f = first_[std::size_t(ring_.index(x))];
  if (f < 0) return std::nullopt;
  return ring_.element(f);
}

QuotRing::Elem solve_norm(const QuotRing::Elem& mu, const NormTable& table) {
  const QuotRing& r = table.ring();
  require(r.is_fixed(mu), "mu must lie in the fixed subring");
  auto inv = r.inverse(mu);
  require(inv.has_value(), "mu must be a unit");
  auto lambda = table.preimage(*inv);
  verify(lambda.has_value(), "norm map misses a unit of the fixed subring");
  verify(r.mul(r.norm(*lambda), mu) == r.one(), "norm equation check failed");
  return *lambda;
}

QuotRing::Elem solve_norm(const QuotRing::Elem& mu, const QuotRing& r) {
  return solve_norm(mu, NormTable(r));
}

QuotRing::Elem isometry_cyclic(const QuotRing::Elem& v1, const QuotRing::Elem& v2,
                               const NormTable& table) {
  const QuotRing& r = table.ring();
  require(r.is_fixed(v1) && r.is_fixed(v2), "Hermitian values must be conjugation-fixed");
  auto inv1 = r.inverse(v1);
  require(inv1.has_value() && r.is_unit(v2), "values must be units (non-degenerate pairings)");
  auto lambda = table.preimage(r.mul(v2, *inv1));
  verify(lambda.has_value(), "no isometry between non-degenerate cyclic pairings");
  verify(r.mul(r.norm(*lambda), v1) == v2, "multiplier does not carry one value to the other");
  verify(r.is_unit(*lambda), "multiplier is not a unit");
  return *lambda;
}

bool HermGram::is_hermitian() const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (g[i].size() != size()) return false;
    for (std::size_t j = 0; j < size(); ++j)
      if (g[j][i] != ring.conj(g[i][j])) return false;
  }
  return true;
}

namespace {

QuotRing::Elem ring_det(const QuotRing& r, const std::vector<std::vector<QuotRing::Elem>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return r.one();
  if (n == 1) return a[0][0];
  QuotRing::Elem total = r.zero();
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<QuotRing::Elem>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<QuotRing::Elem> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(a[i][j]);
      minor.push_back(std::move(row));
    }
    QuotRing::Elem term = r.mul(a[0][c], ring_det(r, minor));
    total = (c % 2 == 0) ? r.add(total, term) : r.sub(total, term);
  }
  return total;
}

RingMatrix ring_mul(const QuotRing& r, const RingMatrix& a, const RingMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  RingMatrix c(n, std::vector<QuotRing::Elem>(m, r.zero()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < m; ++j) c[i][j] = r.add(c[i][j], r.mul(a[i][l], b[l][j]));
  return c;
}

bool is_diagonal(const HermGram& g) {
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      if (i != j && g.g[i][j] != g.ring.zero()) return false;
  return true;
}

HermGram leading_block(const HermGram& g, std::size_t s) {
  HermGram b{g.ring, {}};
  for (std::size_t i = 0; i < s; ++i)
    b.g.emplace_back(g.g[i].begin(), g.g[i].begin() + std::ptrdiff_t(s));
  return b;
}

RingMatrix embed(const QuotRing& r, const RingMatrix& p, std::size_t n) {
  RingMatrix out = ring_identity(r, n);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) out[i][j] = p[i][j];
  return out;
}

}  // namespace

bool HermGram::is_nondegenerate() const { return ring.is_unit(ring_det(ring, g)); }

RingMatrix ring_identity(const QuotRing& r, std::size_t n) {
  RingMatrix id(n, std::vector<QuotRing::Elem>(n, r.zero()));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = r.one();
  return id;
}

HermGram transform(const HermGram& g, const RingMatrix& p) {
  const QuotRing& r = g.ring;
  RingMatrix ph(p.empty() ? 0 : p[0].size(), std::vector<QuotRing::Elem>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < ph.size(); ++j) ph[j][i] = r.conj(p[i][j]);
  return HermGram{r, ring_mul(r, ring_mul(r, ph, g.g), p)};
}

RingMatrix homogeneous_fix(const HermGram& g) {
  const QuotRing& r = g.ring;
  const std::size_t n = g.size();
  require(n >= 1 && g.is_hermitian(), "Gram matrix must be Hermitian and nonempty");
  require(g.is_nondegenerate(), "Gram matrix must be non-degenerate");
  const std::size_t last = n - 1;
  auto checked = [&](const RingMatrix& p) {
    HermGram h = transform(g, p);
    verify(r.is_unit(h.g[last][last]), "fix did not produce a unit diagonal entry");
    return p;
  };
  if (r.is_unit(g.g[last][last])) return ring_identity(r, n);
  for (std::size_t i = 0; i < last; ++i) {
    if (!r.is_unit(g.g[i][i])) continue;
    RingMatrix p(n, std::vector<QuotRing::Elem>(n, r.zero()));
    for (std::size_t k = 0; k < n; ++k) p[k][k] = r.one();
    p[i][i] = p[last][last] = r.zero();
    p[i][last] = p[last][i] = r.one();
    return checked(p);
  }
  const i64 total = checked_size(r, 1'000'000);
  for (std::size_t base = n; base-- > 0;) {
    // Move generator `base` into the last slot, then add lambda * g_j.
    RingMatrix swap = ring_identity(r, n);
    if (base != last) {
      swap[base][base] = swap[last][last] = r.zero();
      swap[base][last] = swap[last][base] = r.one();
    }
    HermGram h = transform(g, swap);
    for (std::size_t j = 0; j < last; ++j) {
      for (i64 idx = 1; idx < total; ++idx) {
        QuotRing::Elem lam = r.element(idx);
        QuotRing::Elem v = r.add(r.add(h.g[last][last], r.mul(lam, h.g[last][j])),
                                 r.add(r.mul(r.conj(lam), h.g[j][last]), r.mul(r.norm(lam), h.g[j][j])));
        if (!r.is_unit(v)) continue;
        RingMatrix move = ring_identity(r, n);
        move[j][last] = lam;
        return checked(ring_mul(r, swap, move));
      }
    }
  }
  throw VerificationFailure("no generator move produces a unit self-pairing");
}

DiagonalForm gram_schmidt_diag(const HermGram& g) {
  const QuotRing& r = g.ring;
  const std::size_t n = g.size();
  require(g.is_hermitian(), "Gram matrix must be Hermitian");
  require(g.is_nondegenerate(), "Gram matrix must be non-degenerate");
  RingMatrix basis = ring_identity(r, n);
  HermGram cur = g;
  for (std::size_t s = n; s > 0; --s) {
    const std::size_t m = s - 1;
    RingMatrix fix = embed(r, homogeneous_fix(leading_block(cur, s)), n);
    cur = transform(cur, fix);
    basis = ring_mul(r, basis, fix);
    auto inv = r.inverse(cur.g[m][m]);
    verify(inv.has_value(), "pivot is not a unit after the fix");
    RingMatrix clear = ring_identity(r, n);
    bool any = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (cur.g[m][i] == r.zero()) continue;
      clear[m][i] = r.neg(r.mul(*inv, cur.g[m][i]));
      any = true;
    }
    if (!any) continue;
    cur = transform(cur, clear);
    basis = ring_mul(r, basis, clear);
  }
  verify(is_diagonal(cur), "Gram-Schmidt did not diagonalize");
  verify(transform(g, basis).g == cur.g, "diagonalizing basis does not reproduce the Gram matrix");
  verify(cur.is_nondegenerate(), "diagonal form is degenerate");
  return {cur, basis};
}

bool all_pairings_isometric(i64 p, i64 q, i64 k, i64 max_size) {
  require(is_prime(q), "q must be prime");
  require(q != p, "q must differ from p (the ramified case is not supported)");
  require(k >= 1, "k must be positive");
  i64 m = 1;
  for (i64 i = 0; i < k; ++i) {
    require(m < (i64(1) << 31) / q, "modulus too large");
    m *= q;
  }
  QuotRing r(p, m);
  NormTable table(r, max_size);
  const i64 total = *r.size();
  std::vector<QuotRing::Elem> values;
  for (i64 i = 0; i < total; ++i) {
    QuotRing::Elem x = r.element(i);
    if (r.is_fixed(x) && r.is_unit(x)) values.push_back(std::move(x));
  }
  for (const auto& v1 : values)
    for (const auto& v2 : values) {
      try {
        isometry_cyclic(v1, v2, table);
      } catch (const VerificationFailure&) {
        return false;
      }
    }
  return true;
}

namespace {

std::vector<Integer> apply_action(const EquivariantPairing& e, const std::vector<Integer>& x) {
  const std::size_t r = e.lk.rank();
  std::vector<Integer> y(r, Integer(0));
  for (std::size_t j = 0; j < r; ++j) {
    if (x[j] == 0) continue;
    for (std::size_t i = 0; i < r; ++i) y[i] += e.action(i, j) * x[j];
  }
  for (std::size_t i = 0; i < r; ++i) y[i] = mod_floor(y[i], e.lk.orders[i]);
  return y;
}

std::vector<Integer> unit_vector(std::size_t r, std::size_t i) {
  std::vector<Integer> v(r, Integer(0));
  v[i] = 1;
  return v;
}

}  // namespace

void EquivariantPairing::validate() const {
  lk.validate();
  const std::size_t r = lk.rank();
  require(action.rows() == r && action.cols() == r, "action matrix must match the module rank");
  require(n >= 1, "order of t must be positive");
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < r; ++i)
      require(divides(lk.orders[i], lk.orders[j] * action(i, j)), "action is not well defined on the module");
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<Integer> x = unit_vector(r, j);
    for (long k = 0; k < n; ++k) x = apply_action(*this, x);
    require(x == unit_vector(r, j), "t^n is not the identity");
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      auto ti = apply_action(*this, unit_vector(r, i));
      auto tj = apply_action(*this, unit_vector(r, j));
      require(lk.value(ti, tj) == lk.gram(i, j), "pairing is not equivariant");
    }
}

SesqTable sesquilinearize(const EquivariantPairing& e) {
  e.validate();
  const std::size_t r = e.lk.rank();
  const std::size_t n = std::size_t(e.n);
  SesqTable s(r, std::vector<std::vector<Rational>>(r, std::vector<Rational>(n, Rational(0))));
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Integer> x = unit_vector(r, i);
    for (std::size_t k = 1; k <= n; ++k) {
      x = apply_action(e, x);  // t^k g_i
      for (std::size_t j = 0; j < r; ++j) {
        Rational& slot = s[i][j][k % n];
        slot = frac_mod1(Rational(slot + e.lk.value(x, unit_vector(r, j))));
      }
    }
  }
  return s;
}

RationalMatrix recover_lk(const SesqTable& s) {
  const std::size_t r = s.size();
  RationalMatrix m(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      require(s[i][j].size() >= 1, "table entries need at least the constant coefficient");
      m(i, j) = s[i][j][0];
    }
  return m;
}

}  // namespace zslice
