#include "zslice/cyclo.hpp"

#include <mpfr.h>

#include <numeric>

#include "zslice/errors.hpp"

namespace zslice {

namespace {

// Exact quotient of integer polynomials, b monic.
std::vector<Integer> poly_div(std::vector<Integer> a, const std::vector<Integer>& b) {
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return {};
  std::vector<Integer> q(a.size() - db, Integer(0));
  for (std::size_t i = a.size(); i-- > db;) {
    Integer c = a[i];
    q[i - db] = c;
    for (std::size_t k = 0; k <= db; ++k) a[i - db + k] -= c * b[k];
  }
  for (std::size_t i = 0; i < db; ++i) verify(a[i] == 0, "cyclotomic division left a remainder");
  return q;
}

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace

std::vector<Integer> cyclotomic_polynomial(long n) {
  require(n >= 1, "cyclotomic index must be positive");
  std::vector<Integer> p(std::size_t(n) + 1, Integer(0));
  p[0] = -1;
  p[std::size_t(n)] = 1;
  for (long d = 1; d < n; ++d)
    if (n % d == 0) p = poly_div(p, cyclotomic_polynomial(d));
  return p;
}

CyclotomicField::CyclotomicField(long n) : n_(n), phi_(cyclotomic_polynomial(n)) {}

CyclotomicField::Elem CyclotomicField::reduce(std::vector<Rational> c) const {
  const std::size_t d = degree();
  for (std::size_t i = c.size(); i-- > d;) {
    if (c[i] == 0) continue;
    Rational top = c[i];
    for (std::size_t k = 0; k <= d; ++k) c[i - d + k] -= top * Rational(phi_[k]);
  }
  c.resize(d, Rational(0));
  return c;
}

CyclotomicField::Elem CyclotomicField::from_int(long c) const {
  Elem e = zero();
  if (degree() > 0) e[0] = c;
  return e;
}

CyclotomicField::Elem CyclotomicField::zeta_pow(long k) const {
  long e = ((k % n_) + n_) % n_;
  std::vector<Rational> c(std::size_t(e) + 1, Rational(0));
  c[std::size_t(e)] = 1;
  return reduce(std::move(c));
}

CyclotomicField::Elem CyclotomicField::add(const Elem& a, const Elem& b) const {
  Elem r(degree());
  for (std::size_t i = 0; i < degree(); ++i) r[i] = a[i] + b[i];
  return r;
}

CyclotomicField::Elem CyclotomicField::sub(const Elem& a, const Elem& b) const {
  Elem r(degree());
  for (std::size_t i = 0; i < degree(); ++i) r[i] = a[i] - b[i];
  return r;
}

CyclotomicField::Elem CyclotomicField::scale(const Elem& a, const Rational& c) const {
  Elem r(degree());
  for (std::size_t i = 0; i < degree(); ++i) r[i] = a[i] * c;
  return r;
}

CyclotomicField::Elem CyclotomicField::mul(const Elem& a, const Elem& b) const {
  const std::size_t d = degree();
  std::vector<Rational> c(2 * d, Rational(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j)
      if (b[j] != 0) c[i + j] += a[i] * b[j];
  }
  return reduce(std::move(c));
}

CyclotomicField::Elem CyclotomicField::conj(const Elem& a) const {
  Elem r = zero();
  for (std::size_t i = 0; i < degree(); ++i)
    if (a[i] != 0) r = add(r, scale(zeta_pow(-long(i)), a[i]));
  return r;
}

bool CyclotomicField::is_zero(const Elem& a) const {
  for (const auto& c : a)
    if (c != 0) return false;
  return true;
}

CyclotomicField::Elem CyclotomicField::inverse(const Elem& a) const {
  require(!is_zero(a), "inverse of zero");
  // Solve (multiplication by a) y = 1 by Gaussian elimination over Q.
  const std::size_t d = degree();
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1, Rational(0)));
  for (std::size_t j = 0; j < d; ++j) {
    Elem basis = zero();
    basis[j] = 1;
    Elem col = mul(a, basis);
    for (std::size_t i = 0; i < d; ++i) m[i][j] = col[i];
  }
  m[0][d] = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    while (piv < d && m[piv][c] == 0) ++piv;
    verify(piv < d, "nonzero field element has a singular multiplication matrix");
    std::swap(m[piv], m[c]);
    Rational inv = 1 / m[c][c];
    for (std::size_t k = c; k <= d; ++k) m[c][k] *= inv;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Rational f = m[r][c];
      for (std::size_t k = c; k <= d; ++k) m[r][k] -= f * m[c][k];
    }
  }
  Elem y(d);
  for (std::size_t i = 0; i < d; ++i) y[i] = m[i][d];
  verify(mul(a, y) == from_int(1), "field inverse check failed");
  return y;
}

int CyclotomicField::real_sign(const Elem& a, long j) const {
  require(std::gcd(j, n_) == 1, "embedding index must be coprime to n");
  verify(conj(a) == a, "sign requested for a non-real element");
  if (is_zero(a)) return 0;
  for (mpfr_prec_t prec = 128; prec <= 1024; prec *= 2) {
    Mpfr sum(prec), term(prec), angle(prec), coef(prec), bound(prec), tmp(prec);
    mpfr_set_zero(sum.get(), 1);
    mpfr_set_zero(bound.get(), 1);
    for (std::size_t i = 0; i < degree(); ++i) {
      if (a[i] == 0) continue;
      // cos(2 pi i j / n)
      mpfr_const_pi(angle.get(), MPFR_RNDN);
      mpfr_mul_si(angle.get(), angle.get(), 2 * long(i) * j, MPFR_RNDN);
      mpfr_div_si(angle.get(), angle.get(), n_, MPFR_RNDN);
      mpfr_cos(term.get(), angle.get(), MPFR_RNDN);
      mpfr_set_q(coef.get(), a[i].get_mpq_t(), MPFR_RNDN);
      mpfr_mul(term.get(), term.get(), coef.get(), MPFR_RNDN);
      mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
      mpfr_abs(tmp.get(), coef.get(), MPFR_RNDU);
      mpfr_add(bound.get(), bound.get(), tmp.get(), MPFR_RNDU);
    }
    // Each term carries error below |c_i| * (|angle| + 4) ulp-scale units;
    // bound generously by (sum |c_i|) * (8 n + 16 d) * 2^-prec.
    mpfr_mul_ui(bound.get(), bound.get(), 8 * std::size_t(n_) + 16 * degree(), MPFR_RNDU);
    mpfr_mul_2si(bound.get(), bound.get(), -long(prec), MPFR_RNDU);
    mpfr_abs(tmp.get(), sum.get(), MPFR_RNDN);
    if (mpfr_greater_p(tmp.get(), bound.get())) return mpfr_sgn(sum.get()) > 0 ? 1 : -1;
  }
  throw BudgetExceeded("sign of a real cyclotomic element not certified at 1024 bits");
}

std::optional<std::vector<long>> hermitian_signatures(const CyclotomicField& k, CycloMatrix m,
                                                      const std::vector<long>& js) {
  std::vector<long> sig(js.size(), 0);
  std::size_t n = m.size();
  for (const auto& row : m) require(row.size() == n, "matrix must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      require(m[j][i] == k.conj(m[i][j]), "matrix must be Hermitian");

  std::vector<std::size_t> alive(n);
  std::iota(alive.begin(), alive.end(), 0);
  while (!alive.empty()) {
    std::size_t piv = alive.size();
    for (std::size_t a = 0; a < alive.size(); ++a)
      if (!k.is_zero(m[alive[a]][alive[a]])) {
        piv = a;
        break;
      }
    if (piv == alive.size()) {
      // Zero diagonal: g_i += conj(m_ij) g_j makes m_ii = 2 |m_ij|^2.
      std::size_t ia = alive.size(), jb = 0;
      for (std::size_t a = 0; a < alive.size() && ia == alive.size(); ++a)
        for (std::size_t b = 0; b < alive.size(); ++b)
          if (!k.is_zero(m[alive[a]][alive[b]])) {
            ia = a;
            jb = b;
            break;
          }
      if (ia == alive.size()) return std::nullopt;  // zero block: singular
      const std::size_t i = alive[ia], j = alive[jb];
      CyclotomicField::Elem lam = k.conj(m[i][j]);
      CyclotomicField::Elem lam_bar = m[i][j];
      for (std::size_t r : alive) m[r][i] = k.add(m[r][i], k.mul(m[r][j], lam));
      for (std::size_t c : alive) m[i][c] = k.add(m[i][c], k.mul(lam_bar, m[j][c]));
      verify(!k.is_zero(m[i][i]), "hyperbolic pivot is zero");
      piv = ia;
    }
    const std::size_t p = alive[piv];
    const CyclotomicField::Elem d = m[p][p];
    for (std::size_t e = 0; e < js.size(); ++e) sig[e] += k.real_sign(d, js[e]);
    CyclotomicField::Elem dinv = k.inverse(d);
    alive.erase(alive.begin() + std::ptrdiff_t(piv));
    for (std::size_t r : alive) {
      if (k.is_zero(m[r][p])) continue;
      CyclotomicField::Elem f = k.mul(m[r][p], dinv);
      for (std::size_t c : alive) m[r][c] = k.sub(m[r][c], k.mul(f, m[p][c]));
    }
  }
  return sig;
}

}  // namespace zslice
