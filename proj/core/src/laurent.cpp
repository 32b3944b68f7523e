#include "zslice/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "zslice/errors.hpp"

namespace zslice {

LaurentPoly::LaurentPoly(const Integer& c) {
  if (c != 0) c_.push_back(c);
}

LaurentPoly LaurentPoly::monomial(const Integer& c, long e) {
  LaurentPoly p(c);
  if (!p.is_zero()) p.lo_ = e;
  return p;
}

LaurentPoly LaurentPoly::from_coeffs(long lo, std::vector<Integer> coeffs) {
  LaurentPoly p;
  p.lo_ = lo;
  p.c_ = std::move(coeffs);
  p.normalize();
  return p;
}

void LaurentPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  std::size_t z = 0;
  while (z < c_.size() && c_[z] == 0) ++z;
  if (z > 0) {
    c_.erase(c_.begin(), c_.begin() + long(z));
    lo_ += long(z);
  }
  if (c_.empty()) lo_ = 0;
}

Integer LaurentPoly::coeff(long e) const {
  if (c_.empty() || e < lo_ || e > high()) return 0;
  return c_[std::size_t(e - lo_)];
}

LaurentPoly LaurentPoly::involute() const {
  LaurentPoly r;
  if (c_.empty()) return r;
  r.c_.assign(c_.rbegin(), c_.rend());
  r.lo_ = -high();
  return r;
}

LaurentPoly LaurentPoly::shifted(long k) const {
  LaurentPoly r = *this;
  if (!r.c_.empty()) r.lo_ += k;
  return r;
}

LaurentPoly LaurentPoly::substitute_power(long w) const {
  if (c_.empty()) return {};
  if (w == 0) return LaurentPoly(eval_at_pm1(1));
  LaurentPoly r;
  for (std::size_t i = 0; i < c_.size(); ++i)
    r += monomial(c_[i], (lo_ + long(i)) * w);
  return r;
}

Integer LaurentPoly::eval_at_pm1(int sign) const {
  Integer s = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    long e = lo_ + long(i);
    bool neg = sign < 0 && (e % 2 != 0);
    if (neg)
      s -= c_[i];
    else
      s += c_[i];
  }
  return s;
}

Rational LaurentPoly::eval(const Rational& x) const {
  if (c_.empty()) return 0;
  require(x != 0 || lo_ >= 0, "evaluating a Laurent polynomial at 0");
  // Horner on the polynomial part, then the t^lo factor.
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rational(*it);
  Rational pw = 1;
  Rational base = lo_ >= 0 ? x : Rational(1 / x);
  for (long i = 0; i < (lo_ >= 0 ? lo_ : -lo_); ++i) pw *= base;
  Rational r = acc * pw;
  r.canonicalize();
  return r;
}

bool LaurentPoly::is_unit() const {
  return c_.size() == 1 && (c_[0] == 1 || c_[0] == -1);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.c_.empty()) return *this;
  if (c_.empty()) return *this = o;
  long lo = std::min(lo_, o.lo_);
  long hi = std::max(high(), o.high());
  std::vector<Integer> out(std::size_t(hi - lo + 1), Integer(0));
  for (std::size_t i = 0; i < c_.size(); ++i) out[std::size_t(lo_ - lo) + i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) out[std::size_t(o.lo_ - lo) + i] += o.c_[i];
  lo_ = lo;
  c_ = std::move(out);
  normalize();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  std::vector<Integer> out(a.c_.size() + b.c_.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return LaurentPoly::from_coeffs(a.lo_ + b.lo_, std::move(out));
}

LaurentPoly operator-(const LaurentPoly& a) {
  LaurentPoly r = a;
  for (auto& x : r.c_) x = -x;
  return r;
}

std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
  require(!b.is_zero(), "division by zero polynomial");
  if (a.is_zero()) return LaurentPoly();
  // Long division from the top coefficient, on exponent-shifted copies.
  std::vector<Integer> rem = a.coeffs();
  const std::vector<Integer>& d = b.coeffs();
  if (rem.size() < d.size()) return std::nullopt;
  std::vector<Integer> q(rem.size() - d.size() + 1, Integer(0));
  const Integer& lead = d.back();
  for (std::size_t s = q.size(); s-- > 0;) {
    Integer& top = rem[s + d.size() - 1];
    if (top == 0) continue;
    if (!divides(lead, top)) return std::nullopt;
    Integer c;
    mpz_divexact(c.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
    q[s] = c;
    for (std::size_t j = 0; j < d.size(); ++j) rem[s + j] -= c * d[j];
  }
  for (const auto& r : rem)
    if (r != 0) return std::nullopt;
  return LaurentPoly::from_coeffs(a.low() - b.low(), std::move(q));
}

std::string to_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long e = p.low(); e <= p.high(); ++e) {
    Integer c = p.coeff(e);
    if (c == 0) continue;
    bool neg = c < 0;
    Integer a = neg ? Integer(-c) : c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (e == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << '*';
    os << 't';
    if (e != 1) os << '^' << e;
  }
  return os.str();
}

LaurentPoly parse_laurent(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  require(!s.empty(), "empty polynomial");
  std::size_t i = 0;
  auto digits = [&](std::string& out) {
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) out.push_back(s[i++]);
  };
  auto fail = [&](const std::string& why) {
    throw InputError("bad polynomial '" + text + "' at offset " + std::to_string(i) + ": " + why);
  };
  LaurentPoly out;
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      fail("expected + or -");
    }
    first = false;
    std::string num;
    digits(num);
    Integer c = num.empty() ? Integer(1) : Integer(num);
    long e = 0;
    bool has_t = false;
    if (i < s.size() && s[i] == '*') {
      if (num.empty()) fail("'*' without coefficient");
      ++i;
      if (i >= s.size() || s[i] != 't') fail("expected t after *");
    }
    if (i < s.size() && s[i] == 't') {
      has_t = true;
      ++i;
      e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        int esign = 1;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
          esign = s[i] == '-' ? -1 : 1;
          ++i;
        }
        std::string ed;
        digits(ed);
        if (ed.empty()) fail("missing exponent");
        e = esign * std::stol(ed);
      }
    }
    if (num.empty() && !has_t) fail("empty term");
    out += LaurentPoly::monomial(sign * c, e);
  }
  return out;
}

LaurentPoly one_minus_t_pow(long k) {
  LaurentPoly base = LaurentPoly(1) - LaurentPoly::t();
  LaurentPoly r(1);
  for (long i = 0; i < k; ++i) r *= base;
  return r;
}

Lambda0Scalar::Lambda0Scalar(LaurentPoly num, long k) : num_(std::move(num)), k_(k) {
  require(k >= 0, "negative (1-t) exponent");
  canonicalize();
}

void Lambda0Scalar::canonicalize() {
  if (num_.is_zero()) {
    k_ = 0;
    return;
  }
  const LaurentPoly base = LaurentPoly(1) - LaurentPoly::t();
  while (k_ > 0 && num_.eval_at_pm1(1) == 0) {
    auto q = divide_exact(num_, base);
    verify(q.has_value(), "(1-t) fails to divide a polynomial vanishing at 1");
    num_ = *q;
    --k_;
  }
}

Lambda0Scalar Lambda0Scalar::involute() const {
  // 1/(1-t^-1) = -t/(1-t)
  LaurentPoly n = num_.involute();
  if (k_ > 0) n *= LaurentPoly::monomial((k_ % 2 == 0) ? 1 : -1, k_);
  return {n, k_};
}

Lambda0Scalar& Lambda0Scalar::operator+=(const Lambda0Scalar& o) {
  long k = std::max(k_, o.k_);
  LaurentPoly n = num_ * one_minus_t_pow(k - k_) + o.num_ * one_minus_t_pow(k - o.k_);
  *this = Lambda0Scalar(std::move(n), k);
  return *this;
}

Lambda0Scalar& Lambda0Scalar::operator-=(const Lambda0Scalar& o) { return *this += -o; }

Lambda0Scalar& Lambda0Scalar::operator*=(const Lambda0Scalar& o) {
  *this = Lambda0Scalar(num_ * o.num_, k_ + o.k_);
  return *this;
}

std::string to_string(const Lambda0Scalar& s) {
  if (s.k() == 0) return to_string(s.num());
  return "(" + to_string(s.num()) + ")/(1 - t)^" + std::to_string(s.k());
}

LambdaMatrix conj_transpose(const LambdaMatrix& a) {
  LambdaMatrix r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j).involute();
  return r;
}

Lambda0Matrix conj_transpose(const Lambda0Matrix& a) {
  Lambda0Matrix r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j).involute();
  return r;
}

bool is_hermitian(const LambdaMatrix& a) { return a.square() && conj_transpose(a) == a; }

LaurentPoly determinant(const LambdaMatrix& a_in) {
  require(a_in.square(), "determinant of non-square matrix");
  const std::size_t n = a_in.rows();
  if (n == 0) return 1;
  LambdaMatrix a = a_in;
  bool negate = false;
  LaurentPoly prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a(p, k).is_zero()) ++p;
      if (p == n) return {};
      a.swap_rows(k, p);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        LaurentPoly v = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        auto q = divide_exact(v, prev);
        verify(q.has_value(), "Bareiss division over Lambda was not exact");
        a(i, j) = std::move(*q);
      }
      a(i, k) = LaurentPoly();
    }
    prev = a(k, k);
  }
  return negate ? -a(n - 1, n - 1) : a(n - 1, n - 1);
}

Lambda0Scalar determinant(const Lambda0Matrix& a) {
  require(a.square(), "determinant of non-square matrix");
  long kmax = 0;
  for (const auto& x : a.data()) kmax = std::max(kmax, x.k());
  LambdaMatrix cleared(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      cleared(i, j) = a(i, j).num() * one_minus_t_pow(kmax - a(i, j).k());
  return {determinant(cleared), kmax * long(a.rows())};
}

LambdaMatrix lift(const ExactMatrix& a) {
  return a.map<LaurentPoly>([](const Integer& x) { return LaurentPoly(x); });
}

Lambda0Matrix lift0(const LambdaMatrix& a) {
  return a.map<Lambda0Scalar>([](const LaurentPoly& x) { return Lambda0Scalar(x); });
}

Lambda0Matrix lift0(const ExactMatrix& a) { return lift0(lift(a)); }

std::optional<LambdaMatrix> to_lambda(const Lambda0Matrix& a) {
  LambdaMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!a(i, j).in_lambda()) return std::nullopt;
      r(i, j) = a(i, j).num();
    }
  return r;
}

ExactMatrix eval_at_pm1(const LambdaMatrix& a, int sign) {
  return a.map<Integer>([sign](const LaurentPoly& x) { return x.eval_at_pm1(sign); });
}

LambdaMatrix substitute_power(const LambdaMatrix& a, long w) {
  return a.map<LaurentPoly>([w](const LaurentPoly& x) { return x.substitute_power(w); });
}

Lambda0Matrix congruence(const LambdaMatrix& a, const Lambda0Matrix& t) {
  require(a.square() && a.cols() == t.rows(), "congruence shape mismatch");
  return conj_transpose(t) * lift0(a) * t;
}

LaurentPoly alexander_from_seifert(const ExactMatrix& v) {
  require(v.square(), "Seifert matrix must be square");
  const std::size_t n = v.rows();
  if (n == 0) return 1;
  LambdaMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = LaurentPoly::monomial(v(i, j), 1) - LaurentPoly(v(j, i));
  LaurentPoly d = determinant(m);
  require(!d.is_zero(), "det(tV - V^T) vanishes: not a knot Seifert matrix");
  require((d.low() + d.high()) % 2 == 0,
          "det(tV - V^T) cannot be made symmetric: not a knot Seifert matrix");
  d = d.shifted(-(d.low() + d.high()) / 2);
  Integer at1 = d.eval_at_pm1(1);
  require(at1 == 1 || at1 == -1,
          "det(tV - V^T) at t=1 is " + at1.get_str() + ", expected +-1: not a knot Seifert matrix");
  if (at1 == -1) d = -d;
  require(d.is_symmetric(), "normalized Alexander polynomial is not symmetric");
  return d;
}

std::string to_string(const LambdaMatrix& a) {
  std::ostringstream os;
  os << a.rows() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) os << "; ";
      os << to_string(a(i, j));
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace zslice
