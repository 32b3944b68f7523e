#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zslice/exactmat.hpp"
#include "zslice/integer.hpp"
#include "zslice/matrix.hpp"

namespace zslice {

/// Element of Z[t, t^-1]. Stored densely from the lowest exponent; the zero
/// polynomial has no coefficients. No leading or trailing zeros are kept.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(int c) : LaurentPoly(Integer(c)) {}  // NOLINT
  LaurentPoly(const Integer& c);                   // NOLINT

  static LaurentPoly monomial(const Integer& c, long e);
  static LaurentPoly t() { return monomial(1, 1); }
  static LaurentPoly from_coeffs(long lo, std::vector<Integer> coeffs);

  bool is_zero() const { return c_.empty(); }
  long low() const { return lo_; }
  long high() const { return lo_ + long(c_.size()) - 1; }
  /// high - low, or -1 for zero.
  long span() const { return long(c_.size()) - 1; }
  Integer coeff(long e) const;
  const std::vector<Integer>& coeffs() const { return c_; }

  LaurentPoly involute() const;
  LaurentPoly shifted(long k) const;  // times t^k
  LaurentPoly substitute_power(long w) const;
  Integer eval_at_pm1(int sign) const;
  Rational eval(const Rational& x) const;

  bool is_symmetric() const { return *this == involute(); }
  /// +-t^k
  bool is_unit() const;
  /// Constant polynomial?
  bool is_constant() const { return c_.size() <= 1 && (c_.empty() || lo_ == 0); }

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.lo_ == b.lo_ && a.c_ == b.c_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

 private:
  void normalize();

  long lo_ = 0;
  std::vector<Integer> c_;
};

/// a / b when b divides a in Z[t^{+-1}], otherwise nullopt.
std::optional<LaurentPoly> divide_exact(const LaurentPoly& a, const LaurentPoly& b);

std::string to_string(const LaurentPoly& p);
/// Grammar: c, c*t^e, t^e, t with +/- separators; whitespace ignored.
LaurentPoly parse_laurent(const std::string& text);

/// num / (1-t)^k, an element of Z[t^{+-1}, (1-t)^-1]. Canonical: if k > 0
/// then (1-t) does not divide num.
class Lambda0Scalar {
 public:
  Lambda0Scalar() = default;
  Lambda0Scalar(int c) : num_(c) {}                   // NOLINT
  Lambda0Scalar(const LaurentPoly& p) : num_(p) {}    // NOLINT
  Lambda0Scalar(LaurentPoly num, long k);

  const LaurentPoly& num() const { return num_; }
  long k() const { return k_; }
  bool in_lambda() const { return k_ == 0; }
  bool is_zero() const { return num_.is_zero(); }
  Lambda0Scalar involute() const;

  Lambda0Scalar& operator+=(const Lambda0Scalar& o);
  Lambda0Scalar& operator-=(const Lambda0Scalar& o);
  Lambda0Scalar& operator*=(const Lambda0Scalar& o);
  friend Lambda0Scalar operator+(Lambda0Scalar a, const Lambda0Scalar& b) { return a += b; }
  friend Lambda0Scalar operator-(Lambda0Scalar a, const Lambda0Scalar& b) { return a -= b; }
  friend Lambda0Scalar operator*(Lambda0Scalar a, const Lambda0Scalar& b) { return a *= b; }
  friend Lambda0Scalar operator-(const Lambda0Scalar& a) { return {-a.num_, a.k_}; }
  friend bool operator==(const Lambda0Scalar& a, const Lambda0Scalar& b) {
    return a.k_ == b.k_ && a.num_ == b.num_;
  }
  friend bool operator!=(const Lambda0Scalar& a, const Lambda0Scalar& b) { return !(a == b); }

 private:
  void canonicalize();

  LaurentPoly num_;
  long k_ = 0;
};

std::string to_string(const Lambda0Scalar& s);

/// (1-t)^k
LaurentPoly one_minus_t_pow(long k);

using LambdaMatrix = Matrix<LaurentPoly>;
using Lambda0Matrix = Matrix<Lambda0Scalar>;

LambdaMatrix conj_transpose(const LambdaMatrix& a);
Lambda0Matrix conj_transpose(const Lambda0Matrix& a);
bool is_hermitian(const LambdaMatrix& a);

LaurentPoly determinant(const LambdaMatrix& a);
Lambda0Scalar determinant(const Lambda0Matrix& a);

LambdaMatrix lift(const ExactMatrix& a);
Lambda0Matrix lift0(const LambdaMatrix& a);
Lambda0Matrix lift0(const ExactMatrix& a);
/// Entrywise in Lambda, or nullopt if some entry keeps a (1-t) denominator.
std::optional<LambdaMatrix> to_lambda(const Lambda0Matrix& a);

ExactMatrix eval_at_pm1(const LambdaMatrix& a, int sign);
LambdaMatrix substitute_power(const LambdaMatrix& a, long w);

/// conj(t)^T * a * t, computed in Lambda0.
Lambda0Matrix congruence(const LambdaMatrix& a, const Lambda0Matrix& t);

/// Alexander polynomial from det(t*V - V^T), normalized to be symmetric with
/// value 1 at t = 1. Throws InputError when V is not a knot Seifert matrix.
LaurentPoly alexander_from_seifert(const ExactMatrix& v);

std::string to_string(const LambdaMatrix& a);

}  // namespace zslice
