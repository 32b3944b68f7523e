#pragma once

#include <optional>
#include <vector>

#include "zslice/integer.hpp"

namespace zslice {

/// Q(zeta_n) with basis 1, zeta, ..., zeta^(phi(n)-1).
class CyclotomicField {
 public:
  using Elem = std::vector<Rational>;

  explicit CyclotomicField(long n);

  long n() const { return n_; }
  std::size_t degree() const { return phi_.size() - 1; }
  /// Coefficients of Phi_n, constant term first.
  const std::vector<Integer>& modulus() const { return phi_; }

  Elem zero() const { return Elem(degree(), Rational(0)); }
  Elem from_int(long c) const;
  Elem zeta_pow(long k) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem scale(const Elem& a, const Rational& c) const;
  Elem conj(const Elem& a) const;
  Elem inverse(const Elem& a) const;  // a != 0
  bool is_zero(const Elem& a) const;

  /// Sign of a real element under zeta -> exp(2 pi i j / n), gcd(j, n) = 1.
  /// Evaluated with MPFR, doubling precision from 128 to 1024 bits until the
  /// error bound separates the value from zero. Throws BudgetExceeded if it
  /// never does and VerificationFailure for a non-real element.
  int real_sign(const Elem& a, long j) const;

 private:
  Elem reduce(std::vector<Rational> c) const;

  long n_;
  std::vector<Integer> phi_;
};

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
std::vector<Integer> cyclotomic_polynomial(long n);

using CycloMatrix = std::vector<std::vector<CyclotomicField::Elem>>;

/// Signatures of a Hermitian matrix over Q(zeta_n) under each embedding
/// zeta -> exp(2 pi i j / n), j in js. Exact elimination, certified signs.
/// Returns nullopt if the matrix is singular.
std::optional<std::vector<long>> hermitian_signatures(const CyclotomicField& k, CycloMatrix m,
                                                      const std::vector<long>& js);

}  // namespace zslice
