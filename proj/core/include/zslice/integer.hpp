#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace zslice {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool fits_int64(const Integer& x) {
  return mpz_fits_slong_p(x.get_mpz_t()) != 0;
}

std::int64_t to_int64(const Integer& x);

/// Least non-negative residue of x modulo m (m > 0).
inline Integer mod_floor(const Integer& x, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline std::int64_t mod_floor(std::int64_t x, std::int64_t m) {
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline bool divides(const Integer& d, const Integer& x) {
  if (d == 0) return x == 0;
  return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
}

/// Fractional part of q, reduced into [0, 1).
Rational frac_mod1(const Rational& q);

std::string to_string(const Integer& x);
std::string to_string(const Rational& q);

}  // namespace zslice
