#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace zslice {

using i64 = std::int64_t;

i64 mul_mod(i64 a, i64 b, i64 m);
i64 pow_mod(i64 b, i64 e, i64 m);
/// Inverse of a modulo m; nullopt unless gcd(a, m) = 1.
std::optional<i64> inverse_mod(i64 a, i64 m);
i64 gcd64(i64 a, i64 b);

bool is_prime(i64 n);
/// Prime factorization by trial division: (prime, exponent) ascending.
std::vector<std::pair<i64, int>> factorize(i64 n);

/// Jacobi symbol (x | y) for odd y >= 1, by the binary algorithm with
/// quadratic reciprocity.
int jacobi(i64 x, i64 y);

/// Is x a square modulo q (q odd, q >= 1)?
bool is_square_mod(i64 x, i64 q);

/// Some z with z^2 = x mod p for an odd prime p, x a nonzero square mod p.
i64 sqrt_mod_prime(i64 x, i64 p);
/// Square root of a unit x modulo an odd modulus q; nullopt if none.
std::optional<i64> sqrt_mod(i64 x, i64 q);

/// (-1)^((q1q2 - u)/2) for odd q1q2 and u = +-1.
int sign_power(i64 q1q2, int u);

}  // namespace zslice
