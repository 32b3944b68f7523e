#include "zslice/numtheory.hpp"

#include "zslice/errors.hpp"
#include "zslice/integer.hpp"

namespace zslice {

i64 mul_mod(i64 a, i64 b, i64 m) {
  __int128 r = static_cast<__int128>(a) * b % m;
  if (r < 0) r += m;
  return static_cast<i64>(r);
}

i64 pow_mod(i64 b, i64 e, i64 m) {
  require(e >= 0, "negative exponent in pow_mod");
  i64 r = 1 % m;
  b = mod_floor(b, m);
  while (e > 0) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

i64 gcd64(i64 a, i64 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::optional<i64> inverse_mod(i64 a, i64 m) {
  if (m == 1) return 0;
  i64 old_r = mod_floor(a, m), r = m;
  i64 old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    i64 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) return std::nullopt;
  return mod_floor(old_s, m);
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  if (n < 1'000'000) {
    for (i64 d = 3; d * d <= n; d += 2)
      if (n % d == 0) return false;
    return true;
  }
  return mpz_probab_prime_p(Integer(static_cast<long>(n)).get_mpz_t(), 40) != 0;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
  require(n >= 1, "factorize needs a positive integer");
  std::vector<std::pair<i64, int>> out;
  for (i64 d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

int jacobi(i64 x, i64 y) {
  require(y >= 1 && (y & 1), "Jacobi symbol needs an odd positive modulus");
  i64 a = mod_floor(x, y);
  i64 n = y;
  int result = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      i64 r = n & 7;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

bool is_square_mod(i64 x, i64 q) {
  require(q >= 1 && (q & 1), "is_square_mod needs an odd positive modulus");
  if (q == 1) return true;
  for (auto [p, e] : factorize(q)) {
    i64 pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    i64 r = mod_floor(x, pe);
    if (r == 0) continue;
    int v = 0;
    while (r % p == 0) {
      r /= p;
      ++v;
    }
    if (v % 2) return false;
    if (jacobi(r, p) != 1) return false;
  }
  return true;
}

i64 sqrt_mod_prime(i64 x, i64 p) {
  x = mod_floor(x, p);
  require(x != 0 && jacobi(x, p) == 1, "not a nonzero square residue");
  if (p % 4 == 3) return pow_mod(x, (p + 1) / 4, p);
  // Tonelli-Shanks
  i64 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  i64 z = 2;
  while (jacobi(z, p) != -1) ++z;
  i64 m = s;
  i64 c = pow_mod(z, q, p);
  i64 t = pow_mod(x, q, p);
  i64 r = pow_mod(x, (q + 1) / 2, p);
  while (t != 1) {
    i64 i = 0, tt = t;
    while (tt != 1) {
      tt = mul_mod(tt, tt, p);
      ++i;
    }
    i64 b = c;
    for (i64 j = 0; j < m - i - 1; ++j) b = mul_mod(b, b, p);
    m = i;
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    r = mul_mod(r, b, p);
  }
  return r;
}

std::optional<i64> sqrt_mod(i64 x, i64 q) {
  require(q >= 1 && (q & 1), "sqrt_mod needs an odd positive modulus");
  if (q == 1) return 0;
  require(gcd64(x, q) == 1, "sqrt_mod needs a unit");
  i64 acc = 0, mod = 1;
  for (auto [p, e] : factorize(q)) {
    if (jacobi(x, p) != 1) return std::nullopt;
    i64 z = sqrt_mod_prime(x, p);
    i64 pk = p;
    // Hensel: z <- z - (z^2 - x) / (2z) mod p^(k+1)
    for (int k = 1; k < e; ++k) {
      i64 next = pk * p;
      i64 f = mod_floor(mul_mod(z, z, next) - mod_floor(x, next), next);
      i64 inv = *inverse_mod(mul_mod(2, z, next), next);
      z = mod_floor(z - mul_mod(f, inv, next), next);
      pk = next;
    }
    // CRT merge of acc mod `mod` with z mod pk.
    i64 inv = *inverse_mod(mod % pk, pk);
    i64 h = mul_mod(mod_floor(z - acc, pk), inv, pk);
    acc += mod * h;
    mod *= pk;
    acc = mod_floor(acc, mod);
  }
  return acc;
}

int sign_power(i64 q1q2, int u) {
  require(u == 1 || u == -1, "u must be +-1");
  require(q1q2 & 1, "q1 q2 must be odd");
  i64 diff = mod_floor(q1q2 - u, i64(4));
  return diff == 2 ? -1 : 1;
}

}  // namespace zslice
