#include "oracle.hpp"

#include <mutex>

#include "zslice/errors.hpp"
#include "zslice/numtheory.hpp"

namespace zslice::oracle {

namespace {

i64 modpow(i64 b, i64 e, i64 m) {
  __int128 r = 1, x = ((b % m) + m) % m;
  while (e > 0) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<i64>(r);
}

}  // namespace

int legendre_euler(i64 a, i64 p) {
  i64 r = modpow(a, (p - 1) / 2, p);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

int jacobi_by_factorization(i64 x, i64 y) {
  int result = 1;
  i64 rest = y;
  for (i64 d = 3; d * d <= rest; d += 2) {
    while (rest % d == 0) {
      result *= legendre_euler(x, d);
      rest /= d;
    }
  }
  if (rest > 1) result *= legendre_euler(x, rest);
  return result;
}

bool is_square_brute(i64 x, i64 q) {
  if (q == 1) return true;
  i64 r = ((x % q) + q) % q;
  for (i64 z = 0; z < q; ++z)
    if ((z * z) % q == r) return true;
  return false;
}

std::vector<std::uint32_t> self_value_histogram(const FinitePairing& p) {
  const std::size_t n = p.rank();
  const i64 e = n == 0 ? 1 : to_int64(p.exponent());
  std::vector<i64> ord(n);
  std::vector<std::vector<i64>> num(n, std::vector<i64>(n));
  for (std::size_t i = 0; i < n; ++i) {
    ord[i] = to_int64(p.orders[i]);
    for (std::size_t j = 0; j < n; ++j) {
      Rational v = p.gram(i, j) * Rational(e);
      verify(v.get_den() == 1, "pairing value denominator exceeds the exponent");
      num[i][j] = to_int64(v.get_num());
    }
  }
  std::vector<std::uint32_t> hist(static_cast<std::size_t>(e), 0);
  std::vector<i64> x(n, 0);
  while (true) {
    __int128 s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s += __int128(x[i]) * x[j] * num[i][j];
    hist[static_cast<std::size_t>(((s % e) + e) % e)] += 1;
    std::size_t k = 0;
    while (k < n && ++x[k] == ord[k]) x[k++] = 0;
    if (k == n) break;
  }
  return hist;
}

TwoByTwoCatalogue::TwoByTwoCatalogue(i64 q1, i64 q2, int u, long bound, bool odd) {
  const i64 order = q1 * q2;
  // det = sigma * q1 q2 with det = u (mod 4)
  const i64 det = (((order - u) % 4 + 4) % 4 == 0) ? order : -order;
  auto consider = [&](i64 a, i64 b, i64 c) {
    const bool is_odd = (a & 1) || (c & 1);
    if (is_odd != odd) return;
    if (gcd64(gcd64(a < 0 ? -a : a, b < 0 ? -b : b), c < 0 ? -c : c) != q1) return;
    ++candidates_;
    ExactMatrix m{{Integer(static_cast<long>(a)), Integer(static_cast<long>(b))},
                  {Integer(static_cast<long>(b)), Integer(static_cast<long>(c))}};
    FinitePairing p = pairing_from_matrix(m);
    auto key = self_value_histogram(p);
    auto& bucket = by_fingerprint_[key];
    for (std::size_t idx : bucket)
      if (isometry_search(reps_[idx].pairing, p, 10'000'000).has_value()) return;
    bucket.push_back(reps_.size());
    reps_.push_back({std::move(p), std::move(m)});
  };
  for (i64 a = -bound; a <= bound; ++a)
    for (i64 b = -bound; b <= bound; ++b) {
      if (a == 0) {
        if (-b * b != det) continue;
        for (i64 c = -bound; c <= bound; ++c) consider(a, b, c);
        continue;
      }
      const i64 top = det + b * b;
      if (top % a != 0) continue;
      const i64 c = top / a;
      if (c < -bound || c > bound) continue;
      consider(a, b, c);
    }
}

std::optional<ExactMatrix> TwoByTwoCatalogue::find(const FinitePairing& p) const {
  auto it = by_fingerprint_.find(self_value_histogram(p));
  if (it == by_fingerprint_.end()) return std::nullopt;
  for (std::size_t idx : it->second)
    if (isometry_search(p, reps_[idx].pairing, 10'000'000).has_value()) return reps_[idx].matrix;
  return std::nullopt;
}

std::optional<ExactMatrix> exhaustive_2x2_oracle(i64 a1, i64 q1, i64 a2, i64 q2, int u, long bound, bool odd) {
  using Key = std::tuple<i64, i64, int, long, bool>;
  static std::map<Key, TwoByTwoCatalogue> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  Key key{q1, q2, u, bound, odd};
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, TwoByTwoCatalogue(q1, q2, u, bound, odd)).first;
  FinitePairing target = rebuild({{Integer(static_cast<long>(q1)), Integer(static_cast<long>(a1))},
                                  {Integer(static_cast<long>(q2)), Integer(static_cast<long>(a2))}});
  return it->second.find(target);
}

LambdaMatrix random_hermitian(std::mt19937_64& rng, std::size_t n, bool even) {
  require(n >= 2 && (!even || n % 2 == 0), "bad size for a random Hermitian matrix");
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const LaurentPoly t = LaurentPoly::t(), tinv = LaurentPoly::monomial(1, -1);
  const LaurentPoly x = LaurentPoly(2) - t - tinv;

  LambdaMatrix d(n, n);
  if (even) {
    for (std::size_t i = 0; i < n; i += 2) d(i, i + 1) = d(i + 1, i) = LaurentPoly(1);
  } else {
    d(0, 0) = LaurentPoly(1);
    d(1, 1) = LaurentPoly(-1);
    for (std::size_t i = 2; i < n; ++i) d(i, i) = LaurentPoly(pick(0, 1) ? 1 : -1);
  }
  LambdaMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    p(i, i) = LaurentPoly(pick(-2, 2)) + LaurentPoly(pick(-1, 1)) * (t + tinv);
    for (std::size_t j = i + 1; j < n; ++j) {
      p(i, j) = LaurentPoly(pick(-2, 2)) + LaurentPoly(pick(-1, 1)) * t + LaurentPoly(pick(-1, 1)) * tinv;
      p(j, i) = p(i, j).involute();
    }
  }
  LambdaMatrix a = d;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) += x * p(i, j);

  LambdaMatrix tm = LambdaMatrix::identity(n);
  const int moves = pick(1, int(n) + 2);
  for (int k = 0; k < moves; ++k) {
    std::size_t i = std::size_t(pick(0, int(n) - 1)), j = std::size_t(pick(0, int(n) - 1));
    if (i == j) continue;
    int c = pick(-2, 2);
    if (c == 0) c = 1;
    tm.add_col(j, i, LaurentPoly::monomial(c, pick(-1, 1)));
  }
  LambdaMatrix out = conj_transpose(tm) * a * tm;
  verify(is_hermitian(out), "random Hermitian construction is not Hermitian");
  return out;
}

ExactMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int moves) {
  ExactMatrix u = ExactMatrix::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  for (int k = 0; k < moves; ++k) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    u.add_col(j, i, Integer((rng() & 1) ? 1 : -1));
  }
  return u;
}

}  // namespace zslice::oracle
