#include "zslice/bounds.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "zslice/errors.hpp"

namespace zslice {

std::string to_string(BoundTag t) {
  switch (t) {
    case BoundTag::COR53_i: return "COR53_i";
    case BoundTag::COR53_ii: return "COR53_ii";
    case BoundTag::COR53_iii: return "COR53_iii";
    case BoundTag::COR53_iv: return "COR53_iv";
    case BoundTag::COR53_v: return "COR53_v";
    case BoundTag::LT_SIG: return "LT_SIG";
    case BoundTag::MIN_GENS: return "MIN_GENS";
    case BoundTag::ALEX1: return "ALEX1";
    case BoundTag::GZ_CHAIN: return "GZ_CHAIN";
    case BoundTag::WITNESSED: return "WITNESSED";
    case BoundTag::FALLBACK: return "FALLBACK";
  }
  return "?";
}

std::uint64_t stable_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

BoundTag cor53_tag(Cor53Case c) {
  switch (c) {
    case Cor53Case::i: return BoundTag::COR53_i;
    case Cor53Case::ii: return BoundTag::COR53_ii;
    case Cor53Case::iii: return BoundTag::COR53_iii;
    case Cor53Case::iv: return BoundTag::COR53_iv;
    case Cor53Case::v: return BoundTag::COR53_v;
  }
  return BoundTag::COR53_i;
}

long ceil_half(long x) { return (x + 1) / 2; }

TaggedBound combine(const std::vector<std::pair<long, BoundTag>>& candidates, bool use_alex1) {
  TaggedBound b;
  for (const auto& c : candidates) b.value = std::max(b.value, c.first);
  if (b.value == 0) {
    if (use_alex1) b.tags.push_back(BoundTag::ALEX1);
    return b;
  }
  for (const auto& c : candidates)
    if (c.first == b.value && std::find(b.tags.begin(), b.tags.end(), c.second) == b.tags.end())
      b.tags.push_back(c.second);
  return b;
}

}  // namespace

Obstructions obstructions(const KnotRecord& r, const BoundOptions& opt) {
  validate(r);
  Obstructions o;
  o.alexander = alexander(r);
  o.determinant = knot_determinant(r);
  o.min_generators = min_generators_double_cover(r);
  if (opt.use_lt) {
    o.lt = lt_signature_samples(r, opt.lt_max_log2);
    for (const auto& s : o.lt) o.max_abs_lt = std::max(o.max_abs_lt, std::abs(s.sigma));
  }
  FinitePairing ell = double_cover_pairing(r.seifert).ell;
  o.cor53_applicable = ell.rank() <= 2;
  if (o.cor53_applicable) {
    o.ell = decompose(ell);
    o.cor53 = cor53(o.ell);
  }
  return o;
}

TaggedBound gz_lower(const Obstructions& o, const BoundOptions& opt) {
  std::vector<std::pair<long, BoundTag>> c;
  if (opt.use_cor53 && o.cor53_applicable)
    for (const auto& h : o.cor53) c.emplace_back(2, cor53_tag(h.which));
  if (opt.use_lt) c.emplace_back(ceil_half(o.max_abs_lt), BoundTag::LT_SIG);
  if (opt.use_min_gens) c.emplace_back(ceil_half(long(o.min_generators)), BoundTag::MIN_GENS);
  if (opt.use_alex1) c.emplace_back(o.alexander == LaurentPoly(1) ? 0 : 1, BoundTag::ALEX1);
  return combine(c, opt.use_alex1);
}

TaggedBound ua_lower(const Obstructions& o, const BoundOptions& opt) {
  std::vector<std::pair<long, BoundTag>> c;
  if (opt.use_cor53 && o.cor53_applicable)
    for (const auto& h : o.cor53)
      if (h.ua_at_least_3) c.emplace_back(3, cor53_tag(h.which));
  if (opt.use_min_gens) c.emplace_back(long(o.min_generators), BoundTag::MIN_GENS);
  if (opt.use_lt) c.emplace_back(ceil_half(o.max_abs_lt), BoundTag::LT_SIG);
  if (opt.use_alex1) c.emplace_back(o.alexander == LaurentPoly(1) ? 0 : 1, BoundTag::ALEX1);
  c.emplace_back(gz_lower(o, opt).value, BoundTag::GZ_CHAIN);
  return combine(c, opt.use_alex1);
}

TaggedBound gz_lower(const KnotRecord& r, const BoundOptions& opt) {
  return gz_lower(obstructions(r, opt), opt);
}

TaggedBound ua_lower(const KnotRecord& r, const BoundOptions& opt) {
  return ua_lower(obstructions(r, opt), opt);
}

bool alexander_trivial_block(const ExactMatrix& n) {
  require(n.square() && n.rows() % 2 == 0, "block must be square of even size");
  const long h = long(n.rows() / 2);
  // det(tN - N^T) has degree <= 2h, so agreement with t^h at 2h + 1 points
  // decides equality.
  for (long t = 0; t <= 2 * h; ++t) {
    ExactMatrix m = Integer(t) * n - n.transpose();
    Integer want = 1;
    mpz_pow_ui(want.get_mpz_t(), Integer(t).get_mpz_t(), static_cast<unsigned long>(h));
    if (determinant(m) != want) return false;
  }
  return true;
}

namespace {

using i64 = std::int64_t;
constexpr i64 kPrime = (i64(1) << 61) - 1;

i64 mulp(i64 a, i64 b) { return static_cast<i64>((__int128)a * b % kPrime); }

i64 powp(i64 b, i64 e) {
  i64 r = 1;
  b %= kPrime;
  while (e) {
    if (e & 1) r = mulp(r, b);
    b = mulp(b, b);
    e >>= 1;
  }
  return r;
}

// det(2N - N^T) mod p for the leading 2h block.
i64 filter_det(const std::vector<std::vector<i64>>& m, std::size_t k) {
  std::vector<std::vector<i64>> a(k, std::vector<i64>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) a[i][j] = ((2 * m[i][j] - m[j][i]) % kPrime + kPrime) % kPrime;
  i64 det = 1;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    while (piv < k && a[piv][c] == 0) ++piv;
    if (piv == k) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = (kPrime - det) % kPrime;
    }
    det = mulp(det, a[c][c]);
    i64 inv = powp(a[c][c], kPrime - 2);
    for (std::size_t r = c + 1; r < k; ++r) {
      if (a[r][c] == 0) continue;
      i64 f = mulp(a[r][c], inv);
      for (std::size_t j = c; j < k; ++j) a[r][j] = (a[r][j] - mulp(f, a[c][j]) + kPrime) % kPrime;
    }
  }
  return det;
}

ExactMatrix to_exact(const std::vector<std::vector<i64>>& m, std::size_t k) {
  ExactMatrix e(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) e(i, j) = Integer(static_cast<long>(m[i][j]));
  return e;
}

// Largest h in (floor, g] whose leading 2h block is Alexander-trivial, or 0.
long best_block(const std::vector<std::vector<i64>>& m, long g, long floor) {
  for (long h = g; h > floor; --h) {
    const std::size_t k = std::size_t(2 * h);
    if (filter_det(m, k) != powp(2, h)) continue;
    if (alexander_trivial_block(to_exact(m, k))) return h;
  }
  return 0;
}

}  // namespace

UpperSearch gz_upper_search(const KnotRecord& r, std::uint64_t seed, std::uint64_t budget, long entry_bound) {
  validate(r);
  const std::size_t n = r.seifert.rows();
  const long g = long(n / 2);
  UpperSearch out;
  out.genus = g;
  out.base_change = ExactMatrix::identity(n);
  if (g == 0) return out;

  std::vector<std::vector<i64>> m(n, std::vector<i64>(n));
  long bound = entry_bound;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      require(abs(r.seifert(i, j)) < Integer(1L << 30), "Seifert entries too large for the search");
      m[i][j] = to_int64(r.seifert(i, j));
      bound = std::max<long>(bound, std::abs(m[i][j]));
    }
  ExactMatrix p = ExactMatrix::identity(n);

  auto record = [&](long h) {
    out.h = h;
    out.genus = g - h;
    out.witnessed = true;
    out.base_change = p;
  };
  if (long h = best_block(m, g, 0)) record(h);

  std::mt19937_64 rng(seed + stable_hash(r.name));
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::uint64_t move = 0; move < budget && out.h < g; ++move) {
    out.moves = move + 1;
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    const i64 s = (rng() & 1) ? 1 : -1;
    // column j += s column i, row j += s row i
    std::vector<std::vector<i64>> next = m;
    for (std::size_t k = 0; k < n; ++k) next[k][j] += s * next[k][i];
    for (std::size_t k = 0; k < n; ++k) next[j][k] += s * next[i][k];
    bool ok = true;
    for (std::size_t k = 0; k < n && ok; ++k)
      ok = std::abs(next[k][j]) <= bound && std::abs(next[j][k]) <= bound;
    if (!ok) continue;
    m = std::move(next);
    p.add_col(j, i, Integer(static_cast<long>(s)));
    if (long h = best_block(m, g, out.h)) record(h);
  }
  if (out.witnessed) {
    ExactMatrix v = out.base_change.transpose() * r.seifert * out.base_change;
    verify(alexander_trivial_block(v.submatrix(0, 0, std::size_t(2 * out.h), std::size_t(2 * out.h))),
           "search witness does not reproduce");
  }
  return out;
}

BoundReport report(const KnotRecord& r, const BoundOptions& opt) {
  BoundReport rep;
  rep.name = r.name;
  rep.obs = obstructions(r, opt);
  rep.gz_lower = gz_lower(rep.obs, opt);
  rep.ua_lower = ua_lower(rep.obs, opt);
  rep.search = gz_upper_search(r, opt.seed, opt.search_moves, opt.search_entry_bound);
  // 2 g_Z <= deg(Delta) caps the search result.
  const long alex_cap = rep.obs.alexander.span() / 2;
  rep.gz_upper = std::min(rep.search.genus, alex_cap);
  rep.ua_upper = 2 * rep.gz_upper;
  verify(rep.gz_lower.value <= rep.gz_upper, "g_Z lower bound exceeds the upper bound for " + r.name);
  verify(rep.ua_lower.value <= rep.ua_upper, "u_a lower bound exceeds 2 g_Z upper bound for " + r.name);
  verify(rep.gz_lower.value <= rep.ua_lower.value, "u_a lower bound below the g_Z lower bound");
  if (rep.gz_lower.value == rep.gz_upper) rep.gz = rep.gz_upper;
  return rep;
}

std::string to_line(const BoundReport& r) {
  auto tags = [](const TaggedBound& b) {
    std::string s = std::to_string(b.value) + "(";
    for (std::size_t i = 0; i < b.tags.size(); ++i) s += (i ? "," : "") + to_string(b.tags[i]);
    return s + ")";
  };
  const bool witnessed = r.search.witnessed && r.search.genus == r.gz_upper;
  std::ostringstream os;
  os << r.name << ' ' << tags(r.gz_lower) << ' ' << r.gz_upper << '('
     << to_string(witnessed ? BoundTag::WITNESSED : BoundTag::FALLBACK) << ") " << tags(r.ua_lower) << ' '
     << r.ua_upper;
  if (r.gz) os << " g_Z=" << *r.gz;
  return os.str();
}

}  // namespace zslice
