#include "zslice/finpair.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "zslice/errors.hpp"
#include "zslice/numtheory.hpp"

namespace zslice {

Integer FinitePairing::group_order() const {
  Integer n = 1;
  for (const auto& q : orders) n *= q;
  return n;
}

Integer FinitePairing::exponent() const { return orders.empty() ? Integer(1) : orders.back(); }

Rational FinitePairing::value(const std::vector<Integer>& x, const std::vector<Integer>& y) const {
  require(x.size() == rank() && y.size() == rank(), "vector length does not match pairing rank");
  Rational s = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < rank(); ++j)
      if (y[j] != 0) s += Rational(x[i] * y[j]) * gram(i, j);
  }
  return frac_mod1(s);
}

bool FinitePairing::is_nondegenerate() const {
  // x -> (q_j * l(x, g_j) mod q_j)_j must be onto; equivalently the rows of
  // F_ij = q_j * gram(i,j) together with diag(q) generate Z^n.
  const std::size_t n = rank();
  if (n == 0) return true;
  ExactMatrix stacked(2 * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational f = gram(i, j);
      f *= Rational(orders[j]);
      verify(f.get_den() == 1, "pairing value order exceeds generator order");
      stacked(i, j) = f.get_num();
    }
  for (std::size_t j = 0; j < n; ++j) stacked(n + j, j) = orders[j];
  for (const auto& d : snf(stacked).d)
    if (d != 1) return false;
  return true;
}

void FinitePairing::validate() const {
  const std::size_t n = rank();
  require(gram.rows() == n && gram.cols() == n, "gram shape does not match orders");
  for (std::size_t i = 0; i < n; ++i) {
    require(orders[i] > 1, "invariant factors must exceed 1");
    if (i + 1 < n) require(divides(orders[i], orders[i + 1]), "invariant factors must form a divisibility chain");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& v = gram(i, j);
      require(v >= 0 && v < 1, "gram values must be reduced into [0,1)");
      require(v == gram(j, i), "gram must be symmetric");
      Integer g;
      mpz_gcd(g.get_mpz_t(), orders[i].get_mpz_t(), orders[j].get_mpz_t());
      require(divides(v.get_den(), g), "gram value order must divide gcd of generator orders");
    }
}

FinitePairing pairing_from_matrix(const ExactMatrix& a) {
  require(a.square(), "presentation matrix must be square");
  require(is_symmetric(a), "presentation matrix must be symmetric");
  const Integer det = determinant(a);
  require(det != 0, "presentation matrix must have nonzero determinant");
  SnfResult s = snf(a);
  ExactMatrix uinv = inverse_unimodular(s.u);
  ExactMatrix adj = adjugate(a);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < s.d.size(); ++i)
    if (s.d[i] > 1) keep.push_back(i);
  FinitePairing p;
  p.gram = RationalMatrix(keep.size(), keep.size());
  ExactMatrix g(a.rows(), keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c) {
    p.orders.push_back(s.d[keep[c]]);
    for (std::size_t r = 0; r < a.rows(); ++r) g(r, c) = uinv(r, keep[c]);
  }
  ExactMatrix num = g.transpose() * adj * g;
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) {
      Rational v(num(i, j), det);
      v.canonicalize();
      p.gram(i, j) = frac_mod1(v);
    }
#ifndef NDEBUG
  p.validate();
#endif
  return p;
}

FinitePairing scaled(const FinitePairing& p, const Integer& c) {
  FinitePairing r = p;
  for (std::size_t i = 0; i < p.rank(); ++i)
    for (std::size_t j = 0; j < p.rank(); ++j) r.gram(i, j) = frac_mod1(Rational(c) * p.gram(i, j));
  return r;
}

DoubleCoverPairings double_cover_pairing(const ExactMatrix& v) {
  require(v.square(), "Seifert matrix must be square");
  ExactMatrix s = v + v.transpose();
  Integer det = determinant(s);
  require(det != 0, "V + V^T is singular");
  require(mpz_odd_p(det.get_mpz_t()), "det(V + V^T) is even: not a knot Seifert matrix");
  DoubleCoverPairings out;
  out.lk = pairing_from_matrix(s);
  out.ell = scaled(out.lk, 2);
  return out;
}

namespace {

Integer ipow(const Integer& b, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

unsigned long valuation(Integer x, const Integer& r) {
  unsigned long v = 0;
  while (x != 0 && divides(r, x)) {
    x /= r;
    ++v;
  }
  return v;
}

struct PrimarySummand {
  unsigned long e;
  Integer a;
};

// Orthogonal splitting of the r-primary part by symmetric elimination.
std::vector<PrimarySummand> split_primary(const FinitePairing& p, const Integer& r) {
  const std::size_t n = p.rank();
  std::vector<std::vector<Integer>> basis;
  std::vector<unsigned long> ord;
  for (std::size_t i = 0; i < n; ++i) {
    unsigned long v = valuation(p.orders[i], r);
    if (v == 0) continue;
    std::vector<Integer> h(n, Integer(0));
    h[i] = p.orders[i] / ipow(r, v);
    basis.push_back(std::move(h));
    ord.push_back(v);
  }
  auto reduce = [&](std::vector<Integer>& x) {
    for (std::size_t i = 0; i < n; ++i) x[i] = mod_floor(x[i], p.orders[i]);
  };
  auto full_order = [&](const Rational& v, const Integer& re) { return v.get_den() == re; };

  std::vector<PrimarySummand> out;
  while (!basis.empty()) {
    unsigned long e = *std::max_element(ord.begin(), ord.end());
    Integer re = ipow(r, e);
    std::size_t m = basis.size();
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (ord[i] == e && full_order(p.value(basis[i], basis[i]), re)) {
        m = i;
        break;
      }
    if (m == basis.size()) {
      // No diagonal entry of full order: x_i <- x_i + x_j, valid since 2 is a unit.
      bool fixed = false;
      for (std::size_t i = 0; i < basis.size() && !fixed; ++i) {
        if (ord[i] != e) continue;
        for (std::size_t j = 0; j < basis.size(); ++j) {
          if (j == i || ord[j] != e) continue;
          if (!full_order(p.value(basis[i], basis[j]), re)) continue;
          for (std::size_t k = 0; k < n; ++k) basis[i][k] += basis[j][k];
          reduce(basis[i]);
          verify(full_order(p.value(basis[i], basis[i]), re), "fix move did not produce a full-order value");
          m = i;
          fixed = true;
          break;
        }
      }
      require(fixed, "pairing is degenerate");
    }
    const std::vector<Integer> x = basis[m];
    Rational av = p.value(x, x) * Rational(re);
    Integer a = av.get_num();
    a = mod_floor(a, re);
    Integer ainv;
    verify(mpz_invert(ainv.get_mpz_t(), a.get_mpz_t(), re.get_mpz_t()) != 0, "self value is not a unit");
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (j == m) continue;
      Rational v = p.value(x, basis[j]);
      v *= Rational(re);
      verify(v.get_den() == 1, "cross value order exceeds pivot order");
      Integer lambda = mod_floor(v.get_num() * ainv, re);
      if (lambda == 0) continue;
      for (std::size_t k = 0; k < n; ++k) basis[j][k] -= lambda * x[k];
      reduce(basis[j]);
      verify(p.value(x, basis[j]) == 0, "elimination left a nonzero cross value");
    }
    out.push_back({e, a});
    basis.erase(basis.begin() + long(m));
    ord.erase(ord.begin() + long(m));
  }
  std::sort(out.begin(), out.end(), [](const auto& s, const auto& t) { return s.e > t.e; });
  return out;
}

}  // namespace

CyclicDecomposition decompose(const FinitePairing& p) {
  p.validate();
  const Integer order = p.group_order();
  require(mpz_odd_p(order.get_mpz_t()), "decompose needs a group of odd order");
  require(p.is_nondegenerate(), "decompose needs a non-degenerate pairing");
  if (p.rank() == 0) return {};
  require(fits_int64(p.exponent()), "exponent too large to factor");

  std::vector<std::pair<Integer, std::vector<PrimarySummand>>> parts;
  std::size_t width = 0;
  for (auto [r, e] : factorize(to_int64(p.exponent()))) {
    (void)e;
    Integer rr = static_cast<long>(r);
    parts.emplace_back(rr, split_primary(p, rr));
    width = std::max(width, parts.back().second.size());
  }
  // The t-th largest summands of every prime combine into one cyclic piece.
  CyclicDecomposition out;
  for (std::size_t t = 0; t < width; ++t) {
    Integer q = 1;
    for (const auto& [r, s] : parts)
      if (t < s.size()) q *= ipow(r, s[t].e);
    Integer a = 0;
    for (const auto& [r, s] : parts)
      if (t < s.size()) a += s[t].a * (q / ipow(r, s[t].e));
    out.push_back({q, mod_floor(a, q)});
  }
  std::reverse(out.begin(), out.end());
  Integer prod = 1;
  for (const auto& s : out) prod *= s.q;
  verify(prod == order, "decomposition does not account for the whole group");
  return out;
}

FinitePairing rebuild(const CyclicDecomposition& d) {
  FinitePairing p;
  for (const auto& s : d)
    if (s.q > 1) p.orders.push_back(s.q);
  p.gram = RationalMatrix(p.orders.size(), p.orders.size());
  std::size_t k = 0;
  for (const auto& s : d) {
    if (s.q <= 1) continue;
    Rational v(s.a, s.q);
    v.canonicalize();
    p.gram(k, k) = frac_mod1(v);
    ++k;
  }
  p.validate();
  return p;
}

namespace {

struct IntPairing {
  std::vector<i64> orders;
  i64 exp = 1;
  std::vector<i64> num;  // gram numerators over exp, row-major
  std::size_t n = 0;
  i64 at(std::size_t i, std::size_t j) const { return num[i * n + j]; }
};

IntPairing to_int(const FinitePairing& p) {
  IntPairing ip;
  ip.n = p.rank();
  require(fits_int64(p.exponent()) && p.exponent() < (Integer(1) << 40), "pairing exponent too large for search");
  ip.exp = to_int64(p.exponent());
  for (const auto& q : p.orders) ip.orders.push_back(to_int64(q));
  ip.num.resize(ip.n * ip.n);
  for (std::size_t i = 0; i < ip.n; ++i)
    for (std::size_t j = 0; j < ip.n; ++j) {
      Rational v = p.gram(i, j);
      v *= Rational(p.exponent());
      ip.num[i * ip.n + j] = to_int64(v.get_num());
    }
  return ip;
}

}  // namespace

std::optional<Isometry> isometry_search(const FinitePairing& p1, const FinitePairing& p2,
                                        std::uint64_t budget, SearchStats* stats) {
  p1.validate();
  p2.validate();
  if (p1.orders != p2.orders) return std::nullopt;
  require(p1.is_nondegenerate() && p2.is_nondegenerate(), "isometry search needs non-degenerate pairings");
  const std::size_t n = p1.rank();
  if (n == 0) return Isometry{};
  const Integer gsize = p2.group_order();
  // Enumerating the target is a prefilter and is not charged to the budget,
  // but it still needs a hard cap.
  if (gsize > 10'000'000)
    throw BudgetExceeded("group of order " + gsize.get_str() + " is too large for isometry search");

  IntPairing a = to_int(p1), b = to_int(p2);
  const i64 D = b.exp;
  const i64 total = to_int64(gsize);

  // All elements of the target with their pairing rows and self values.
  std::vector<i64> elems(std::size_t(total) * n);
  std::vector<i64> rows(std::size_t(total) * n);
  std::vector<i64> self(static_cast<std::size_t>(total));
  std::vector<i64> order(static_cast<std::size_t>(total));
  {
    std::vector<i64> x(n, 0);
    for (i64 idx = 0; idx < total; ++idx) {
      // Lexicographic: the first coordinate is most significant.
      i64 rem = idx;
      for (std::size_t k = n; k-- > 0;) {
        x[k] = rem % b.orders[k];
        rem /= b.orders[k];
      }
      i64 ord = 1;
      for (std::size_t k = 0; k < n; ++k) {
        elems[std::size_t(idx) * n + k] = x[k];
        i64 ok = b.orders[k] / gcd64(x[k], b.orders[k]);
        ord = ord / gcd64(ord, ok) * ok;
      }
      order[std::size_t(idx)] = ord;
      i64 s = 0;
      for (std::size_t l = 0; l < n; ++l) {
        __int128 acc = 0;
        for (std::size_t k = 0; k < n; ++k) acc += static_cast<__int128>(x[k]) * b.at(k, l);
        i64 row = static_cast<i64>(acc % D);
        rows[std::size_t(idx) * n + l] = row;
        s = static_cast<i64>((static_cast<__int128>(row) * x[l] + s) % D);
      }
      self[std::size_t(idx)] = s;
    }
  }
  auto pair = [&](i64 ix, i64 iy) {
    __int128 acc = 0;
    for (std::size_t l = 0; l < n; ++l)
      acc += static_cast<__int128>(rows[std::size_t(ix) * n + l]) * elems[std::size_t(iy) * n + l];
    return static_cast<i64>(acc % D);
  };

  std::vector<std::vector<i64>> cands(n);
  for (std::size_t i = 0; i < n; ++i)
    for (i64 idx = 0; idx < total; ++idx)
      if (a.orders[i] % order[std::size_t(idx)] == 0 && self[std::size_t(idx)] == a.at(i, i))
        cands[i].push_back(idx);

  std::uint64_t tried = 0;
  std::vector<i64> image(n, -1);
  // Iterative backtracking over generator images.
  std::vector<std::size_t> pos(n, 0);
  std::size_t depth = 0;
  bool found = false;
  while (true) {
    if (pos[depth] >= cands[depth].size()) {
      if (depth == 0) break;
      pos[depth] = 0;
      --depth;
      ++pos[depth];
      continue;
    }
    i64 c = cands[depth][pos[depth]];
    if (++tried > budget) {
      if (stats) stats->candidates = tried;
      throw BudgetExceeded("isometry search exceeded " + std::to_string(budget) + " candidates");
    }
    bool ok = true;
    for (std::size_t j = 0; j < depth && ok; ++j) ok = pair(image[j], c) == a.at(j, depth);
    if (!ok) {
      ++pos[depth];
      continue;
    }
    image[depth] = c;
    if (depth + 1 == n) {
      found = true;
      break;
    }
    ++depth;
  }
  if (stats) stats->candidates = tried;
  if (!found) return std::nullopt;
  Isometry out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      out[i].push_back(Integer(static_cast<long>(elems[std::size_t(image[i]) * n + k])));
  verify(verify_isometry(p1, p2, out), "isometry search produced an invalid map");
  return out;
}

bool verify_isometry(const FinitePairing& p1, const FinitePairing& p2, const Isometry& images) {
  if (images.size() != p1.rank()) return false;
  if (p1.group_order() != p2.group_order()) return false;
  if (!p1.is_nondegenerate()) return false;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].size() != p2.rank()) return false;
    for (std::size_t k = 0; k < p2.rank(); ++k)
      if (!divides(p2.orders[k], p1.orders[i] * images[i][k])) return false;
  }
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = 0; j < images.size(); ++j)
      if (p2.value(images[i], images[j]) != p1.gram(i, j)) return false;
  return true;
}

std::string to_string(const FinitePairing& p) {
  std::ostringstream os;
  if (p.rank() == 0) return "trivial";
  for (std::size_t i = 0; i < p.rank(); ++i) os << (i ? " + " : "") << "Z/" << p.orders[i].get_str();
  os << "; gram [";
  for (std::size_t i = 0; i < p.rank(); ++i) {
    os << (i ? ", " : "") << '[';
    for (std::size_t j = 0; j < p.rank(); ++j) os << (j ? ", " : "") << to_string(p.gram(i, j));
    os << ']';
  }
  os << ']';
  return os.str();
}

std::string to_string(const CyclicDecomposition& d) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? ", " : "") << d[i].a.get_str() << '/' << d[i].q.get_str();
  os << ')';
  return os.str();
}

}  // namespace zslice
