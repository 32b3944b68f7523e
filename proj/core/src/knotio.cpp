#include "zslice/knotio.hpp"

#include <numeric>
#include <sstream>

#include "zslice/cyclo.hpp"
#include "zslice/errors.hpp"

namespace zslice {

namespace {

std::string where(const std::string& source, std::size_t line) {
  return (source.empty() ? std::string("line ") : source + ":") + std::to_string(line) + ": ";
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

ExactMatrix skew(const ExactMatrix& v) { return v - v.transpose(); }

}  // namespace

void validate(const KnotRecord& r) {
  const std::string at = r.line ? where(r.source, r.line) : std::string();
  const std::string who = "knot '" + r.name + "': ";
  require(r.seifert.square(), at + who + "Seifert matrix must be square");
  require(r.seifert.rows() % 2 == 0, at + who + "Seifert matrix must have even size");
  Integer d = determinant(skew(r.seifert));
  require(d == 1, at + who + "V - V^T is not unimodular (det " + to_string(d) + ")");
}

std::vector<KnotRecord> parse_knot_file(const std::string& text, const std::string& source) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  {
    std::istringstream is(text);
    std::size_t no = 0;
    for (std::string line; std::getline(is, line);) {
      ++no;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      lines.emplace_back(no, line);
    }
  }
  std::vector<KnotRecord> out;
  std::size_t i = 0;
  while (i < lines.size()) {
    auto [no, line] = lines[i];
    auto head = tokens(line);
    require(head.size() == 2 && head[0] == "knot", where(source, no) + "expected `knot <name>`");
    KnotRecord r;
    r.name = head[1];
    r.source = source;
    r.line = no;
    ++i;
    require(i < lines.size(), where(source, no) + "record ends before `seifert <n>`");
    auto [sno, sline] = lines[i];
    auto sz = tokens(sline);
    require(sz.size() == 2 && sz[0] == "seifert", where(source, sno) + "expected `seifert <n>`");
    long n = 0;
    try {
      std::size_t pos = 0;
      n = std::stol(sz[1], &pos);
      if (pos != sz[1].size() || n < 0) throw std::invalid_argument("size");
    } catch (const std::exception&) {
      throw InputError(where(source, sno) + "matrix size must be a non-negative integer");
    }
    require(n % 2 == 0, where(source, sno) + "odd matrix size " + std::to_string(n));
    ++i;
    r.seifert = ExactMatrix(std::size_t(n), std::size_t(n));
    for (long row = 0; row < n; ++row, ++i) {
      require(i < lines.size(), where(source, sno) + "expected " + std::to_string(n) + " matrix rows");
      auto [rno, rline] = lines[i];
      auto cells = tokens(rline);
      require(cells.size() == std::size_t(n),
              where(source, rno) + "expected " + std::to_string(n) + " entries, found " + std::to_string(cells.size()));
      for (long col = 0; col < n; ++col) {
        Integer v;
        if (v.set_str(cells[std::size_t(col)], 10) != 0)
          throw InputError(where(source, rno) + "column " + std::to_string(col + 1) + ": not an integer: " +
                           cells[std::size_t(col)]);
        r.seifert(std::size_t(row), std::size_t(col)) = v;
      }
    }
    validate(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string to_string(const KnotRecord& r) {
  std::ostringstream os;
  os << "knot " << r.name << '\n' << "seifert " << r.seifert.rows() << '\n';
  for (std::size_t i = 0; i < r.seifert.rows(); ++i) {
    for (std::size_t j = 0; j < r.seifert.cols(); ++j) os << (j ? " " : "") << r.seifert(i, j).get_str();
    os << '\n';
  }
  return os.str();
}

LaurentPoly alexander(const KnotRecord& r) { return alexander_from_seifert(r.seifert); }

ExactMatrix symmetrized(const KnotRecord& r) { return r.seifert + r.seifert.transpose(); }

Integer knot_determinant(const KnotRecord& r) { return abs(determinant(symmetrized(r))); }

long classical_signature(const KnotRecord& r) { return signature(symmetrized(r)); }

std::optional<long> lt_signature(const KnotRecord& r, long j, long n) {
  require(n >= 2 && j > 0 && j < n && std::gcd(j, n) == 1, "omega must be a primitive n-th root of unity");
  if (n == 2) {
    if (determinant(symmetrized(r)) == 0) return std::nullopt;
    return classical_signature(r);
  }
  CyclotomicField k(n);
  const std::size_t g = r.seifert.rows();
  // Entries (1 - z) V_ab + (1 - z^-1) V_ba over Q(zeta_n), embedded at j.
  const auto one = k.from_int(1);
  const auto a = k.sub(one, k.zeta_pow(1));
  const auto b = k.conj(a);
  CycloMatrix m(g, std::vector<CyclotomicField::Elem>(g));
  for (std::size_t x = 0; x < g; ++x)
    for (std::size_t y = 0; y < g; ++y)
      m[x][y] = k.add(k.scale(a, Rational(r.seifert(x, y))), k.scale(b, Rational(r.seifert(y, x))));
  auto s = hermitian_signatures(k, std::move(m), {j});
  if (!s) return std::nullopt;
  return (*s)[0];
}

std::vector<LtSample> lt_signature_samples(const KnotRecord& r, int max_log2) {
  std::vector<LtSample> out;
  if (auto s = lt_signature(r, 1, 2)) out.push_back({1, 2, *s});
  const std::size_t g = r.seifert.rows();
  for (int a = 2; a <= max_log2; ++a) {
    const long n = 1L << a;
    CyclotomicField k(n);
    const auto one = k.from_int(1);
    const auto x = k.sub(one, k.zeta_pow(1));
    const auto y = k.conj(x);
    CycloMatrix m(g, std::vector<CyclotomicField::Elem>(g));
    for (std::size_t p = 0; p < g; ++p)
      for (std::size_t q = 0; q < g; ++q)
        m[p][q] = k.add(k.scale(x, Rational(r.seifert(p, q))), k.scale(y, Rational(r.seifert(q, p))));
    std::vector<long> js;
    for (long j = 1; j < n / 2; j += 2) js.push_back(j);
    // All Galois conjugates share one exact elimination.
    auto sig = hermitian_signatures(k, std::move(m), js);
    if (!sig) continue;
    for (std::size_t e = 0; e < js.size(); ++e) out.push_back({js[e], n, (*sig)[e]});
  }
  return out;
}

ExactMatrix symplectic_basis(const ExactMatrix& w) {
  const std::size_t n = w.rows();
  require(w.square() && n % 2 == 0, "skew form must be square of even size");
  require(w == -w.transpose(), "form must be skew-symmetric");
  require(is_unimodular(w), "skew form must be unimodular");
  ExactMatrix basis = ExactMatrix::identity(n);  // current basis, columns
  for (std::size_t k = 0; k < n; k += 2) {
    ExactMatrix cur = basis.transpose() * w * basis;
    // Partner for column k among the remaining columns: solve sum c_j w(e_k, e_j) = 1.
    std::vector<Integer> row;
    for (std::size_t j = k + 1; j < n; ++j) row.push_back(cur(k, j));
    Integer g = 0;
    std::vector<Integer> coef(row.size(), Integer(0));
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] == 0) continue;
      Integer g2, s, t;
      mpz_gcdext(g2.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), row[i].get_mpz_t());
      for (std::size_t j = 0; j < i; ++j) coef[j] *= s;
      coef[i] = t;
      g = g2;
    }
    verify(g == 1, "unimodular skew form has no symplectic partner");
    // New basis: e_k, f = sum coef_j e_{k+1+j}, then the projected rest.
    ExactMatrix change = ExactMatrix::identity(n);
    // Put f in column k+1 by a unimodular change of the trailing columns.
    ExactMatrix tail(n - k - 1, 1);
    for (std::size_t i = 0; i < coef.size(); ++i) tail(i, 0) = coef[i];
    ExactMatrix full = complete_to_basis(tail);
    for (std::size_t i = 0; i < n - k - 1; ++i)
      for (std::size_t j = 0; j < n - k - 1; ++j) change(k + 1 + i, k + 1 + j) = full(i, j);
    basis = basis * change;
    cur = basis.transpose() * w * basis;
    verify(cur(k, k + 1) == 1, "symplectic partner does not pair to 1");
    // x -> x - w(x, f) e + w(x, e) f for the remaining columns.
    ExactMatrix clear = ExactMatrix::identity(n);
    for (std::size_t j = k + 2; j < n; ++j) {
      clear(k, j) = -cur(j, k + 1);
      clear(k + 1, j) = cur(j, k);
    }
    basis = basis * clear;
  }
  ExactMatrix fin = basis.transpose() * w * basis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Integer want = 0;
      if (i % 2 == 0 && j == i + 1) want = 1;
      if (j % 2 == 0 && i == j + 1) want = -1;
      verify(fin(i, j) == want, "symplectic reduction failed");
    }
  verify(is_unimodular(basis), "symplectic base change is not unimodular");
  return basis;
}

int arf(const KnotRecord& r) {
  validate(r);
  ExactMatrix p = symplectic_basis(skew(r.seifert));
  ExactMatrix v = p.transpose() * r.seifert * p;
  Integer s = 0;
  for (std::size_t i = 0; i < v.rows(); i += 2) s += v(i, i) * v(i + 1, i + 1);
  return mpz_odd_p(s.get_mpz_t()) ? 1 : 0;
}

std::size_t min_generators_double_cover(const KnotRecord& r) {
  std::size_t count = 0;
  for (const auto& d : snf(symmetrized(r)).d)
    if (abs(d) != 1) ++count;
  return count;
}

}  // namespace zslice
