#include "zslice/blanch.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

#include "zslice/errors.hpp"
#include "zslice/numtheory.hpp"

namespace zslice {

namespace {

using i64 = std::int64_t;

bool is_pm1_diagonal(const ExactMatrix& s) {
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) {
      if (i != j && s(i, j) != 0) return false;
      if (i == j && s(i, i) != 1 && s(i, i) != -1) return false;
    }
  return true;
}

Integer abs_sum(const ExactMatrix& s) {
  Integer total = 0;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) total += abs(s(i, j));
  return total;
}

// Greedy congruence reduction: apply col_i += c col_j (and the matching row
// operation) while the sum of absolute entries strictly drops.
ExactMatrix greedy_reduce(const ExactMatrix& s) {
  const std::size_t n = s.rows();
  ExactMatrix u = ExactMatrix::identity(n);
  ExactMatrix cur = s;
  Integer measure = abs_sum(cur);
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        for (int c : {1, -1}) {
          ExactMatrix trial = cur;
          trial.add_col(i, j, Integer(c));
          trial.add_row(i, j, Integer(c));
          Integer m = abs_sum(trial);
          if (m < measure) {
            cur = std::move(trial);
            u.add_col(i, j, Integer(c));
            measure = m;
            improved = true;
          }
        }
      }
    }
  }
  return u;
}

std::vector<std::vector<i64>> to_i64(const ExactMatrix& s) {
  std::vector<std::vector<i64>> out(s.rows(), std::vector<i64>(s.cols()));
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) {
      require(abs(s(i, j)) < Integer(1L << 24), "form entries too large for the vector search");
      out[i][j] = to_int64(s(i, j));
    }
  return out;
}

i64 norm_of(const std::vector<std::vector<i64>>& s, const std::vector<i64>& v) {
  i64 total = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    i64 row = 0;
    for (std::size_t j = 0; j < v.size(); ++j) row += s[i][j] * v[j];
    total += v[i] * row;
  }
  return total;
}

// Enumerates nonzero vectors shell by shell (max |c_i| = r), keeping one of
// each pair +-v (first nonzero coordinate positive). Returns the first vector
// accepted by `accept`.
std::optional<std::vector<i64>> shell_search(
    std::size_t n, const LatticeSearchBudget& budget,
    const std::function<bool(const std::vector<i64>&)>& accept, const char* what) {
  std::uint64_t visited = 0;
  long limit = budget.radius;
  int widenings = 0;
  std::vector<i64> v(n);
  for (long r = 1;; ++r) {
    if (r > limit) {
      if (widenings == budget.widenings) break;
      ++widenings;
      limit *= 2;
    }
    std::fill(v.begin(), v.end(), -r);
    while (true) {
      bool on_shell = false, canonical = false, seen_nonzero = false;
      for (i64 c : v) {
        if (c == r || c == -r) on_shell = true;
        if (!seen_nonzero && c != 0) {
          seen_nonzero = true;
          canonical = c > 0;
        }
      }
      if (on_shell && canonical) {
        if (++visited > budget.max_vectors)
          throw BudgetExceeded(std::string(what) + ": vector budget exhausted");
        if (accept(v)) return v;
      }
      std::size_t k = 0;
      while (k < n && v[k] == r) v[k++] = -r;
      if (k == n) break;
      ++v[k];
    }
  }
  throw BudgetExceeded(std::string(what) + ": no vector found in the search box");
}

ExactMatrix column_matrix(const std::vector<std::vector<Integer>>& cols, std::size_t rows) {
  return from_columns(cols, rows);
}

std::vector<Integer> to_integer(const std::vector<i64>& v) {
  std::vector<Integer> out;
  out.reserve(v.size());
  for (i64 c : v) out.emplace_back(static_cast<long>(c));
  return out;
}

i64 gcd_all(const std::vector<i64>& v) {
  i64 g = 0;
  for (i64 c : v) g = gcd64(g, c < 0 ? -c : c);
  return g;
}

// w with a . w = gcd(a), gcd made positive.
std::vector<Integer> bezout(const std::vector<Integer>& a) {
  std::vector<Integer> w(a.size(), Integer(0));
  Integer g = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    Integer g2, s, t;
    mpz_gcdext(g2.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), a[i].get_mpz_t());
    for (std::size_t j = 0; j < i; ++j) w[j] *= s;
    w[i] = t;
    g = g2;
  }
  return w;
}

ExactMatrix hcat(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

void require_unimodular_form(const ExactMatrix& s) {
  require(s.square() && is_symmetric(s), "form must be a symmetric square matrix");
  require(is_unimodular(s), "form must be unimodular");
}

ExactMatrix diagonalize_rec(const ExactMatrix& s, const LatticeSearchBudget& budget) {
  const std::size_t n = s.rows();
  if (n == 0 || is_pm1_diagonal(s)) return ExactMatrix::identity(n);
  ExactMatrix r = greedy_reduce(s);
  ExactMatrix s1 = congruent_transform(s, r);
  if (n == 1) {
    verify(s1(0, 0) == 1 || s1(0, 0) == -1, "rank one unimodular form is not +-1");
    return r;
  }
  Inertia in = inertia(s1);
  i64 eps;
  if (in.positive >= 2) eps = 1;
  else if (in.negative >= 2) eps = -1;
  else eps = in.positive ? 1 : -1;

  auto s64 = to_i64(s1);
  ExactMatrix complement;
  auto accept = [&](const std::vector<i64>& v) {
    if (norm_of(s64, v) != eps) return false;
    ExactMatrix b = column_matrix({to_integer(v)}, n);
    ExactMatrix c = orthogonal_complement(s1, b);
    if (n - 1 >= 2 && parity(congruent_transform(s1, c)) == Parity::even) return false;
    complement = std::move(c);
    return true;
  };
  auto v = shell_search(n, budget, accept, "norm +-1 search");
  ExactMatrix sc = congruent_transform(s1, complement);
  ExactMatrix uc = diagonalize_rec(sc, budget);
  ExactMatrix u = r * hcat(column_matrix({to_integer(*v)}, n), complement * uc);
  return u;
}

ExactMatrix sort_signs(const ExactMatrix& s, ExactMatrix u) {
  ExactMatrix d = congruent_transform(s, u);
  std::vector<std::size_t> order(d.rows());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d(a, a) > d(b, b); });
  ExactMatrix out(u.rows(), u.cols());
  for (std::size_t j = 0; j < order.size(); ++j)
    for (std::size_t i = 0; i < u.rows(); ++i) out(i, j) = u(i, order[j]);
  return out;
}

}  // namespace

Parity parity(const ExactMatrix& s) {
  require(s.square(), "parity needs a square matrix");
  for (std::size_t i = 0; i < s.rows(); ++i)
    if (mpz_odd_p(s(i, i).get_mpz_t())) return Parity::odd;
  return Parity::even;
}

ExactMatrix orthogonal_complement(const ExactMatrix& s, const ExactMatrix& b) {
  const std::size_t n = s.rows(), k = b.cols();
  ExactMatrix gp = b.transpose() * s * b;
  require(is_unimodular(gp), "sublattice form is not unimodular");
  ExactMatrix gp_inv = inverse_unimodular(gp);
  ExactMatrix full = complete_to_basis(b);
  ExactMatrix rest = full.submatrix(0, k, n, n - k);
  ExactMatrix proj = rest - b * (gp_inv * (b.transpose() * (s * rest)));
  ExactMatrix cross = b.transpose() * s * proj;
  for (std::size_t i = 0; i < cross.rows(); ++i)
    for (std::size_t j = 0; j < cross.cols(); ++j)
      verify(cross(i, j) == 0, "projected complement is not orthogonal");
  verify(is_unimodular(hcat(b, proj)), "sublattice and complement do not span");
  return proj;
}

ExactMatrix split_hyperbolic(const ExactMatrix& s, const LatticeSearchBudget& budget) {
  require_unimodular_form(s);
  const std::size_t n = s.rows();
  require(n <= budget.max_size, "form exceeds the configured size bound");
  require(parity(s) == Parity::even, "split_hyperbolic needs an even form");
  require(inertia(s).indefinite(), "split_hyperbolic needs an indefinite form");

  bool already = s(0, 0) == 0 && s(0, 1) == 1 && s(1, 1) == 0;
  for (std::size_t j = 2; already && j < n; ++j) already = s(0, j) == 0 && s(1, j) == 0;
  if (already) return ExactMatrix::identity(n);

  ExactMatrix r = greedy_reduce(s);
  ExactMatrix s1 = congruent_transform(s, r);
  auto s64 = to_i64(s1);
  auto v = shell_search(
      n, budget,
      [&](const std::vector<i64>& x) { return norm_of(s64, x) == 0 && gcd_all(x) == 1; },
      "isotropic vector search");

  std::vector<Integer> vi = to_integer(*v);
  ExactMatrix vcol = column_matrix({vi}, n);
  ExactMatrix sv = s1 * vcol;
  std::vector<Integer> a = sv.column(0);
  std::vector<Integer> w = bezout(a);
  ExactMatrix wcol = column_matrix({w}, n);
  verify((vcol.transpose() * s1 * wcol)(0, 0) == 1, "dual partner does not pair to 1");
  Integer ww = (wcol.transpose() * s1 * wcol)(0, 0);
  verify(mpz_even_p(ww.get_mpz_t()), "even form has an odd norm");
  Integer m = ww / 2;
  for (std::size_t i = 0; i < n; ++i) w[i] -= m * vi[i];

  ExactMatrix b = column_matrix({vi, w}, n);
  ExactMatrix c = orthogonal_complement(s1, b);
  ExactMatrix u = r * hcat(b, c);
  ExactMatrix res = congruent_transform(s, u);
  verify(res(0, 0) == 0 && res(0, 1) == 1 && res(1, 1) == 0, "hyperbolic block not produced");
  for (std::size_t j = 2; j < n; ++j)
    verify(res(0, j) == 0 && res(1, j) == 0, "hyperbolic block is not orthogonal to the rest");
  verify(is_unimodular(u), "base change is not unimodular");
  return u;
}

ExactMatrix diagonalize_odd(const ExactMatrix& s, const LatticeSearchBudget& budget) {
  require_unimodular_form(s);
  require(s.rows() <= budget.max_size, "form exceeds the configured size bound");
  require(parity(s) == Parity::odd || s.rows() == 0, "diagonalization needs an odd form");
  ExactMatrix u = sort_signs(s, diagonalize_rec(s, budget));
  ExactMatrix d = congruent_transform(s, u);
  verify(is_pm1_diagonal(d), "diagonalization did not produce diag(+-1)");
  verify(is_unimodular(u), "base change is not unimodular");
  verify(signature(d) == signature(s), "diagonalization changed the signature");
  return u;
}

ExactMatrix diagonalize_odd_indefinite(const ExactMatrix& s, const LatticeSearchBudget& budget) {
  require_unimodular_form(s);
  require(inertia(s).indefinite(), "form must be indefinite");
  return diagonalize_odd(s, budget);
}

std::string check_certificate(const LambdaMatrix& a, const NormalizationCertificate& c,
                              bool require_diagonal) {
  const std::size_t n = a.rows();
  if (c.t.rows() != n || c.t.cols() != n || c.b.rows() != n || c.b.cols() != n)
    return "shape mismatch";
  auto b0 = to_lambda(congruence(a, c.t));
  if (!b0) return "conj(t)^T a t has entries outside Lambda";
  if (*b0 != c.b) return "b differs from conj(t)^T a t";
  Lambda0Scalar d = determinant(c.t);
  if (!d.in_lambda()) return "det t is not in Lambda";
  if (d.num() != c.det_t) return "det_t differs from det t";
  if (!c.det_t.is_unit()) return "det t is not a unit";
  if (!is_hermitian(c.b)) return "b is not Hermitian";
  ExactMatrix b1 = eval_at_pm1(c.b, 1);
  if (require_diagonal && !is_pm1_diagonal(b1)) return "b(1) is not diag(+-1)";
  if (signature(b1) != signature(eval_at_pm1(a, 1))) return "signature changed";
  return {};
}

NormalizationCertificate even_to_odd(const LambdaMatrix& a) {
  require(a.square() && is_hermitian(a), "matrix must be Hermitian");
  const std::size_t n = a.rows();
  ExactMatrix a1 = eval_at_pm1(a, 1);
  require(is_unimodular(a1), "A(1) must be unimodular");
  if (parity(a1) == Parity::odd) {
    NormalizationCertificate c{a, Lambda0Matrix::identity(n), LaurentPoly(1)};
    verify(check_certificate(a, c, false).empty(), "identity certificate fails");
    return c;
  }
  bool block = n >= 2 && a1(0, 0) == 0 && a1(0, 1) == 1 && a1(1, 1) == 0;
  for (std::size_t j = 2; block && j < n; ++j) block = a1(0, j) == 0 && a1(1, j) == 0;
  require(block, "A(1) must be H + R with H in the top-left corner");

  const LaurentPoly t = LaurentPoly::t();
  const LaurentPoly x = LaurentPoly(2) - t - LaurentPoly::monomial(1, -1);
  auto b11 = divide_exact(a(0, 0), x);
  verify(b11.has_value(), "symmetric entry vanishing at 1 is not divisible by (1-t)(1-t^-1)");

  Lambda0Matrix tm = Lambda0Matrix::identity(n);
  LaurentPoly expected_det;
  if (mpz_even_p(b11->eval_at_pm1(1).get_mpz_t())) {
    // column 2 += 1/(1-t^-1) column 1; 1/(1-t^-1) = -t/(1-t)
    tm(0, 1) = Lambda0Scalar(-t, 1);
    expected_det = LaurentPoly(1);
  } else {
    tm(0, 0) = Lambda0Scalar(LaurentPoly(1), 1);
    tm(1, 1) = Lambda0Scalar(LaurentPoly(1) - LaurentPoly::monomial(1, -1));
    expected_det = LaurentPoly::monomial(-1, -1);
  }
  auto c = to_lambda(congruence(a, tm));
  verify(c.has_value(), "parity change left entries outside Lambda");
  Lambda0Scalar d = determinant(tm);
  verify(d.in_lambda() && d.num() == expected_det, "parity change has an unexpected determinant");
  NormalizationCertificate cert{*c, tm, d.num()};
  verify(parity(eval_at_pm1(cert.b, 1)) == Parity::odd, "parity change did not produce an odd form");
  std::string why = check_certificate(a, cert, false);
  verify(why.empty(), "parity change certificate: " + why);
  return cert;
}

NormalizationCertificate normalize_blanchfield(const LambdaMatrix& a, const LatticeSearchBudget& budget) {
  require(a.square() && is_hermitian(a), "matrix must be Hermitian");
  const std::size_t n = a.rows();
  ExactMatrix a1 = eval_at_pm1(a, 1);
  require(is_unimodular(a1), "A(1) must be unimodular");
  require(inertia(a1).indefinite(), "A(1) is definite; normalization needs an indefinite form");

  LambdaMatrix cur = a;
  Lambda0Matrix total = Lambda0Matrix::identity(n);
  auto apply_constant = [&](const ExactMatrix& u) {
    LambdaMatrix ul = lift(u);
    cur = ul.transpose() * cur * ul;
    total = total * lift0(u);
  };

  if (parity(a1) == Parity::even) {
    apply_constant(split_hyperbolic(a1, budget));
    NormalizationCertificate step = even_to_odd(cur);
    cur = step.b;
    total = total * step.t;
  }
  apply_constant(diagonalize_odd_indefinite(eval_at_pm1(cur, 1), budget));

  Lambda0Scalar d = determinant(total);
  verify(d.in_lambda(), "transformation determinant is not in Lambda");
  NormalizationCertificate cert{cur, total, d.num()};
  std::string why = check_certificate(a, cert, true);
  verify(why.empty(), "normalization certificate: " + why);
  return cert;
}

SignedUnknotting signed_unknotting_report(const LambdaMatrix& a, const LatticeSearchBudget& budget) {
  require(a.square() && is_hermitian(a), "matrix must be Hermitian");
  ExactMatrix a1 = eval_at_pm1(a, 1);
  require(is_unimodular(a1), "A(1) must be unimodular");
  ExactMatrix d;
  if (inertia(a1).indefinite()) {
    d = eval_at_pm1(normalize_blanchfield(a, budget).b, 1);
  } else {
    require(a1.rows() == 0 || parity(a1) == Parity::odd, "definite even A(1) is not diagonalizable");
    try {
      d = congruent_transform(a1, diagonalize_odd(a1, budget));
    } catch (const BudgetExceeded&) {
      throw InputError("definite A(1) is not diagonalizable over Z within the search budget");
    }
  }
  SignedUnknotting r;
  for (std::size_t i = 0; i < d.rows(); ++i) (d(i, i) > 0 ? r.positive : r.negative) += 1;
  return r;
}

LambdaMatrix satellite_sum(const LambdaMatrix& a_k, const LambdaMatrix& a_p, long w) {
  require(a_k.square() && is_hermitian(a_k), "companion matrix must be Hermitian");
  require(a_p.square() && is_hermitian(a_p), "pattern matrix must be Hermitian");
  return block_sum(a_k, substitute_power(a_p, w));
}

LambdaMatrix parse_lambda_matrix(const std::string& text) {
  std::istringstream is(text);
  std::vector<std::string> lines;
  for (std::string line; std::getline(is, line);) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(line);
  }
  require(!lines.empty(), "empty matrix file");
  std::size_t n = 0;
  try {
    std::size_t pos = 0;
    long v = std::stol(lines[0], &pos);
    require(v >= 0, "matrix size must be non-negative");
    require(lines[0].find_first_not_of(" \t\r", pos) == std::string::npos, "bad size line");
    n = static_cast<std::size_t>(v);
  } catch (const std::logic_error&) {
    throw InputError("first line must be the matrix size");
  }
  require(lines.size() == n + 1, "expected " + std::to_string(n) + " matrix rows");
  LambdaMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream row(lines[i + 1]);
    while (std::getline(row, cell, ';')) cells.push_back(cell);
    require(cells.size() == n, "row " + std::to_string(i + 1) + " must have " + std::to_string(n) + " entries");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = parse_laurent(cells[j]);
  }
  return m;
}

}  // namespace zslice
