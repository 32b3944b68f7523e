#include "zslice/exactmat.hpp"

#include <algorithm>
#include <sstream>

namespace zslice {

namespace {

Integer abs_int(const Integer& x) { return x < 0 ? Integer(-x) : x; }

// Quotient rounded to nearest, so remainders are as small as possible.
Integer round_div(const Integer& a, const Integer& b) {
  Integer q;
  Integer twice_a = 2 * a + b;
  Integer twice_b = 2 * b;
  mpz_fdiv_q(q.get_mpz_t(), twice_a.get_mpz_t(), twice_b.get_mpz_t());
  return q;
}

}  // namespace

SnfResult snf(const ExactMatrix& a_in) {
  ExactMatrix a = a_in;
  const std::size_t m = a.rows(), n = a.cols();
  ExactMatrix u = ExactMatrix::identity(m);
  ExactMatrix w = ExactMatrix::identity(n);
  const std::size_t r = std::min(m, n);
  std::vector<Integer> d(r, Integer(0));

  for (std::size_t k = 0; k < r; ++k) {
    for (;;) {
      // Smallest nonzero |entry| in the trailing block becomes the pivot.
      bool found = false;
      std::size_t pi = k, pj = k;
      Integer best;
      for (std::size_t i = k; i < m; ++i)
        for (std::size_t j = k; j < n; ++j) {
          if (a(i, j) == 0) continue;
          Integer v = abs_int(a(i, j));
          if (!found || v < best) {
            best = v;
            pi = i;
            pj = j;
            found = true;
          }
        }
      if (!found) break;
      a.swap_rows(k, pi);
      u.swap_rows(k, pi);
      a.swap_cols(k, pj);
      w.swap_cols(k, pj);

      bool clean = true;
      for (std::size_t i = k + 1; i < m; ++i) {
        if (a(i, k) == 0) continue;
        Integer q = round_div(a(i, k), a(k, k));
        a.add_row(i, k, -q);
        u.add_row(i, k, -q);
        if (a(i, k) != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        if (a(k, j) == 0) continue;
        Integer q = round_div(a(k, j), a(k, k));
        a.add_col(j, k, -q);
        w.add_col(j, k, -q);
        if (a(k, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce the divisibility chain against the trailing block.
      bool chain_ok = true;
      for (std::size_t i = k + 1; i < m && chain_ok; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          if (!divides(a(k, k), a(i, j))) {
            a.add_row(k, i, Integer(1));
            u.add_row(k, i, Integer(1));
            chain_ok = false;
            break;
          }
      if (chain_ok) break;
    }
    if (a(k, k) < 0) {
      a.scale_row(k, Integer(-1));
      u.scale_row(k, Integer(-1));
    }
    d[k] = a(k, k);
  }
  return {std::move(d), std::move(u), std::move(w)};
}

Integer determinant(const ExactMatrix& a_in) {
  require(a_in.square(), "determinant of non-square matrix");
  const std::size_t n = a_in.rows();
  if (n == 0) return 1;
  ExactMatrix a = a_in;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

ExactMatrix adjugate(const ExactMatrix& a) {
  require(a.square(), "adjugate of non-square matrix");
  const std::size_t n = a.rows();
  ExactMatrix adj(n, n);
  if (n == 0) return adj;
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  ExactMatrix minor(n - 1, n - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // adj(j, i) = (-1)^(i+j) det(a without row i, column j)
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc) = a(r, c);
          ++cc;
        }
        ++rr;
      }
      Integer m = determinant(minor);
      adj(j, i) = ((i + j) % 2 == 0) ? m : Integer(-m);
    }
#ifndef NDEBUG
  verify(a * adj == determinant(a) * ExactMatrix::identity(n),
         "adjugate postcondition failed");
#endif
  return adj;
}

bool is_unimodular(const ExactMatrix& a) {
  if (!a.square()) return false;
  Integer d = determinant(a);
  return d == 1 || d == -1;
}

ExactMatrix inverse_unimodular(const ExactMatrix& a) {
  Integer d = determinant(a);
  require(d == 1 || d == -1, "matrix is not unimodular");
  ExactMatrix inv = adjugate(a);
  if (d == -1) inv = -inv;
  return inv;
}

Inertia inertia(const RationalMatrix& s_in) {
  require(is_symmetric(s_in), "inertia of non-symmetric matrix");
  RationalMatrix s = s_in;
  const std::size_t n = s.rows();
  std::vector<bool> live(n, true);
  std::size_t remaining = n;
  Inertia out;

  auto congruence_add = [&](std::size_t dst, std::size_t src,
                            const Rational& c) {
    s.add_row(dst, src, c);
    s.add_col(dst, src, c);
  };

  while (remaining > 0) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i)
      if (live[i] && s(i, i) != 0) {
        piv = i;
        break;
      }
    if (piv < n) {
      (s(piv, piv) > 0 ? out.positive : out.negative) += 1;
      for (std::size_t k = 0; k < n; ++k) {
        if (!live[k] || k == piv || s(k, piv) == 0) continue;
        Rational f = s(k, piv) / s(piv, piv);
        congruence_add(k, piv, -f);
      }
      live[piv] = false;
      --remaining;
      continue;
    }
    std::size_t pi = n, pj = n;
    for (std::size_t i = 0; i < n && pi == n; ++i) {
      if (!live[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j)
        if (live[j] && s(i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
    }
    if (pi == n) {
      out.zero += remaining;
      break;
    }
    // Hyperbolic block [[0,b],[b,0]]: one positive, one negative direction.
    const Rational b = s(pi, pj);
    for (std::size_t k = 0; k < n; ++k) {
      if (!live[k] || k == pi || k == pj) continue;
      Rational alpha = s(k, pj) / b;
      Rational beta = s(k, pi) / b;
      if (alpha != 0) congruence_add(k, pi, -alpha);
      if (beta != 0) congruence_add(k, pj, -beta);
    }
    out.positive += 1;
    out.negative += 1;
    live[pi] = live[pj] = false;
    remaining -= 2;
  }
  return out;
}

Inertia inertia(const ExactMatrix& s) {
  return inertia(s.map<Rational>([](const Integer& x) { return Rational(x); }));
}

long signature(const ExactMatrix& s) { return inertia(s).signature(); }

ExactMatrix congruent_transform(const ExactMatrix& a, const ExactMatrix& t) {
  require(a.square() && a.cols() == t.rows(), "congruence shape mismatch");
  return t.transpose() * a * t;
}

ExactMatrix complete_to_basis(const ExactMatrix& b) {
  const std::size_t n = b.rows(), k = b.cols();
  require(k <= n, "too many columns to complete");
  SnfResult r = snf(b);
  for (const auto& di : r.d)
    require(di == 1, "columns do not span a direct summand");
  ExactMatrix uinv = inverse_unimodular(r.u);
  ExactMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) out(i, j) = b(i, j);
    for (std::size_t j = k; j < n; ++j) out(i, j) = uinv(i, j);
  }
  verify(is_unimodular(out), "basis completion is not unimodular");
  return out;
}

ExactMatrix to_exact(const std::vector<std::vector<long>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows[0].size();
  ExactMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    require(rows[i].size() == c, "ragged matrix");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::string to_string(const ExactMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << m(i, j).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace zslice
