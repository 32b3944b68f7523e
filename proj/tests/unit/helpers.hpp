#pragma once

// Shared generators and small brute-force references for the unit tests.

#include <cmath>
#include <complex>
#include <initializer_list>
#include <random>
#include <vector>

#include "zslice/exactmat.hpp"
#include "zslice/knotio.hpp"
#include "zslice/laurent.hpp"

namespace zslice::test {

inline ExactMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<long>> v;
  for (auto r : rows) v.emplace_back(r);
  return to_exact(v);
}

inline long pick(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline ExactMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long range) {
  ExactMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Integer(pick(rng, -range, range));
  return m;
}

inline ExactMatrix random_symmetric(std::mt19937_64& rng, std::size_t n, long range) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = Integer(pick(rng, -range, range));
  return m;
}

/// Seifert matrix S + J with S symmetric and J = sum of [[0,1],[0,0]]
/// blocks, so V - V^T is the standard symplectic form.
inline ExactMatrix random_seifert(std::mt19937_64& rng, std::size_t genus, long range) {
  ExactMatrix v = random_symmetric(rng, 2 * genus, range);
  for (std::size_t i = 0; i < genus; ++i) v(2 * i, 2 * i + 1) += 1;
  return v;
}

/// Determinant by cofactor expansion along the first row.
inline Integer leibniz_det(const ExactMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    ExactMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = a(r, c);
    Integer term = a(0, j) * leibniz_det(minor);
    total += (j % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-22) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  return ev;
}

/// Floating-point signature of (1 - w) V + (1 - conj w) V^T at
/// w = exp(2 pi i j / n), through the real 2n x 2n form of the Hermitian
/// matrix. Returns false when some eigenvalue is too close to zero.
inline bool numeric_lt_signature(const ExactMatrix& v, long j, long n, long& sigma) {
  const std::size_t m = v.rows();
  const double ang = 2 * M_PI * double(j) / double(n);
  const std::complex<double> w(std::cos(ang), std::sin(ang));
  std::vector<std::vector<double>> real(2 * m, std::vector<double>(2 * m));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) {
      const std::complex<double> h = (1.0 - w) * v(r, c).get_d() + (1.0 - std::conj(w)) * v(c, r).get_d();
      real[r][c] = h.real();
      real[r + m][c + m] = h.real();
      real[r][c + m] = -h.imag();
      real[r + m][c] = h.imag();
    }
  long pos = 0, neg = 0;
  for (double e : jacobi_eigenvalues(real)) {
    if (std::abs(e) < 1e-7) return false;
    (e > 0 ? pos : neg) += 1;
  }
  sigma = (pos - neg) / 2;
  return true;
}

inline KnotRecord knot(const std::string& name, const ExactMatrix& v) { return KnotRecord{name, v, "", 0}; }

inline const ExactMatrix& trefoil_v() {
  static const ExactMatrix v = mat({{-1, 1}, {0, -1}});
  return v;
}

inline const ExactMatrix& figure_eight_v() {
  static const ExactMatrix v = mat({{1, 1}, {0, -1}});
  return v;
}

inline LaurentPoly t_() { return LaurentPoly::t(); }
inline LaurentPoly tinv() { return LaurentPoly::monomial(1, -1); }
inline LaurentPoly x_() { return LaurentPoly(2) - t_() - tinv(); }

}  // namespace zslice::test
