#include "doctest.h"
#include "helpers.hpp"
#include "oracle.hpp"
#include "zslice/blanch.hpp"
#include "zslice/errors.hpp"

using namespace zslice;
using namespace zslice::test;

namespace {

const ExactMatrix& hyperbolic() {
  static const ExactMatrix h = mat({{0, 1}, {1, 0}});
  return h;
}

bool is_pm1_diagonal(const ExactMatrix& d) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i == j ? abs(d(i, j)) != 1 : d(i, j) != 0) return false;
  return true;
}

LaurentPoly random_small(std::mt19937_64& rng) {
  return LaurentPoly(int(pick(rng, -2, 2))) + LaurentPoly(int(pick(rng, -1, 1))) * t_() +
         LaurentPoly(int(pick(rng, -1, 1))) * tinv();
}

LaurentPoly random_symmetric_poly(std::mt19937_64& rng) {
  return LaurentPoly(int(pick(rng, -2, 2))) + LaurentPoly(int(pick(rng, -1, 1))) * (t_() + tinv());
}

}  // namespace

TEST_SUITE("blanch") {
  TEST_CASE("parity examples") {
    CHECK(parity(hyperbolic()) == Parity::even);
    CHECK(parity(mat({{1, 0}, {0, -1}})) == Parity::odd);
    CHECK(parity(mat({{2, 1}, {1, 2}})) == Parity::even);
  }

  TEST_CASE("hyperbolic splitting examples") {
    CHECK(split_hyperbolic(hyperbolic()) == ExactMatrix::identity(2));
    CHECK(split_hyperbolic(block_sum(hyperbolic(), hyperbolic())) == ExactMatrix::identity(4));
    CHECK_THROWS_AS(split_hyperbolic(mat({{2, 1}, {1, -2}})), InputError);
    CHECK_THROWS_AS(split_hyperbolic(mat({{1, 0}, {0, -1}})), InputError);
  }

  TEST_CASE("hyperbolic splitting of scrambled even forms") {
    std::mt19937_64 rng(51);
    const ExactMatrix e2 = block_sum(hyperbolic(), hyperbolic());
    const ExactMatrix e3 = block_sum(e2, hyperbolic());
    for (int k = 0; k < 40; ++k) {
      const ExactMatrix& base = k % 2 ? e2 : e3;
      const ExactMatrix s = congruent_transform(base, oracle::random_unimodular(rng, base.rows(), 10));
      const ExactMatrix u = split_hyperbolic(s);
      CHECK(is_unimodular(u));
      const ExactMatrix r = congruent_transform(s, u);
      CHECK(r.submatrix(0, 0, 2, 2) == hyperbolic());
      for (std::size_t j = 2; j < r.rows(); ++j) {
        CHECK(r(0, j) == 0);
        CHECK(r(1, j) == 0);
      }
    }
  }

  TEST_CASE("orthogonal complement") {
    std::mt19937_64 rng(52);
    for (int k = 0; k < 30; ++k) {
      const ExactMatrix s = congruent_transform(mat({{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}),
                                                oracle::random_unimodular(rng, 3, 8));
      const ExactMatrix u = diagonalize_odd(s);
      const ExactMatrix b = u.submatrix(0, 0, 3, 1);
      const ExactMatrix c = orthogonal_complement(s, b);
      CHECK(c.cols() == 2);
      CHECK((b.transpose() * s * c) == ExactMatrix(1, 2));
      ExactMatrix full(3, 3);
      for (std::size_t i = 0; i < 3; ++i) {
        full(i, 0) = b(i, 0);
        full(i, 1) = c(i, 0);
        full(i, 2) = c(i, 1);
      }
      CHECK(is_unimodular(full));
    }
  }

  TEST_CASE("odd diagonalization examples") {
    CHECK(diagonalize_odd(mat({{1, 0}, {0, -1}})) == ExactMatrix::identity(2));
    const ExactMatrix c = mat({{0, 1}, {1, 1}});
    CHECK(congruent_transform(c, diagonalize_odd(c)) == mat({{1, 0}, {0, -1}}));
    const ExactMatrix d = mat({{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    const ExactMatrix u = diagonalize_odd(d);
    CHECK(congruent_transform(d, u) == mat({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(abs(u(i, j)) <= 1);
    CHECK_THROWS_AS(diagonalize_odd(hyperbolic()), InputError);
    CHECK_THROWS_AS(diagonalize_odd(Integer(3) * mat({{2, 1}, {1, 1}})), InputError);
  }

  TEST_CASE("odd diagonalization of scrambled indefinite forms") {
    std::mt19937_64 rng(53);
    for (int k = 0; k < 60; ++k) {
      const std::size_t n = std::size_t(pick(rng, 2, 6));
      std::vector<Integer> signs(n, 1);
      signs[0] = -1;
      for (std::size_t i = 2; i < n; ++i) signs[i] = pick(rng, 0, 1) ? 1 : -1;
      ExactMatrix base = diagonal(signs);
      if (n >= 4 && k % 3 == 0) base = block_sum(hyperbolic(), diagonal(std::vector<Integer>(signs.begin() + 2, signs.end())));
      if (parity(base) == Parity::even) continue;
      const ExactMatrix s = congruent_transform(base, oracle::random_unimodular(rng, n, 14));
      const ExactMatrix u = diagonalize_odd_indefinite(s);
      const ExactMatrix d = congruent_transform(s, u);
      CHECK(is_unimodular(u));
      CHECK(is_pm1_diagonal(d));
      CHECK(signature(d) == signature(s));
      for (std::size_t i = 0; i + 1 < n; ++i) CHECK(d(i, i) >= d(i + 1, i + 1));
    }
  }

  TEST_CASE("definite odd forms") {
    CHECK(diagonalize_odd(ExactMatrix::identity(3)) == ExactMatrix::identity(3));
    std::mt19937_64 rng(54);
    const ExactMatrix s = congruent_transform(ExactMatrix::identity(3), oracle::random_unimodular(rng, 3, 10));
    CHECK(is_pm1_diagonal(congruent_transform(s, diagonalize_odd(s))));
    CHECK_THROWS_AS(diagonalize_odd_indefinite(ExactMatrix::identity(2)), InputError);
  }

  TEST_CASE("parity change on a constant hyperbolic plane") {
    const LambdaMatrix h = lift(hyperbolic());
    const NormalizationCertificate c = even_to_odd(h);
    CHECK(eval_at_pm1(c.b, 1) == mat({{0, 1}, {1, 1}}));
    CHECK(c.det_t == LaurentPoly(1));
    CHECK(check_certificate(h, c, false).empty());
  }

  TEST_CASE("parity change with odd b11") {
    LambdaMatrix a(2, 2);
    a(0, 0) = x_();
    a(0, 1) = a(1, 0) = LaurentPoly(1);
    const NormalizationCertificate c = even_to_odd(a);
    CHECK(c.b(0, 0).eval_at_pm1(1) == 1);
    CHECK(c.det_t == LaurentPoly::monomial(-1, -1));
    CHECK(check_certificate(a, c, false).empty());
  }

  TEST_CASE("parity change leaves odd input alone") {
    const LambdaMatrix a = lift(mat({{1, 0}, {0, -1}}));
    const NormalizationCertificate c = even_to_odd(a);
    CHECK(c.b == a);
    CHECK(c.t == Lambda0Matrix::identity(2));
    CHECK(c.det_t == LaurentPoly(1));
  }

  TEST_CASE("parity change matches the block formulas") {
    // Top-left block [[x b11, 1 + (1-t) b12], [conj, x b22]], optionally
    // followed by a constant hyperbolic plane.
    std::mt19937_64 rng(55);
    const LaurentPoly t = t_(), one = LaurentPoly(1);
    for (int k = 0; k < 80; ++k) {
      const LaurentPoly b11 = random_symmetric_poly(rng), b22 = random_symmetric_poly(rng);
      const LaurentPoly b12 = random_small(rng);
      const std::size_t extra = 2 * std::size_t(pick(rng, 0, 1));
      LambdaMatrix a(2 + extra, 2 + extra);
      a(0, 0) = x_() * b11;
      a(0, 1) = one + (one - t) * b12;
      a(1, 0) = a(0, 1).involute();
      a(1, 1) = x_() * b22;
      if (extra) a(2, 3) = a(3, 2) = LaurentPoly(1);
      const NormalizationCertificate c = even_to_odd(a);
      CHECK(check_certificate(a, c, false).empty());
      const LaurentPoly b12bar = b12.involute();
      if (mpz_even_p(b11.eval_at_pm1(1).get_mpz_t())) {
        CHECK(c.det_t == LaurentPoly(1));
        CHECK(c.b(0, 0) == x_() * b11);
        CHECK(c.b(0, 1) == one + (one - t) * (b12 + b11));
        CHECK(c.b(1, 1) == x_() * b22 + one + b11 + b12 + b12bar);
      } else {
        CHECK(c.det_t == LaurentPoly::monomial(-1, -1));
        CHECK(c.b(0, 0) == b11);
        CHECK(c.b(0, 1) == one + (one - t) * b12);
        CHECK(c.b(1, 1) == x_() * x_() * b22);
      }
      CHECK(parity(eval_at_pm1(c.b, 1)) == Parity::odd);
    }
  }

  TEST_CASE("normalization examples") {
    const LambdaMatrix h = lift(hyperbolic());
    const NormalizationCertificate c = normalize_blanchfield(h);
    CHECK(eval_at_pm1(c.b, 1) == mat({{1, 0}, {0, -1}}));
    CHECK(check_certificate(h, c).empty());

    const LambdaMatrix d = lift(mat({{1, 0}, {0, -1}}));
    const NormalizationCertificate cd = normalize_blanchfield(d);
    CHECK(cd.b == d);

    CHECK_THROWS_AS(normalize_blanchfield(lift(ExactMatrix::identity(2))), InputError);
    CHECK_THROWS_AS(normalize_blanchfield(lift(mat({{1, 1}, {0, 1}}))), InputError);
  }

  TEST_CASE("certificate checks reject tampering") {
    const LambdaMatrix h = lift(hyperbolic());
    NormalizationCertificate c = normalize_blanchfield(h);
    NormalizationCertificate bad = c;
    bad.b(0, 0) = bad.b(0, 0) + x_();
    CHECK_FALSE(check_certificate(h, bad).empty());
    bad = c;
    bad.det_t = -bad.det_t;
    CHECK_FALSE(check_certificate(h, bad).empty());
    CHECK_FALSE(check_certificate(h, even_to_odd(h), true).empty());
  }

  TEST_CASE("normalization of random Hermitian matrices") {
    std::mt19937_64 rng(56);
    for (int k = 0; k < 60; ++k) {
      const std::size_t n = std::size_t(2 + k % 5);
      const bool even = n % 2 == 0 && k % 3 != 0;
      const LambdaMatrix a = oracle::random_hermitian(rng, n, even);
      const NormalizationCertificate c = normalize_blanchfield(a);
      CHECK(check_certificate(a, c).empty());
      CHECK(determinant(c.b) == c.det_t * c.det_t.involute() * determinant(a));
    }
  }

  TEST_CASE("signed unknotting counts") {
    SignedUnknotting d = signed_unknotting_report(lift(mat({{1, 0}, {0, -1}})));
    CHECK(d.positive == 1);
    CHECK(d.negative == 1);
    SignedUnknotting h = signed_unknotting_report(lift(hyperbolic()));
    CHECK(h.positive == 1);
    CHECK(h.negative == 1);
    SignedUnknotting p = signed_unknotting_report(lift(ExactMatrix::identity(2)));
    CHECK(p.positive == 2);
    CHECK(p.negative == 0);
  }

  TEST_CASE("satellite sums") {
    LambdaMatrix ak(1, 1), ap(1, 1);
    ak(0, 0) = LaurentPoly(2) + t_() + tinv();
    ap(0, 0) = LaurentPoly(3) - t_() - tinv();
    CHECK(satellite_sum(ak, ap, 1) == block_sum(ak, ap));
    LambdaMatrix expect(1, 1);
    expect(0, 0) = LaurentPoly(3) - LaurentPoly::monomial(1, 2) - LaurentPoly::monomial(1, -2);
    CHECK(satellite_sum(LambdaMatrix(0, 0), ap, 2) == expect);

    std::mt19937_64 rng(57);
    for (int k = 0; k < 30; ++k) {
      const LambdaMatrix a = oracle::random_hermitian(rng, 2, false);
      const LambdaMatrix b = oracle::random_hermitian(rng, 2 + 2 * std::size_t(k % 2), k % 2 == 1);
      const long w = pick(rng, -3, 3);
      const LambdaMatrix s = satellite_sum(a, b, w);
      CHECK(signature(eval_at_pm1(s, 1)) == signature(eval_at_pm1(a, 1)) + signature(eval_at_pm1(b, 1)));
      CHECK(is_hermitian(s));
    }
  }

  TEST_CASE("lambda matrix files") {
    const LambdaMatrix m = parse_lambda_matrix("# comment\n2\nt^-1 - 1 + t; 1\n1; -1\n");
    CHECK(m(0, 0) == t_() - LaurentPoly(1) + tinv());
    CHECK(m(1, 1) == LaurentPoly(-1));
    CHECK(parse_lambda_matrix(to_string(m)) == m);
    std::mt19937_64 rng(58);
    for (int k = 0; k < 20; ++k) {
      const LambdaMatrix a = oracle::random_hermitian(rng, std::size_t(2 + k % 3), false);
      CHECK(parse_lambda_matrix(to_string(a)) == a);
    }
    CHECK_THROWS_AS(parse_lambda_matrix("2\n1; 0\n"), InputError);
    CHECK_THROWS_AS(parse_lambda_matrix("2\n1; 0\n0; t^\n"), InputError);
    CHECK_THROWS_AS(parse_lambda_matrix(""), InputError);
  }
}
