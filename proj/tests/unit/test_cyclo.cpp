#include "doctest.h"
#include "helpers.hpp"
#include "zslice/cyclo.hpp"
#include "zslice/errors.hpp"

using namespace zslice;

TEST_SUITE("knotio") {
  TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(1) == std::vector<Integer>{-1, 1});
    CHECK(cyclotomic_polynomial(2) == std::vector<Integer>{1, 1});
    CHECK(cyclotomic_polynomial(4) == std::vector<Integer>{1, 0, 1});
    CHECK(cyclotomic_polynomial(6) == std::vector<Integer>{1, -1, 1});
    CHECK(cyclotomic_polynomial(8) == std::vector<Integer>{1, 0, 0, 0, 1});
    CHECK(cyclotomic_polynomial(12) == std::vector<Integer>{1, 0, -1, 0, 1});
  }

  TEST_CASE("field arithmetic") {
    const CyclotomicField k(12);
    CHECK(k.degree() == 4);
    const auto z = k.zeta_pow(1);
    CHECK(k.mul(k.zeta_pow(5), k.zeta_pow(7)) == k.from_int(1));
    CHECK(k.mul(z, k.conj(z)) == k.from_int(1));
    const auto a = k.add(k.from_int(2), k.zeta_pow(3));
    CHECK(k.mul(a, k.inverse(a)) == k.from_int(1));
    CHECK(k.is_zero(k.sub(a, a)));
  }

  TEST_CASE("certified real signs") {
    const CyclotomicField k(8);
    // zeta + zeta^-1 = 2 cos(2 pi j / 8)
    const auto c = k.add(k.zeta_pow(1), k.zeta_pow(-1));
    CHECK(k.real_sign(c, 1) == 1);
    CHECK(k.real_sign(c, 3) == -1);
    // 2 - sqrt 2 > 0 and a tiny difference: 3 - 2 sqrt 2 = 0.1716...
    CHECK(k.real_sign(k.sub(k.from_int(2), c), 1) == 1);
    CHECK(k.real_sign(k.sub(k.from_int(3), k.scale(c, Rational(2))), 1) == 1);
    CHECK_THROWS_AS(k.real_sign(k.zeta_pow(1), 1), VerificationFailure);
  }

  TEST_CASE("Hermitian signatures over all embeddings") {
    const CyclotomicField k(8);
    const auto c = k.add(k.zeta_pow(1), k.zeta_pow(-1));
    CycloMatrix m{{c}};
    auto s = hermitian_signatures(k, m, {1, 3});
    REQUIRE(s.has_value());
    CHECK(*s == std::vector<long>{1, -1});
    CycloMatrix h{{k.zero(), k.zeta_pow(1)}, {k.zeta_pow(-1), k.zero()}};
    auto sh = hermitian_signatures(k, h, {1, 3});
    REQUIRE(sh.has_value());
    CHECK(*sh == std::vector<long>{0, 0});
    CycloMatrix singular{{k.from_int(1), k.from_int(1)}, {k.from_int(1), k.from_int(1)}};
    CHECK_FALSE(hermitian_signatures(k, singular, {1}).has_value());
  }
}
