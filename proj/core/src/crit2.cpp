#include "zslice/crit2.hpp"

#include "zslice/errors.hpp"

namespace zslice {

void CriterionInput::validate() const {
  require(q1 >= 1 && q2 >= 1 && (q1 & 1) && (q2 & 1), "q1 and q2 must be odd and positive");
  require(q2 % q1 == 0, "q1 must divide q2");
  require(q1 == 1 || gcd64(a1, q1) == 1, "a1 must be coprime to q1");
  require(q2 == 1 || gcd64(a2, q2) == 1, "a2 must be coprime to q2");
  require(u == 1 || u == -1, "u must be +-1");
  require(q1 < (i64(1) << 31) && q2 < (i64(1) << 31), "moduli too large");
}

CriterionInput criterion_input(const CyclicDecomposition& d, int u) {
  require(d.size() <= 2, "criterion needs at most two cyclic summands");
  CriterionInput in;
  in.u = u;
  if (d.size() == 2) {
    in.a1 = to_int64(d[0].a);
    in.q1 = to_int64(d[0].q);
  }
  if (!d.empty()) {
    in.a2 = to_int64(d.back().a);
    in.q2 = to_int64(d.back().q);
  }
  in.validate();
  return in;
}

bool criterion_B1(const CriterionInput& in) {
  in.validate();
  i64 x = mul_mod(mul_mod(in.sign(), in.a1, in.q1), in.a2, in.q1);
  return is_square_mod(x, in.q1);
}

bool criterion_B2(const CriterionInput& in) {
  in.validate();
  if (in.u == 1) return true;
  if ((in.q1 * in.q2) % 4 == 3) return true;
  return jacobi(in.a2, in.q2 / in.q1) == 1;
}

bool criterion_B(const CriterionInput& in) { return criterion_B1(in) && criterion_B2(in); }

bool verify_witness(const CriterionInput& in, const CWitness& w) {
  in.validate();
  const i64 s = in.sign();
  if ((w.alpha & 1) == 0) return false;                                        // (C1)
  __int128 det = static_cast<__int128>(w.alpha) * w.gamma - static_cast<__int128>(w.beta) * w.beta;
  if (det != static_cast<__int128>(s) * (in.q2 / in.q1)) return false;        // (C2)
  i64 l1 = mul_mod(mul_mod(w.lambda1, w.lambda1, in.q1), w.alpha, in.q1);
  if (l1 != mod_floor(in.a1, in.q1)) return false;                             // (C3)
  i64 l2 = mul_mod(mul_mod(w.lambda2, w.lambda2, in.q2), w.alpha, in.q2);
  if (l2 != mod_floor(s * in.a2, in.q2)) return false;                         // (C4)
  return true;
}

CWitness construct_witness(const CriterionInput& in, i64 prime_bound) {
  require(criterion_B(in), "criterion (B) fails: no witness exists");
  const i64 s = in.sign();
  const i64 ratio = in.q2 / in.q1;
  const i64 modulus = 4 * in.q2;

  CWitness w;
  if (in.q1 > 1) {
    // lambda1^2 * s * a2 = a1 (mod q1)
    i64 inv = *inverse_mod(mul_mod(s, in.a2, in.q1), in.q1);
    auto r = sqrt_mod(mul_mod(in.a1, inv, in.q1), in.q1);
    verify(r.has_value(), "(B1) holds but a1/(s a2) has no square root");
    w.lambda1 = *r;
  }
  w.lambda2 = 1;

  for (int sigma1 : {1, -1}) {
    for (int sigma2 : {1, -1}) {
      // p = sigma1 * s * a2 (mod q2), p = sigma2 (mod 4), combined mod 4 q2.
      i64 r2 = mod_floor(i64(sigma1) * s * in.a2, in.q2);
      i64 r4 = mod_floor(i64(sigma2), i64(4));
      i64 start = r2;
      while (mod_floor(start, i64(4)) != r4) start += in.q2;
      for (i64 p = start; p <= prime_bound; p += modulus) {
        if (!is_prime(p)) continue;
        i64 target = mod_floor(-s * ratio, p);
        if (target == 0 || jacobi(target, p) != 1) continue;
        i64 beta = sqrt_mod_prime(target, p);
        i64 alpha = sigma1 * p;
        __int128 num = static_cast<__int128>(s) * ratio + static_cast<__int128>(beta) * beta;
        verify(num % alpha == 0, "witness construction: alpha does not divide s q2/q1 + beta^2");
        w.alpha = alpha;
        w.beta = beta;
        w.gamma = static_cast<i64>(num / alpha);
        verify(verify_witness(in, w), "constructed witness fails (C1)-(C4)");
        return w;
      }
    }
  }
  throw BudgetExceeded("no suitable prime below " + std::to_string(prime_bound));
}

ExactMatrix matrix_from_witness(const CWitness& w, const CriterionInput& in,
                                std::uint64_t isometry_budget) {
  verify(verify_witness(in, w), "witness fails (C1)-(C4)");
  const Integer q1 = static_cast<long>(in.q1);
  ExactMatrix m{{q1 * Integer(static_cast<long>(w.alpha)), q1 * Integer(static_cast<long>(w.beta))},
                {q1 * Integer(static_cast<long>(w.beta)), q1 * Integer(static_cast<long>(w.gamma))}};
  const Integer det = determinant(m);
  verify(mpz_odd_p(m(0, 0).get_mpz_t()) || mpz_odd_p(m(1, 1).get_mpz_t()), "witness matrix is even");
  verify(mod_floor(det, Integer(4)) == mod_floor(Integer(in.u), Integer(4)), "witness matrix has det != u mod 4");
  verify(abs(det) == Integer(static_cast<long>(in.q1)) * Integer(static_cast<long>(in.q2)),
         "witness matrix has the wrong determinant");

  // Constructive check: lambda1 (alpha, beta) and lambda2 (0, 1) generate
  // orthogonal summands with the prescribed values.
  ExactMatrix adj = adjugate(m);
  auto pair = [&](const std::vector<Integer>& x, const std::vector<Integer>& y) {
    Integer num = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) num += x[i] * adj(i, j) * y[j];
    Rational v(num, det);
    v.canonicalize();
    return frac_mod1(v);
  };
  auto in_image = [&](const std::vector<Integer>& x) {
    for (int i = 0; i < 2; ++i) {
      Integer num = adj(i, 0) * x[0] + adj(i, 1) * x[1];
      if (!divides(det, num)) return false;
    }
    return true;
  };
  const Integer l1 = static_cast<long>(w.lambda1), l2 = static_cast<long>(w.lambda2);
  std::vector<Integer> v1{l1 * Integer(static_cast<long>(w.alpha)), l1 * Integer(static_cast<long>(w.beta))};
  std::vector<Integer> v2{0, l2};
  auto frac = [](i64 a, i64 q) {
    Rational r(Integer(static_cast<long>(a)), Integer(static_cast<long>(q)));
    r.canonicalize();
    return frac_mod1(r);
  };
  verify(in_image({q1 * v1[0], q1 * v1[1]}), "first generator order does not divide q1");
  const Integer q2 = static_cast<long>(in.q2);
  verify(in_image({q2 * v2[0], q2 * v2[1]}), "second generator order does not divide q2");
  verify(pair(v1, v1) == frac(in.a1, in.q1), "first generator has the wrong self value");
  verify(pair(v2, v2) == frac(in.a2, in.q2), "second generator has the wrong self value");
  verify(pair(v1, v2) == 0, "generators are not orthogonal");

  // Independent confirmation by search on small groups.
  FinitePairing target = rebuild({{q1, Integer(static_cast<long>(in.a1))},
                                  {q2, Integer(static_cast<long>(in.a2))}});
  if (in.q1 * in.q2 <= 10000) {
    try {
      auto iso = isometry_search(target, pairing_from_matrix(m), isometry_budget);
      verify(iso.has_value(), "witness matrix does not present the pairing");
    } catch (const BudgetExceeded&) {
      // The constructive check above already decides the question.
    }
  }
  return m;
}

std::vector<Cor53Hit> cor53(i64 a1, i64 q1, i64 a2, i64 q2) {
  CriterionInput in{a1, q1, a2, q2, 1};
  in.validate();
  const i64 ratio = q2 / q1;
  const bool sq = is_square_mod(mul_mod(a1, a2, q1), q1);
  const bool neg_sq = is_square_mod(mod_floor(-mul_mod(a1, a2, q1), q1), q1);
  const int jac = jacobi(a2, ratio);
  const i64 r1 = q1 % 4, r2 = q2 % 4;
  std::vector<Cor53Hit> hits;
  // -1 is a square mod every prime q1 = 1 (mod 4) but not mod 9 or 21; without
  // it (B) with u = -1 can still hold, as for (1/9, 2/9).
  const bool minus_one_sq = is_square_mod(q1 - 1, q1);
  if (r1 == 1 && minus_one_sq && !sq) hits.push_back({Cor53Case::i, true, true});
  if (r1 == 3 && r2 == 3 && !sq && jac == -1) hits.push_back({Cor53Case::ii, true, true});
  if (r1 == 3 && r2 == 1 && !sq) hits.push_back({Cor53Case::iii, false, true});
  // Stated for q1 = q2 = 3 (mod 4); what is used is q1 q2 = 1 (mod 4) with -1 a
  // non-square mod q1, which also covers q1 such as 9.
  if ((q1 * q2) % 4 == 1 && !minus_one_sq && !neg_sq) hits.push_back({Cor53Case::iv, false, true});
  if ((q1 * q2) % 4 == 1 && jac == -1) hits.push_back({Cor53Case::v, false, true});
  return hits;
}

std::vector<Cor53Hit> cor53(const CyclicDecomposition& d) {
  CriterionInput in = criterion_input(d, 1);
  return cor53(in.a1, in.q1, in.a2, in.q2);
}

std::string to_string(Cor53Case c) {
  switch (c) {
    case Cor53Case::i: return "i";
    case Cor53Case::ii: return "ii";
    case Cor53Case::iii: return "iii";
    case Cor53Case::iv: return "iv";
    case Cor53Case::v: return "v";
  }
  return "?";
}

}  // namespace zslice
