#pragma once

// Independent reference computations used only by the tests.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <tuple>
#include <vector>

#include "zslice/blanch.hpp"
#include "zslice/finpair.hpp"

namespace zslice::oracle {

using i64 = std::int64_t;

/// Legendre symbol by Euler's criterion, p an odd prime.
int legendre_euler(i64 a, i64 p);

/// Jacobi symbol as a product of Legendre symbols over the factorization
/// of y (trial division).
int jacobi_by_factorization(i64 x, i64 y);

/// Exhaustive: does z^2 = x (mod q) have a solution?
bool is_square_brute(i64 x, i64 q);

/// Histogram of self-values l(x, x) over the whole group, as numerators over
/// the group exponent. A cheap isometry invariant.
std::vector<std::uint32_t> self_value_histogram(const FinitePairing& p);

/// All symmetric 2x2 integer matrices [[a, b], [b, c]] with |entries| <=
/// bound, det = u (mod 4), |det| = q1 q2, coker Z/q1 + Z/q2, grouped by
/// isometry class of the presented pairing. Odd or even matrices only.
class TwoByTwoCatalogue {
 public:
  TwoByTwoCatalogue(i64 q1, i64 q2, int u, long bound, bool odd);

  /// First catalogued matrix presenting a pairing isometric to p.
  std::optional<ExactMatrix> find(const FinitePairing& p) const;
  std::size_t candidates() const { return candidates_; }
  std::size_t classes() const { return reps_.size(); }

 private:
  struct Rep {
    FinitePairing pairing;
    ExactMatrix matrix;
  };
  std::map<std::vector<std::uint32_t>, std::vector<std::size_t>> by_fingerprint_;
  std::vector<Rep> reps_;
  std::size_t candidates_ = 0;
};

/// The exhaustive 2x2 presentation oracle for (a1/q1) + (a2/q2). Catalogues
/// are memoized per (q1, q2, u, bound, parity).
std::optional<ExactMatrix> exhaustive_2x2_oracle(i64 a1, i64 q1, i64 a2, i64 q2, int u, long bound,
                                                 bool odd = true);

/// Random Hermitian matrix over Lambda with A(1) unimodular and indefinite:
/// conj(T)^T (D + x P) T with D a constant diag(+-1) or sum of hyperbolic
/// planes, x = (1-t)(1-t^-1), P Hermitian and T a product of elementary
/// Lambda-matrices.
LambdaMatrix random_hermitian(std::mt19937_64& rng, std::size_t n, bool even);

/// Random unimodular integer matrix (product of elementary moves).
ExactMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int moves = 12);

}  // namespace zslice::oracle
