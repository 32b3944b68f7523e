#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zslice/exactmat.hpp"
#include "zslice/finpair.hpp"
#include "zslice/numtheory.hpp"

namespace zslice {

/// Two cyclic summands a1/q1 and a2/q2 (q1 | q2, both odd; q = 1 allowed)
/// and the target determinant class u mod 4.
struct CriterionInput {
  i64 a1 = 1, q1 = 1, a2 = 1, q2 = 1;
  int u = 1;

  void validate() const;
  /// (-1)^((q1 q2 - u)/2)
  int sign() const { return sign_power(q1 * q2, u); }
};

/// Pads a decomposition with at most two summands to (a1, q1, a2, q2).
CriterionInput criterion_input(const CyclicDecomposition& d, int u);

struct CWitness {
  i64 alpha = 1, beta = 0, gamma = 1, lambda1 = 1, lambda2 = 1;
};

/// Conditions (B1) and (B2) of the 2x2 presentation criterion.
bool criterion_B(const CriterionInput& in);
bool criterion_B1(const CriterionInput& in);
bool criterion_B2(const CriterionInput& in);

/// Checks (C1)-(C4).
bool verify_witness(const CriterionInput& in, const CWitness& w);

/// Deterministic prime scan producing a witness; requires criterion_B(in).
/// Throws BudgetExceeded if no prime below prime_bound works.
CWitness construct_witness(const CriterionInput& in, i64 prime_bound = 1'000'000);

/// M = q1 * [[alpha, beta], [beta, gamma]], verified to be odd with
/// det M = u mod 4 and to present the pairing (a1/q1) + (a2/q2).
ExactMatrix matrix_from_witness(const CWitness& w, const CriterionInput& in,
                                std::uint64_t isometry_budget = 100000);

enum class Cor53Case { i, ii, iii, iv, v };

struct Cor53Hit {
  Cor53Case which;
  bool ua_at_least_3;  // cases (i), (ii)
  bool gz_at_least_2;  // always
};

/// Evaluates the five obstruction conditions on the decomposition of the
/// doubled linking pairing (a1/q1, a2/q2).
std::vector<Cor53Hit> cor53(i64 a1, i64 q1, i64 a2, i64 q2);
std::vector<Cor53Hit> cor53(const CyclicDecomposition& d);

std::string to_string(Cor53Case c);

}  // namespace zslice
