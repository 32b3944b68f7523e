#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "zslice/integer.hpp"
#include "zslice/matrix.hpp"

namespace zslice {

using ExactMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

/// Smith normal form with certificate: u * a * w == diag(d) (padded to the
/// shape of a). Invariant factors are non-negative, each divides the next,
/// zeros last. u and w are unimodular.
struct SnfResult {
  std::vector<Integer> d;
  ExactMatrix u;
  ExactMatrix w;
};

SnfResult snf(const ExactMatrix& a);

/// Bareiss fraction-free determinant.
Integer determinant(const ExactMatrix& a);

/// Classical adjoint: a * adjugate(a) == det(a) * I.
ExactMatrix adjugate(const ExactMatrix& a);

/// Inverse of a matrix with determinant +-1.
ExactMatrix inverse_unimodular(const ExactMatrix& a);

bool is_unimodular(const ExactMatrix& a);

/// Counts of positive, negative and zero eigenvalues.
struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;

  long signature() const { return long(positive) - long(negative); }
  bool definite() const {
    return zero == 0 && (positive == 0 || negative == 0);
  }
  bool indefinite() const { return positive > 0 && negative > 0; }
};

/// Exact inertia of a symmetric integer matrix, by rational congruence
/// diagonalization (1x1 pivots, 2x2 hyperbolic pivots on zero diagonals).
Inertia inertia(const ExactMatrix& s);
Inertia inertia(const RationalMatrix& s);

long signature(const ExactMatrix& s);

/// t^T * a * t.
ExactMatrix congruent_transform(const ExactMatrix& a, const ExactMatrix& t);

/// Extends a primitive set of columns b (n x k, spanning a direct summand)
/// to a unimodular n x n matrix whose first k columns are b.
ExactMatrix complete_to_basis(const ExactMatrix& b);

ExactMatrix to_exact(const std::vector<std::vector<long>>& rows);

std::string to_string(const ExactMatrix& m);

}  // namespace zslice
