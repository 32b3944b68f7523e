#pragma once

#include <cstdint>
#include <string>

#include "zslice/exactmat.hpp"
#include "zslice/laurent.hpp"

namespace zslice {

enum class Parity { odd, even };

/// Even iff every diagonal entry is even.
Parity parity(const ExactMatrix& s);

/// Limits for the vector searches behind the unimodular-form splittings.
struct LatticeSearchBudget {
  long radius = 20;              // initial L-infinity box
  int widenings = 3;             // box doubles at most this many times
  std::uint64_t max_vectors = 4'000'000;
  std::size_t max_size = 8;
};

/// Basis (columns) of the orthogonal complement of the sublattice spanned by
/// the columns of b, whose Gram matrix b^T s b must be unimodular. Together
/// with b it forms a basis of Z^n.
ExactMatrix orthogonal_complement(const ExactMatrix& s, const ExactMatrix& b);

/// Unimodular u with u^T s u = H + R, H = [[0,1],[1,0]]. s must be even,
/// unimodular and indefinite.
ExactMatrix split_hyperbolic(const ExactMatrix& s, const LatticeSearchBudget& budget = {});

/// Unimodular u with u^T s u diagonal with entries +-1. s must be odd and
/// unimodular; definite inputs succeed only when a norm +-1 splitting exists.
ExactMatrix diagonalize_odd(const ExactMatrix& s, const LatticeSearchBudget& budget = {});

/// Same, restricted to indefinite s.
ExactMatrix diagonalize_odd_indefinite(const ExactMatrix& s, const LatticeSearchBudget& budget = {});

struct NormalizationCertificate {
  LambdaMatrix b;      // conj(t)^T a t
  Lambda0Matrix t;     // over Z[t^{+-1}, (1-t)^-1]
  LaurentPoly det_t;   // +-t^k
};

/// Re-derives every claim of the certificate from a. Returns an empty string
/// on success, otherwise the first failing check.
std::string check_certificate(const LambdaMatrix& a, const NormalizationCertificate& c,
                              bool require_diagonal = true);

/// The parity-changing step: a(1) must be H + R with the first two rows and
/// columns vanishing off the H block. Produces C with C(1) odd. If a(1) is
/// already odd, returns a with the identity certificate.
NormalizationCertificate even_to_odd(const LambdaMatrix& a);

/// Full normalization of a Hermitian matrix with a(1) unimodular and
/// indefinite to one with b(1) = diag(+-1).
NormalizationCertificate normalize_blanchfield(const LambdaMatrix& a,
                                               const LatticeSearchBudget& budget = {});

struct SignedUnknotting {
  std::size_t positive = 0;
  std::size_t negative = 0;
};

/// Counts of +1 and -1 on the diagonalized a(1).
SignedUnknotting signed_unknotting_report(const LambdaMatrix& a,
                                          const LatticeSearchBudget& budget = {});

/// aK + aP(t^w) as a block sum.
LambdaMatrix satellite_sum(const LambdaMatrix& a_k, const LambdaMatrix& a_p, long w);

/// Text format: first line n, then n lines of n ';'-separated polynomials.
LambdaMatrix parse_lambda_matrix(const std::string& text);

}  // namespace zslice
