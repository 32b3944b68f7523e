#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zslice/exactmat.hpp"
#include "zslice/laurent.hpp"

namespace zslice {

struct KnotRecord {
  std::string name;
  ExactMatrix seifert;
  std::string source;
  std::size_t line = 0;  // line of the `knot` header, 0 if not from a file
};

/// Records of the form `knot <name>`, `seifert <n>`, then n rows of n
/// integers. `#` starts a comment. Every record is validated; errors carry
/// line numbers.
std::vector<KnotRecord> parse_knot_file(const std::string& text, const std::string& source = "");

/// Canonical text of one record (parse_knot_file round-trips it).
std::string to_string(const KnotRecord& r);

/// Even size and V - V^T unimodular.
void validate(const KnotRecord& r);

LaurentPoly alexander(const KnotRecord& r);
ExactMatrix symmetrized(const KnotRecord& r);  // V + V^T
Integer knot_determinant(const KnotRecord& r);
/// Signature of V + V^T (the Levine-Tristram signature at omega = -1).
long classical_signature(const KnotRecord& r);

/// Signature of (1 - w) V + (1 - conj w) V^T at w = exp(2 pi i j / n), or
/// nullopt when w is a root of the Alexander polynomial.
std::optional<long> lt_signature(const KnotRecord& r, long j, long n);

struct LtSample {
  long j = 1, n = 2;
  long sigma = 0;
};

/// omega = -1 and the primitive 2^a-th roots, 2 <= a <= max_log2, upper
/// half plane only; Alexander roots are skipped.
std::vector<LtSample> lt_signature_samples(const KnotRecord& r, int max_log2 = 6);

/// Symplectic base change P (columns) with P^T (V - V^T) P standard.
ExactMatrix symplectic_basis(const ExactMatrix& skew);

int arf(const KnotRecord& r);

/// Number of invariant factors of V + V^T that exceed 1.
std::size_t min_generators_double_cover(const KnotRecord& r);

}  // namespace zslice
