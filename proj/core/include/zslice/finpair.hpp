#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zslice/exactmat.hpp"
#include "zslice/integer.hpp"

namespace zslice {

/// Symmetric Q/Z-valued pairing on the group Z/q_1 + ... + Z/q_n with
/// q_1 | q_2 | ... | q_n, all q_i > 1. gram(i, j) is the value on the i-th and
/// j-th generator, reduced into [0, 1).
struct FinitePairing {
  std::vector<Integer> orders;
  RationalMatrix gram;

  std::size_t rank() const { return orders.size(); }
  Integer group_order() const;
  /// Largest invariant factor (1 for the trivial group).
  Integer exponent() const;
  /// Pairing of two coefficient vectors, reduced mod 1.
  Rational value(const std::vector<Integer>& x, const std::vector<Integer>& y) const;
  bool is_nondegenerate() const;
  /// Checks the stored data: divisibility chain, symmetry, value orders.
  void validate() const;

  friend bool operator==(const FinitePairing& a, const FinitePairing& b) {
    return a.orders == b.orders && a.gram == b.gram;
  }
};

/// Orthogonal sum of cyclic pairings a_i/q_i on Z/q_i, q_1 | q_2 | ...
struct CyclicSummand {
  Integer q;
  Integer a;
  friend bool operator==(const CyclicSummand& x, const CyclicSummand& y) {
    return x.q == y.q && x.a == y.a;
  }
};
using CyclicDecomposition = std::vector<CyclicSummand>;

/// Pairing x^T adj(A) y / det(A) on coker(A). Generators come from the SNF
/// certificate (columns of u^-1 for u A w = diag(d)).
FinitePairing pairing_from_matrix(const ExactMatrix& a);

/// Every value multiplied by c, mod 1.
FinitePairing scaled(const FinitePairing& p, const Integer& c);
inline FinitePairing negated(const FinitePairing& p) { return scaled(p, -1); }

struct DoubleCoverPairings {
  FinitePairing lk;   // presented by V + V^T
  FinitePairing ell;  // 2 * lk
};

DoubleCoverPairings double_cover_pairing(const ExactMatrix& v);

/// Orthogonal cyclic decomposition of a non-degenerate pairing of odd order.
CyclicDecomposition decompose(const FinitePairing& p);

/// Diagonal pairing with the given summands (entries with q = 1 dropped).
FinitePairing rebuild(const CyclicDecomposition& d);

/// Images of the generators of p1 in p2 (coefficient vectors).
using Isometry = std::vector<std::vector<Integer>>;

struct SearchStats {
  std::uint64_t candidates = 0;
};

/// Exhaustive search for an isometry p1 -> p2. Returns nullopt when none
/// exists; throws BudgetExceeded if more than `budget` candidate generator
/// images are tried. Candidates are tried in lexicographic order.
std::optional<Isometry> isometry_search(const FinitePairing& p1, const FinitePairing& p2,
                                        std::uint64_t budget = 100000,
                                        SearchStats* stats = nullptr);

/// Checks that images define a homomorphism p1 -> p2 preserving the pairing.
bool verify_isometry(const FinitePairing& p1, const FinitePairing& p2, const Isometry& images);

std::string to_string(const FinitePairing& p);
std::string to_string(const CyclicDecomposition& d);

}  // namespace zslice
