#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zslice/finpair.hpp"
#include "zslice/laurent.hpp"
#include "zslice/numtheory.hpp"

namespace zslice {

/// Z[t]/(m, Phi_p) with conjugation t -> t^(p-1). Elements are coefficient
/// vectors of length p-1 with entries in [0, m).
class QuotRing {
 public:
  using Elem = std::vector<i64>;

  QuotRing(i64 p, i64 m);

  i64 p() const { return p_; }
  i64 m() const { return m_; }
  std::size_t degree() const { return std::size_t(p_ - 1); }
  /// m^(p-1), or nullopt when it does not fit in 63 bits.
  std::optional<i64> size() const;

  Elem zero() const { return Elem(degree(), 0); }
  Elem one() const { return from_int(1); }
  Elem t() const;
  Elem from_int(i64 c) const;
  /// Reduces coefficients mod m and powers of t mod Phi_p.
  Elem from_laurent(const LaurentPoly& f) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem conj(const Elem& a) const;
  Elem norm(const Elem& a) const;   // a * conj(a)
  Elem trace(const Elem& a) const;  // a + conj(a)

  bool is_fixed(const Elem& a) const { return conj(a) == a; }
  bool is_unit(const Elem& a) const;
  std::optional<Elem> inverse(const Elem& a) const;

  /// Coefficient-lexicographic order: index = sum c_i m^i.
  i64 index(const Elem& a) const;
  Elem element(i64 index) const;

  std::string to_string(const Elem& a) const;

 private:
  i64 p_, m_;
};

enum class RingMap { norm, trace };

/// Exhaustive check that trace maps R onto the fixed subring F, or that norm
/// maps the units of R onto the units of F. |R| must be at most max_size.
bool surjectivity_check(const QuotRing& r, RingMap which, i64 max_size = 1'000'000);

/// First preimage (in enumeration order) under the norm of every element of
/// the fixed subring, built once per ring.
class NormTable {
 public:
  explicit NormTable(const QuotRing& r, i64 max_size = 1'000'000);
  const QuotRing& ring() const { return ring_; }
  /// First lambda with norm(lambda) = x, if any.
  std::optional<QuotRing::Elem> preimage(const QuotRing::Elem& x) const;

 private:
  QuotRing ring_;
  std::vector<i64> first_;  // indexed by element index, -1 if none
};

/// First lambda with norm(lambda) * mu = 1. mu must be a fixed unit.
/// Throws VerificationFailure if none exists.
QuotRing::Elem solve_norm(const QuotRing::Elem& mu, const QuotRing& r);
QuotRing::Elem solve_norm(const QuotRing::Elem& mu, const NormTable& table);

/// Unit lambda with norm(lambda) * v1 = v2 for two 1x1 Hermitian values on
/// R/(m, Phi_p); both must be fixed units.
QuotRing::Elem isometry_cyclic(const QuotRing::Elem& v1, const QuotRing::Elem& v2,
                               const NormTable& table);

/// Hermitian Gram matrix over a QuotRing; entry (i, j) is the numerator of
/// l(g_i, g_j) over m, conjugate-linear in the first slot.
struct HermGram {
  QuotRing ring;
  std::vector<std::vector<QuotRing::Elem>> g;

  std::size_t size() const { return g.size(); }
  bool is_hermitian() const;
  bool is_nondegenerate() const;
};

/// Columns are the images of the generators.
using RingMatrix = std::vector<std::vector<QuotRing::Elem>>;

/// conj(P)^T G P.
HermGram transform(const HermGram& g, const RingMatrix& p);
RingMatrix ring_identity(const QuotRing& r, std::size_t n);

/// Automorphism making the last diagonal entry a unit, either a swap or
/// g_m -> g_m + lambda g_j. Verified by recomputing the Gram matrix.
RingMatrix homogeneous_fix(const HermGram& g);

struct DiagonalForm {
  HermGram diagonal;
  RingMatrix basis;  // columns: new generators in terms of the old ones
};

DiagonalForm gram_schmidt_diag(const HermGram& g);

/// Every pair of non-degenerate 1x1 Hermitian pairings on R/(q^k, Phi_p) is
/// isometric. q must differ from p and the module have at most max_size
/// elements.
bool all_pairings_isometric(i64 p, i64 q, i64 k, i64 max_size = 10'000);

/// Equivariant symmetric pairing on a finite module with an automorphism t of
/// order dividing n. action(i, j): coefficient of generator i in t(g_j).
struct EquivariantPairing {
  FinitePairing lk;
  ExactMatrix action;
  long n = 1;

  void validate() const;
};

/// l'(g_i, g_j) as coefficients of t^0 .. t^(n-1), each reduced mod 1.
using SesqTable = std::vector<std::vector<std::vector<Rational>>>;

SesqTable sesquilinearize(const EquivariantPairing& e);
/// Constant coefficient of every entry.
RationalMatrix recover_lk(const SesqTable& s);

}  // namespace zslice
