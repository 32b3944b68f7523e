#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zslice/crit2.hpp"
#include "zslice/finpair.hpp"
#include "zslice/knotio.hpp"

namespace zslice {

enum class BoundTag {
  COR53_i, COR53_ii, COR53_iii, COR53_iv, COR53_v,
  LT_SIG, MIN_GENS, ALEX1, GZ_CHAIN,
  WITNESSED, FALLBACK,
};

std::string to_string(BoundTag t);

/// Which lower-bound sources are consulted.
struct BoundOptions {
  bool use_alex1 = true;
  bool use_lt = true;
  bool use_min_gens = true;
  bool use_cor53 = true;
  int lt_max_log2 = 6;
  std::uint64_t seed = 0;
  std::uint64_t search_moves = 100'000;
  long search_entry_bound = 64;
};

/// A bound together with every source attaining it, strongest first.
struct TaggedBound {
  long value = 0;
  std::vector<BoundTag> tags;
};

/// Everything the lower bounds are computed from.
struct Obstructions {
  LaurentPoly alexander;
  Integer determinant;
  std::size_t min_generators = 0;
  std::vector<LtSample> lt;
  long max_abs_lt = 0;
  bool cor53_applicable = false;  // at most two generators
  CyclicDecomposition ell;        // decomposition of l = 2 lk
  std::vector<Cor53Hit> cor53;
};

Obstructions obstructions(const KnotRecord& r, const BoundOptions& opt = {});

TaggedBound gz_lower(const Obstructions& o, const BoundOptions& opt = {});
TaggedBound ua_lower(const Obstructions& o, const BoundOptions& opt = {});
TaggedBound gz_lower(const KnotRecord& r, const BoundOptions& opt = {});
TaggedBound ua_lower(const KnotRecord& r, const BoundOptions& opt = {});

struct UpperSearch {
  long genus = 0;           // size/2 - h
  long h = 0;
  bool witnessed = false;   // false: Seifert genus fallback
  ExactMatrix base_change;  // P with P^T V P carrying the witness block
  std::uint64_t moves = 0;
};

/// Randomized walk over unimodular congruences of V looking for an
/// upper-left 2h block N with det(tN - N^T) = t^h. Deterministic in
/// (seed, name, budget).
UpperSearch gz_upper_search(const KnotRecord& r, std::uint64_t seed, std::uint64_t budget,
                            long entry_bound = 64);

/// det(tN - N^T) == t^h for the 2h x 2h matrix n, decided exactly.
bool alexander_trivial_block(const ExactMatrix& n);

struct BoundReport {
  std::string name;
  TaggedBound gz_lower;
  long gz_upper = 0;
  UpperSearch search;
  TaggedBound ua_lower;
  long ua_upper = 0;
  std::optional<long> gz;  // set when the bounds meet
  Obstructions obs;
};

BoundReport report(const KnotRecord& r, const BoundOptions& opt = {});

/// `name gz_lower(tags) gz_upper(tag) ua_lower(tags) ua_upper [g_Z=N]`
std::string to_line(const BoundReport& r);

std::uint64_t stable_hash(const std::string& s);

}  // namespace zslice
