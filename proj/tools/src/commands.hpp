#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace zslice::cli {

struct Common {
  bool json = false;
};

struct BoundsArgs {
  std::string file;
  unsigned threads = 0;  // 0: hardware concurrency
  std::uint64_t seed = 0;
  std::uint64_t moves = 100'000;
  bool no_lt = false, no_cor53 = false, no_min_gens = false, no_alex1 = false;
};

struct CriterionArgs {
  long a1 = 1, q1 = 1, a2 = 1, q2 = 1;
  int u = 1;
};

struct DecomposeArgs {
  std::string file;
  std::string matrix;  // rows separated by ';'
};

struct OddCoverArgs {
  long p = 3, q = 7, k = 1;
  std::string multiplier;  // empty: 3+6t on (3, 7), else the first norm preimage of -1
};

struct SelftestArgs {
  std::vector<int> criteria;
  std::string data;
};

/// Budgets read from OBSTRUCT_BUDGET and PRIME_BOUND.
struct Budgets {
  std::uint64_t isometry = 100'000;
  long prime_bound = 1'000'000;
  static Budgets from_env();
};

/// Each returns the process exit code; library exceptions propagate.
int run_invariants(const std::string& file, const Common& c, std::ostream& out);
int run_bounds(const BoundsArgs& a, const Common& c, std::ostream& out);
int run_obstruct(const std::string& file, const Common& c, std::ostream& out);
int run_decompose(const DecomposeArgs& a, const Common& c, std::ostream& out);
int run_criterion(const CriterionArgs& a, const Common& c, std::ostream& out);
int run_normalize(const std::string& file, const Common& c, std::ostream& out);
int run_verify_odd_cover(const OddCoverArgs& a, const Common& c, std::ostream& out);
int run_selftest(const SelftestArgs& a, const Common& c, std::ostream& out);

/// Contents of a file, or of stdin for "-".
std::string read_input(const std::string& path);

}  // namespace zslice::cli
