#include <benchmark/benchmark.h>

#include <random>

#include "zslice/blanch.hpp"
#include "zslice/bounds.hpp"
#include "zslice/crit2.hpp"
#include "zslice/cycres.hpp"
#include "zslice/exactmat.hpp"
#include "zslice/finpair.hpp"
#include "zslice/knotio.hpp"

namespace {

using namespace zslice;

ExactMatrix random_matrix(std::mt19937_64& rng, std::size_t n, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
  return m;
}

// Upper triangular blocks [[0,1],[0,0]] plus a random symmetric part: a
// Seifert matrix of some knot.
ExactMatrix random_seifert(std::mt19937_64& rng, std::size_t g, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  ExactMatrix v(2 * g, 2 * g);
  for (std::size_t i = 0; i < 2 * g; ++i)
    for (std::size_t j = i; j < 2 * g; ++j) v(i, j) = v(j, i) = d(rng);
  for (std::size_t k = 0; k < g; ++k) v(2 * k, 2 * k + 1) += 1;
  return v;
}

void BM_Snf(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const ExactMatrix m = random_matrix(rng, std::size_t(state.range(0)), 20);
  for (auto _ : state) benchmark::DoNotOptimize(snf(m));
}
BENCHMARK(BM_Snf)->Arg(4)->Arg(8)->Arg(16)->Arg(24);

void BM_IsometrySearch(benchmark::State& state) {
  const Integer q = state.range(0);
  FinitePairing a{{q, q}, RationalMatrix(2, 2)}, b = a;
  a.gram(0, 0) = a.gram(1, 1) = Rational(1, q.get_si());
  b.gram(0, 0) = Rational(2, q.get_si());
  b.gram(1, 1) = Rational(q.get_si() - 2, q.get_si()) * Rational(q.get_si() - 1, 1);
  b.gram(1, 1) = frac_mod1(Rational(b.gram(1, 1)));
  for (auto _ : state) benchmark::DoNotOptimize(isometry_search(a, b, 10'000'000));
}
BENCHMARK(BM_IsometrySearch)->Arg(5)->Arg(7)->Arg(11);

void BM_CriterionSweep(benchmark::State& state) {
  const i64 q = state.range(0);
  for (auto _ : state) {
    long hits = 0;
    for (i64 a1 = 1; a1 < q; ++a1)
      for (i64 a2 = 1; a2 < q; ++a2) {
        if (gcd64(a1, q) != 1 || gcd64(a2, q) != 1) continue;
        hits += criterion_B({a1, q, a2, q, -1});
        hits += long(cor53(a1, q, a2, q).size());
      }
    benchmark::DoNotOptimize(hits);
  }
}
BENCHMARK(BM_CriterionSweep)->Arg(27)->Arg(101);

void BM_WitnessMatrix(benchmark::State& state) {
  const CriterionInput in{1, 1, 1, state.range(0), -1};
  for (auto _ : state) {
    const CWitness w = construct_witness(in);
    benchmark::DoNotOptimize(matrix_from_witness(w, in));
  }
}
BENCHMARK(BM_WitnessMatrix)->Arg(3)->Arg(35)->Arg(99);

void BM_NormalizeBlanchfield(benchmark::State& state) {
  // Hyperbolic plane over Lambda plus a diagonal part of the given size.
  const std::size_t extra = std::size_t(state.range(0));
  LambdaMatrix a(2 + extra, 2 + extra);
  a(0, 1) = a(1, 0) = LaurentPoly(1);
  for (std::size_t i = 0; i < extra; ++i) a(2 + i, 2 + i) = LaurentPoly(i % 2 ? -1 : 1);
  if (extra) {
    a(0, 2) = LaurentPoly::t() - LaurentPoly(1);
    a(2, 0) = LaurentPoly::monomial(1, -1) - LaurentPoly(1);
  }
  for (auto _ : state) benchmark::DoNotOptimize(normalize_blanchfield(a));
}
BENCHMARK(BM_NormalizeBlanchfield)->Arg(0)->Arg(2)->Arg(4);

void BM_LtSignatures(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const KnotRecord r{"r", random_seifert(rng, std::size_t(state.range(0)), 3), "", 0};
  for (auto _ : state) benchmark::DoNotOptimize(lt_signature_samples(r, 5));
}
BENCHMARK(BM_LtSignatures)->Arg(1)->Arg(2)->Arg(4);

void BM_BoundReport(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const KnotRecord r{"r", random_seifert(rng, std::size_t(state.range(0)), 3), "", 0};
  BoundOptions opt;
  opt.search_moves = 2000;
  for (auto _ : state) benchmark::DoNotOptimize(report(r, opt));
}
BENCHMARK(BM_BoundReport)->Arg(1)->Arg(2)->Arg(3);

void BM_AllPairingsIsometric(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(all_pairings_isometric(3, state.range(0), 1));
}
BENCHMARK(BM_AllPairingsIsometric)->Arg(7)->Arg(13)->Arg(31);

}  // namespace
BENCHMARK_MAIN();
