#include <benchmark/benchmark.h>

#include <random>

#include "ordtww/approx.hpp"
#include "ordtww/contraction.hpp"
#include "ordtww/divisions.hpp"
#include "ordtww/folog.hpp"
#include "ordtww/patterns.hpp"

using namespace ordtww;

namespace {

Matrix random_bits(std::uint64_t seed, std::size_t rows, std::size_t cols) {
  std::mt19937_64 rng(seed);
  std::vector<Symbol> e(rows * cols);
  for (auto& x : e) x = static_cast<Symbol>(rng() & 1u);
  return Matrix(rows, cols, Alphabet::binary(), e);
}

Permutation random_permutation(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::vector<int> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>(i + 1);
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation(v);
}

void BM_ExactTwinwidth(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Matrix m = random_bits(1, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(exact_twinwidth(m).value);
}
BENCHMARK(BM_ExactTwinwidth)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_VerifySequence(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Matrix m = random_bits(2, n, n);
  ContractionSequence s{n, n, {}};
  for (std::size_t i = 1; i < n; ++i) s.merges.push_back({Side::rows, 0, i});
  for (std::size_t j = 1; j < n; ++j) s.merges.push_back({Side::cols, 0, j});
  for (auto _ : state) benchmark::DoNotOptimize(verify_sequence(m, s));
}
BENCHMARK(BM_VerifySequence)->RangeMultiplier(2)->Range(8, 64);

void BM_GridRank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Matrix m = random_bits(3, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(grid_rank(m, 3));
}
BENCHMARK(BM_GridRank)->RangeMultiplier(2)->Range(8, 32)->Unit(benchmark::kMillisecond);

void BM_MarcusTardos(benchmark::State& state) {
  Matrix m = f_matrix_s(PatternSymbol::eq, random_permutation(4, static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(find_mt_division(m, 3));
}
BENCHMARK(BM_MarcusTardos)->RangeMultiplier(2)->Range(8, 32)->Unit(benchmark::kMillisecond);

void BM_ApproxRandom(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Matrix m = random_bits(5, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(approximate_twinwidth(m, 1).kind);
}
BENCHMARK(BM_ApproxRandom)->Arg(12)->Arg(24)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_ApproxPermutation(benchmark::State& state) {
  Matrix m = f_matrix_s(PatternSymbol::eq, random_permutation(6, static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(approximate_twinwidth(m, 1).kind);
}
BENCHMARK(BM_ApproxPermutation)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_ContainsSubmatrix(benchmark::State& state) {
  Matrix big = f_matrix_s(PatternSymbol::eq, random_permutation(7, static_cast<std::size_t>(state.range(0))));
  Matrix small = f_matrix_s(PatternSymbol::eq, Permutation({2, 4, 1, 3}));
  for (auto _ : state) benchmark::DoNotOptimize(contains_submatrix(big, small));
}
BENCHMARK(BM_ContainsSubmatrix)->RangeMultiplier(2)->Range(8, 64);

void BM_DecodePattern(benchmark::State& state) {
  Eta eta(0, 1, 1, 1);
  Matrix m = f_matrix_eta(eta, random_permutation(8, static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(decode_f(eta, m));
}
BENCHMARK(BM_DecodePattern)->RangeMultiplier(4)->Range(16, 256);

void BM_FoEvaluate(benchmark::State& state) {
  std::mt19937_64 rng(9);
  const auto n = static_cast<std::size_t>(state.range(0));
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng() % 4 == 0) g.add_edge(u, v);
  Structure s = Structure::from_graph(g);
  FormulaPtr f = parse_formula("A x. A y. E(x,y) -> E z. E(x,z) & E(z,y) | x<z & z<y", Signature{{}, {"E"}});
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(s, f, {}, 1'000'000'000));
}
BENCHMARK(BM_FoEvaluate)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond);

void BM_MatchingDecoder(benchmark::State& state) {
  std::mt19937_64 rng(10);
  const auto n = static_cast<std::size_t>(state.range(0));
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng() % 2) g.add_edge(u, v);
  OrderedMatching m = encode_graph_as_matching(g);
  for (auto _ : state) benchmark::DoNotOptimize(fo_decode_matching(m, 1'000'000'000));
}
BENCHMARK(BM_MatchingDecoder)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
