// Throughput of the hot paths: word products, window enumeration, V_n
// assembly, Psi_n application, the defect survey and the decomposition check.

#include <benchmark/benchmark.h>

#include <random>

#include "fpx/cpmaps.hpp"
#include "fpx/decomp.hpp"
#include "fpx/operators.hpp"
#include "fpx/spaces.hpp"
#include "fpx/words.hpp"

namespace {

using namespace fpx;

FreeProduct z2z3() { return FreeProduct({FactorSpec::cyclic(2), FactorSpec::cyclic(3)}); }
FreeProduct zwindow(int b) { return FreeProduct({FactorSpec::integerWindow(b), FactorSpec::integerWindow(b)}); }
const AliasTable kAliases{{"a", Letter{0, 1}}, {"b", Letter{1, 1}}};

void BM_Multiply(benchmark::State& state) {
  const auto g = z2z3();
  const auto words = g.enumerateWindow(static_cast<std::size_t>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& x = words[i % words.size()];
    const auto& y = words[(i * 7 + 3) % words.size()];
    benchmark::DoNotOptimize(g.multiply(x, y));
    ++i;
  }
}
BENCHMARK(BM_Multiply)->Arg(6)->Arg(12);

void BM_EnumerateWindow(benchmark::State& state) {
  const auto g = z2z3();
  for (auto _ : state) benchmark::DoNotOptimize(g.enumerateWindow(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_EnumerateWindow)->Arg(12)->Arg(20);

void BM_BuildVn(benchmark::State& state) {
  const auto g = z2z3();
  const auto n = static_cast<std::size_t>(state.range(0));
  const WindowBasis basis(g, n + 3);
  for (auto _ : state) benchmark::DoNotOptimize(buildVn(n, basis));
  state.counters["columns"] = static_cast<double>(basis.dimension());
}
BENCHMARK(BM_BuildVn)->Arg(4)->Arg(8)->Arg(12);

void BM_IsometryStreamed(benchmark::State& state) {
  const auto g = zwindow(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(isometryDefect(g, n, n + 3, 0));
}
BENCHMARK(BM_IsometryStreamed)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_ApplyPsi(benchmark::State& state) {
  const auto g = z2z3();
  const auto n = static_cast<std::size_t>(state.range(0));
  const WindowBasis basis(g, n + 3);
  const StinespringDilation psi(n, basis);
  const SparseOp phi = compressPhiN(lambdaOp(g.parseWord("b", kAliases), basis), basis, n);
  for (auto _ : state) benchmark::DoNotOptimize(psi.apply(phi));
}
BENCHMARK(BM_ApplyPsi)->Arg(6)->Arg(10);

void BM_DefectNorm(benchmark::State& state) {
  const auto g = z2z3();
  const auto n = static_cast<std::size_t>(state.range(0));
  const Word b = g.parseWord("b", kAliases);
  const WindowBasis basis(g, n + 2);
  for (auto _ : state) benchmark::DoNotOptimize(defectNorm(b, n, basis));
}
BENCHMARK(BM_DefectNorm)->Arg(9)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_VerifyDecomposition(benchmark::State& state) {
  const auto g = zwindow(4);
  const auto n = static_cast<std::size_t>(state.range(0));
  const Word h = g.parseWord("0:1 1:-2 0:3", kAliases);
  const WindowBasis basis(g, n);
  for (auto _ : state) benchmark::DoNotOptimize(verifyDecomposition(h, n, basis));
}
BENCHMARK(BM_VerifyDecomposition)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ProductPattern(benchmark::State& state) {
  const auto g = z2z3();
  std::mt19937_64 rng(42);
  const SparseOp x = randomJpGenerator(g, 4, 2, rng);
  const SparseOp y = randomJpGenerator(g, 4, 1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(productPatternCheck(g, 4, x, 2, y, 1));
}
BENCHMARK(BM_ProductPattern);

}  // namespace

BENCHMARK_MAIN();
