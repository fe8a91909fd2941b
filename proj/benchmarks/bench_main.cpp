#include "fintriple/analysis.hpp"
#include "fintriple/calculus.hpp"
#include "fintriple/product.hpp"
#include "fintriple/sampling.hpp"

#include <benchmark/benchmark.h>

using namespace fintriple;

static void BM_Determinant(benchmark::State& state) {
  const IntersectionMatrix q = build_q(Shape::Circle, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(determinant(q));
}
BENCHMARK(BM_Determinant)->RangeMultiplier(2)->Range(8, 128);

static void BM_ValidateAxioms(benchmark::State& state) {
  const Triple t = make_default_triple(Shape::Circle, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(validate_axioms(t));
}
BENCHMARK(BM_ValidateAxioms)->Arg(7)->Arg(31)->Arg(127);

static void BM_CommutatorBlocks(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Triple t = make_default_triple(Shape::Circle, n);
  const AlgebraElement a = TestFunction::builtin(FunctionKind::Sin).sample(Shape::Circle, n);
  for (auto _ : state) benchmark::DoNotOptimize(blocks(commutator(t.dirac, a), t.dirac));
}
BENCHMARK(BM_CommutatorBlocks)->Arg(64)->Arg(1021);

static void BM_ProductBlocks(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const ProductTriple p = tensor_triple(make_default_triple(Shape::Circle, n), make_default_triple(Shape::Circle, n));
  const AlgebraElement a = TestFunction::builtin(FunctionKind::PlaneWave, 1).sample(Shape::Circle, n);
  const AlgebraElement b = TestFunction::builtin(FunctionKind::PlaneWave, 2).sample(Shape::Circle, n);
  for (auto _ : state) benchmark::DoNotOptimize(limit_frame_2d(p, a, b));
}
BENCHMARK(BM_ProductBlocks)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_Leibniz(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const ProductTriple p = tensor_triple(make_default_triple(Shape::Circle, n), make_default_triple(Shape::Circle, n));
  const AlgebraElement a = TestFunction::builtin(FunctionKind::PlaneWave, 1).sample(Shape::Circle, n);
  for (auto _ : state) benchmark::DoNotOptimize(leibniz_residual(p, a, a));
}
BENCHMARK(BM_Leibniz)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_Spectrum(benchmark::State& state) {
  const Triple t = make_default_triple(Shape::Circle, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectrum(t.dirac));
}
BENCHMARK(BM_Spectrum)->Arg(13)->Arg(61)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
