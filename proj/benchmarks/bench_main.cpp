#include <benchmark/benchmark.h>

#include <string>

#include "ctrc/csr.hpp"
#include "ctrc/interp.hpp"
#include "ctrc/labeled.hpp"
#include "ctrc/xi.hpp"

namespace {

using namespace ctrc;

Cctrs load(const char* name) { return Cctrs::from_file(std::string(CTRC_DATA_DIR) + "/" + name); }

Term even_term(const Cctrs& sys, std::size_t n) {
  Term t = sys.parse_term("0");
  SymbolId s = *sys.signature().find("s");
  for (std::size_t i = 0; i < n; ++i) t = Term::apply(s, {t});
  return label(Term::apply(*sys.signature().find("even"), {t}), sys);
}

void BM_LabeledEvenDh(benchmark::State& state) {
  Cctrs even = load("even.ctrs");
  Term t = even_term(even, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    LabeledEngine engine(even, {1U << 20, 64});
    benchmark::DoNotOptimize(engine.derivation_height(t));
  }
}
BENCHMARK(BM_LabeledEvenDh)->DenseRange(2, 10, 2);

void BM_CsEvenDh(benchmark::State& state) {
  Cctrs even = load("even.ctrs");
  TransformedTrs h = transform(even);
  Term t = zeta(even_term(even, static_cast<std::size_t>(state.range(0))), h);
  for (auto _ : state) {
    CsEngine engine(h, {1U << 20, 64});
    benchmark::DoNotOptimize(engine.derivation_height(t));
  }
}
BENCHMARK(BM_CsEvenDh)->DenseRange(2, 6, 2);

void BM_Complexity(benchmark::State& state) {
  Cctrs fib = load("fib.ctrs");
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        conditional_complexity(fib, static_cast<std::size_t>(state.range(0)), ComplexityMode::crc));
  }
}
BENCHMARK(BM_Complexity)->DenseRange(3, 5);

void BM_Transform(benchmark::State& state) {
  Cctrs fib = load("fib.ctrs");
  for (auto _ : state) benchmark::DoNotOptimize(transform(fib));
}
BENCHMARK(BM_Transform);

void BM_CheckInterpretation(benchmark::State& state) {
  Cctrs fib = load("fib.ctrs");
  TransformedTrs h = transform(fib);
  Interpretation interp = build(load_interpretation(std::string(CTRC_DATA_DIR) + "/fib_usable.interp"), fib, h);
  for (auto _ : state) benchmark::DoNotOptimize(check(interp, fib, h, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_CheckInterpretation)->Arg(2)->Arg(4);

void BM_Bound(benchmark::State& state) {
  Cctrs even = load("even.ctrs");
  TransformedTrs h = transform(even);
  Interpretation interp = build(load_interpretation(std::string(CTRC_DATA_DIR) + "/even_poly.interp"), even, h);
  BoundOptions options;
  options.n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bound(interp, even, h, options));
}
BENCHMARK(BM_Bound)->DenseRange(3, 7, 2);

}  // namespace

BENCHMARK_MAIN();
