#include <benchmark/benchmark.h>

#include "hwroots/enumerate.hpp"
#include "hwroots/hw.hpp"
#include "hwroots/jet.hpp"
#include "hwroots/poly.hpp"

using namespace hwroots;

namespace {

void bm_parse(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(parse("sin(z)+exp(sin(z))/sqrt(1+tanh(z))"));
    }
}
BENCHMARK(bm_parse);

void bm_jet_of_expr(benchmark::State& state) {
    const ExprPtr f = parse("sin(z)+exp(sin(z))/sqrt(1+tanh(z))");
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(jet_of_expr(f, Complex(0, 0), order));
    }
}
BENCHMARK(bm_jet_of_expr)->Arg(10)->Arg(20)->Arg(40);

void bm_all_roots(benchmark::State& state) {
    // Truncated sin(z) - 1/2 at order 10: a degree-9 polynomial.
    const Jet j = jet_of_expr(parse("sin(z) - 0.5"), Complex(0, 0), 10);
    const Poly p(j.coeffs());
    for (auto _ : state) {
        benchmark::DoNotOptimize(all_roots(p));
    }
}
BENCHMARK(bm_all_roots);

void bm_hw_solve_kepler(benchmark::State& state) {
    HwQuery q;
    q.params = {parse("log(1 - 0.1*sinc(z))")};
    q.y = Complex(1, 0);
    q.order = 10;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hw_solve(q));
    }
}
BENCHMARK(bm_hw_solve_kepler);

void bm_enumerate_cubic(benchmark::State& state) {
    const ExprPtr f = parse("(z-2)*(z-3)*(z-5)");
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_roots(f, Complex(2, 0), 3, {.order = 10}));
    }
}
BENCHMARK(bm_enumerate_cubic);

void bm_enumerate_transcendental(benchmark::State& state) {
    const ExprPtr f = parse("sin(z)+exp(sin(z))/sqrt(1+tanh(z))");
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_roots(f, Complex(0.5, 0), 4, {.order = 10}));
    }
}
BENCHMARK(bm_enumerate_transcendental);

}  // namespace

BENCHMARK_MAIN();
