#include <benchmark/benchmark.h>

#include "jf/forms.hpp"
#include "jf/frobenius.hpp"
#include "jf/theta.hpp"

using jf::cplx;

namespace {

const jf::DomainPoint kPoint{cplx{0.05, 0.02}, cplx{0.21, 0.05}, cplx{0.31, -0.04},
                             cplx{0.13, 1.21}};

void BM_Theta1(benchmark::State& state) {
    const cplx v{0.23, 0.11};
    const cplx tau{0.13, static_cast<double>(state.range(0)) / 10.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(jf::theta1(v, tau));
    }
}
BENCHMARK(BM_Theta1)->Arg(8)->Arg(12)->Arg(20);

void BM_Phi1(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(jf::phi1(kPoint));
    }
}
BENCHMARK(BM_Phi1);

void BM_IntersectionFormFlat(benchmark::State& state) {
    const jf::FlatPoint t = jf::flat_from_domain(kPoint);
    for (auto _ : state) {
        benchmark::DoNotOptimize(jf::intersection_form_flat(t));
    }
}
BENCHMARK(BM_IntersectionFormFlat);

void BM_WdvvResidual(benchmark::State& state) {
    const jf::FlatPoint t = jf::flat_from_domain(kPoint);
    for (auto _ : state) {
        benchmark::DoNotOptimize(jf::wdvv_residual(t));
    }
}
BENCHMARK(BM_WdvvResidual);

}  // namespace

BENCHMARK_MAIN();
