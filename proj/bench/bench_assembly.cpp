// Parallel element assembly against the serial reference.
#include <benchmark/benchmark.h>

#include <memory>

#include "anisofem/assembly.hpp"
#include "anisofem/norms.hpp"

namespace {

using namespace anisofem;

FemSpace space_for(int n) {
    return FemSpace(std::make_shared<const Mesh>(build_quad_mesh(n, n)), Family::Q2);
}

void BM_AssembleParallel(benchmark::State& state) {
    const FemSpace s = space_for(static_cast<int>(state.range(0)));
    const FieldSpec field = FieldSpec::variable_alpha(2.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble(s, s, FormKind::Full, field));
    }
}

void BM_AssembleSerial(benchmark::State& state) {
    const FemSpace s = space_for(static_cast<int>(state.range(0)));
    const FieldSpec field = FieldSpec::variable_alpha(2.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::assemble(s, s, FormKind::Full, field));
    }
}

void BM_ErrorNormsParallel(benchmark::State& state) {
    const FemSpace s = space_for(static_cast<int>(state.range(0)));
    const ManufacturedCase c{CaseId::Smooth, 2.0, 1e-10};
    const auto u = s.interpolate([&c](double x, double y) { return c.u(x, y); });
    for (auto _ : state) {
        benchmark::DoNotOptimize(error_norms(s, u, c));
    }
}

void BM_ErrorNormsSerial(benchmark::State& state) {
    const FemSpace s = space_for(static_cast<int>(state.range(0)));
    const ManufacturedCase c{CaseId::Smooth, 2.0, 1e-10};
    const auto u = s.interpolate([&c](double x, double y) { return c.u(x, y); });
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::error_norms(
            s, u, [&c](double x, double y) { return c.u(x, y); },
            [&c](double x, double y) { return c.grad_u(x, y); }));
    }
}

BENCHMARK(BM_AssembleParallel)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleSerial)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ErrorNormsParallel)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ErrorNormsSerial)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
