// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "fpsens/fv_solver.hpp"
#include "fpsens/functionals.hpp"
#include "fpsens/run_config.hpp"
#include "fpsens/sensitivity.hpp"

namespace
{
using namespace fpsens;

// Default 10 MeV gaussian problem, sized by the cell count
Problem make_problem(std::size_t cells)
{
    RunConfig c;
    c.slab.n_cells = cells;
    return resolve_run(c).problem;
}

void BM_forward(benchmark::State& state)
{
    auto p = make_problem(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
    {
        auto psi = solve_forward(p.slab, p.grid(), p.material, p.beam, p.pn);
        benchmark::DoNotOptimize(psi.values().data());
    }
    state.counters["energy_nodes"] = static_cast<double>(p.grid().size());
}
BENCHMARK(BM_forward)->Arg(75)->Arg(150)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_adjoint(benchmark::State& state)
{
    auto p = make_problem(static_cast<std::size_t>(state.range(0)));
    auto src = adjoint_source_moments(p.slab, p.material, p.pn,
                                      Functional::average_depth);
    for (auto _ : state)
    {
        auto lambda = solve_adjoint(p.slab, p.grid(), p.material, src, p.pn);
        benchmark::DoNotOptimize(lambda.values().data());
    }
}
BENCHMARK(BM_adjoint)->Arg(75)->Arg(150)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_kernels(benchmark::State& state)
{
    auto p = make_problem(300);
    auto psi = solve_forward(p.slab, p.grid(), p.material, p.beam, p.pn);
    auto src = adjoint_source_moments(p.slab, p.material, p.pn,
                                      Functional::average_depth);
    auto lambda = solve_adjoint(p.slab, p.grid(), p.material, src, p.pn);
    for (auto _ : state)
    {
        auto gs = kernel_s(psi, lambda, p.slab);
        auto gt = kernel_t(psi, lambda);
        benchmark::DoNotOptimize(gs.g.data());
        benchmark::DoNotOptimize(gt.g.data());
    }
}
BENCHMARK(BM_kernels)->Unit(benchmark::kMillisecond);

void BM_dose_report(benchmark::State& state)
{
    auto p = make_problem(300);
    auto psi = solve_forward(p.slab, p.grid(), p.material, p.beam, p.pn);
    for (auto _ : state)
    {
        auto r = report(dose(psi, p.material), p.beam, p.grid());
        benchmark::DoNotOptimize(r.x_norm);
    }
}
BENCHMARK(BM_dose_report)->Unit(benchmark::kMicrosecond);
}  // namespace

BENCHMARK_MAIN();
