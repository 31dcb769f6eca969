// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
#include "fpsens/experiment.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "fpsens/error.hpp"
#include "fpsens/fv_solver.hpp"

namespace fpsens
{
namespace
{
void write_summary(FunctionalReport const& r, RelativeSensitivity const& rel_s,
                   RelativeSensitivity const& rel_t,
                   std::filesystem::path const& path)
{
    nlohmann::ordered_json j;
    j["x_bar"] = r.x_bar;
    j["D_bar"] = r.d_bar;
    j["x_norm"] = r.x_norm;
    j["sup_norm_rel_S"] = rel_s.sup_norm;
    j["sup_norm_rel_T"] = rel_t.sup_norm;
    j["balance_residual"] = r.balance_residual;
    std::ofstream out(path);
    if (!out)
        fail(ErrorCode::io_error,
             fmt::format("cannot write '{}'", path.string()));
    out << j.dump(2) << '\n';
}

template<class F>
auto with_context(char const* stage, F&& f)
{
    try
    {
        return f();
    }
    catch (Error const& e)
    {
        fail(e.code(), fmt::format("{}: {}", stage, e.what()));
    }
}
}  // namespace

RunResult run(RunConfig const& config, unsigned threads)
{
    auto resolved = with_context("config", [&] { return resolve_run(config); });
    auto const& p = resolved.problem;
    auto const& grid = p.grid();

    RunResult result;
    result.output_dir = config.output_dir;
    result.warnings = std::move(resolved.warnings);
    result.n_energy_nodes = grid.size();

    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec)
        fail(ErrorCode::io_error,
             fmt::format("cannot create output directory '{}': {}",
                         config.output_dir.string(), ec.message()));

    auto psi = with_context("forward solve", [&] {
        return solve_forward(p.slab, grid, p.material, p.beam, p.pn, p.options);
    });
    auto d = dose(psi, p.material);
    result.report
        = with_context("functionals", [&] { return report(d, p.beam, grid); });
    write_profile_csv(p.slab, d.values, config.output_dir / "dose_profile.csv");
    write_profile_csv(p.slab, pdd(d), config.output_dir / "pdd.csv");

    if (config.mode == RunMode::forward_only)
        return result;

    auto adjoint = [&](Functional f) {
        auto src = adjoint_source_moments(p.slab, p.material, p.pn, f);
        return solve_adjoint(p.slab, grid, p.material, src, p.pn, p.options);
    };
    auto lambda
        = with_context("adjoint solve", [&] { return adjoint(Functional::average_depth); });
    auto g_s = kernel_s(psi, lambda, p.slab, Target::x_bar);
    auto g_t = kernel_t(psi, lambda, Target::x_bar);

    auto mode = NormalizationMode::approximate;
    std::optional<SensitivityKernel> h_s, h_t;
    if (config.exact_normalization)
    {
        mode = NormalizationMode::exact;
        auto mu = with_context("adjoint solve (total dose)",
                               [&] { return adjoint(Functional::total_dose); });
        h_s = kernel_s(psi, mu, p.slab, Target::d_bar);
        h_t = kernel_t(psi, mu, Target::d_bar);
    }
    result.rel_s = normalized_sensitivity(g_s, h_s ? &*h_s : nullptr,
                                          result.report, p.material, mode);
    result.rel_t = normalized_sensitivity(g_t, h_t ? &*h_t : nullptr,
                                          result.report, p.material, mode);
    write_kernel_csv(grid, g_s, g_t, *result.rel_s, *result.rel_t,
                     config.output_dir / "kernels.csv");
    write_summary(result.report, *result.rel_s, *result.rel_t,
                  config.output_dir / "summary.json");

    if (config.mode != RunMode::with_fd_verify)
        return result;

    FdOracle oracle(p);
    auto nodes = fd_nodes(grid, config.fd.node_stride, p.beam.center);
    result.fd_s = with_context("fd verification (S)", [&] {
        return oracle.verify(g_s, nodes, config.fd.h_rel, threads);
    });
    result.fd_t = with_context("fd verification (T)", [&] {
        return oracle.verify(g_t, nodes, config.fd.h_rel, threads);
    });
    write_fd_csv(std::vector<FdReport>{*result.fd_s, *result.fd_t},
                 config.output_dir / "fd_report.csv");
    return result;
}

std::vector<Table1Row> table1(RunConfig const& base,
                              std::vector<double> const& energies,
                              unsigned threads)
{
    if (energies.empty())
        fail(ErrorCode::empty_batch, "table1 needs at least one beam energy");
    validate_config(base);

    std::vector<std::optional<Table1Row>> rows(energies.size());
    std::exception_ptr error;
    std::mutex error_mutex;

    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    unsigned const inner = std::max(1u, threads / static_cast<unsigned>(
                                                      energies.size()));

    auto job = [&](std::size_t n) {
        RunConfig c = base;
        c.beam.center_mev = energies[n];
        if (c.mode == RunMode::forward_only)
            c.mode = RunMode::with_sensitivities;
        c.output_dir = base.output_dir
                       / fmt::format("beam_{:g}MeV", energies[n]);
        try
        {
            auto r = run(c, inner);
            rows[n] = Table1Row{energies[n], r.report.x_norm,
                                r.rel_t->sup_norm, r.rel_s->sup_norm};
        }
        catch (Error const& e)
        {
            std::lock_guard lock(error_mutex);
            if (!error)
            {
                error = std::make_exception_ptr(Error(
                    e.code(),
                    fmt::format("beam {} MeV: {}", energies[n], e.what())));
            }
        }
        catch (...)
        {
            std::lock_guard lock(error_mutex);
            if (!error)
                error = std::current_exception();
        }
    };
    {
        std::vector<std::jthread> pool;
        for (std::size_t n = 1; n < energies.size(); ++n)
            pool.emplace_back(job, n);
        job(0);
    }

    std::vector<Table1Row> done;
    for (auto const& r : rows)
        if (r)
            done.push_back(*r);
    if (error)
    {
        if (!done.empty())
            write_table1_csv(done, base.output_dir / "table1.partial.csv");
        std::rethrow_exception(error);
    }
    write_table1_csv(done, base.output_dir / "table1.csv");
    return done;
}

void write_table1_csv(std::vector<Table1Row> const& rows,
                      std::filesystem::path const& path)
{
    std::error_code ec;
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path);
    if (!out)
        fail(ErrorCode::io_error,
             fmt::format("cannot write '{}'", path.string()));
    out << "beam_energy_mev,x_norm,sup_norm_rel_T,sup_norm_rel_S\n";
    for (auto const& r : rows)
    {
        out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n",
                           r.beam_energy_mev, r.x_norm, r.sup_norm_rel_t,
                           r.sup_norm_rel_s);
    }
}

}  // namespace fpsens
