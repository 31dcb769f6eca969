// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
#include "fpsens/fd_oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "fpsens/error.hpp"
#include "fpsens/functionals.hpp"

namespace fpsens
{
double solve_average_depth(Problem const& problem)
{
    auto psi = solve_forward(problem.slab, problem.grid(), problem.material,
                             problem.beam, problem.pn, problem.options);
    auto d = dose(psi, problem.material);
    double x_bar = 0;
    for (std::size_t i = 0; i < d.values.size(); ++i)
        x_bar += problem.slab.dx() * problem.slab.center(i) * d.values[i];
    return x_bar;
}

FdOracle::FdOracle(Problem base)
    : base_(std::move(base))
    , field_(solve_forward(base_.slab, base_.grid(), base_.material,
                           base_.beam, base_.pn, base_.options))
{
    for (double v : field_.values())
        peak_ = std::max(peak_, std::abs(v));
}

bool FdOracle::populated(Coefficient which, std::size_t node) const
{
    // S_j multiplies level j; T_j damps the step that produces level j-1
    // S_0 Psi^(0) at the lowest level is fixed by the last step's right-hand
    // side, so x-bar does not depend on S_0 at all
    std::size_t level = node;
    if (which == Coefficient::stopping_power && node == 0)
        return false;
    // T_1 only damps the anisotropic moments of level 0, which deposit nothing
    if (which == Coefficient::transport && node == 1)
        return false;
    if (which == Coefficient::transport)
    {
        if (node == 0)
            return false;
        level = node - 1;
    }
    // Levels far below the peak (gaussian tails) move x-bar by less than
    // rounding, which is not a step-size problem
    auto values = field_.level(level);
    double const floor = 1e-8 * peak_;
    return std::any_of(values.begin(), values.end(),
                       [floor](double v) { return std::abs(v) > floor; });
}

double FdOracle::kernel(Coefficient which, std::size_t node, double h_rel) const
{
    auto const& grid = base_.grid();
    if (node >= grid.size())
        fail(ErrorCode::out_of_range,
             fmt::format("node {} outside grid of {} nodes", node, grid.size()));
    if (!(h_rel > 0))
        fail(ErrorCode::invalid_argument, "finite-difference step must be > 0");

    auto values = base_.material.values(which);
    double h = h_rel * std::abs(values[node]);
    if (h == 0)
    {
        double largest = 0;
        for (double v : values)
            largest = std::max(largest, std::abs(v));
        h = h_rel * largest;
    }

    auto run = [&](double delta) {
        Problem p = base_;
        p.material = base_.material.perturbed(which, node, delta);
        try
        {
            return solve_average_depth(p);
        }
        catch (Error const& e)
        {
            fail(e.code(),
                 fmt::format("perturbed solve ({} at node {}, step {:+.3g}) "
                             "failed: {}",
                             to_string(which), node, delta, e.what()));
        }
    };
    double plus = run(h);
    double minus = run(-h);
    double diff = plus - minus;

    double scale = std::max(std::abs(plus), std::abs(minus));
    if (std::abs(diff) <= 8 * std::numeric_limits<double>::epsilon() * scale
        && populated(which, node))
    {
        fail(ErrorCode::resolution_failure,
             fmt::format("step {:.3g} does not resolve {} at node {}: x+ = "
                         "x- = {:.17g}",
                         h, to_string(which), node, plus));
    }
    double w = grid.trapezoid_weights()[node];
    return diff / (2 * h * w);
}

FdReport FdOracle::verify(SensitivityKernel const& adjoint,
                          std::vector<std::size_t> const& nodes,
                          double h_rel,
                          unsigned threads) const
{
    if (adjoint.g.size() != base_.grid().size())
        fail(ErrorCode::dimension_mismatch,
             "adjoint kernel does not match the problem's energy grid");

    FdReport rep;
    rep.parameter = adjoint.parameter;
    rep.h_rel = h_rel;
    rep.nodes = nodes;
    rep.fd_values.assign(nodes.size(), 0.0);
    for (auto j : nodes)
    {
        rep.energies.push_back(base_.grid().node(j));
        rep.adjoint_values.push_back(adjoint.g.at(j));
    }

    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, std::max<std::size_t>(1, nodes.size()));

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t n = next++; n < nodes.size(); n = next++)
        {
            try
            {
                rep.fd_values[n] = this->kernel(adjoint.parameter, nodes[n], h_rel);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next = nodes.size();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t)
            pool.emplace_back(worker);
        worker();
    }
    if (error)
        std::rethrow_exception(error);

    rep.rel_error_linf
        = relative_error_linf(rep.fd_values, rep.adjoint_values, adjoint.g);
    return rep;
}

std::vector<std::size_t>
fd_nodes(EnergyGrid const& grid, std::size_t stride, double center)
{
    if (stride == 0)
        fail(ErrorCode::invalid_argument, "node stride must be positive");
    std::vector<std::size_t> nodes;
    for (std::size_t j = 0; j < grid.size(); j += stride)
        nodes.push_back(j);
    auto c = grid.nearest_node(center);
    if (std::find(nodes.begin(), nodes.end(), c) == nodes.end())
    {
        nodes.push_back(c);
        std::sort(nodes.begin(), nodes.end());
    }
    return nodes;
}

double relative_error_linf(std::vector<double> const& fd,
                           std::vector<double> const& adjoint_at_nodes,
                           std::vector<double> const& adjoint_all)
{
    double peak = 0;
    for (double v : adjoint_all)
        peak = std::max(peak, std::abs(v));
    double const floor = 1e-3 * peak;
    double worst = 0;
    for (std::size_t n = 0; n < fd.size(); ++n)
    {
        double denom = std::max(std::abs(adjoint_at_nodes[n]), floor);
        double err = std::abs(fd[n] - adjoint_at_nodes[n]);
        if (denom > 0)
            worst = std::max(worst, err / denom);
        else if (err > 0)
            worst = std::numeric_limits<double>::infinity();
    }
    return worst;
}

namespace
{
void write_fd_block(std::ostream& out, FdReport const& report)
{
    for (std::size_t n = 0; n < report.nodes.size(); ++n)
    {
        out << fmt::format("{:.10g},{:.17g},{:.17g},{:.17g}\n",
                           report.energies[n], report.fd_values[n],
                           report.adjoint_values[n],
                           std::abs(report.fd_values[n]
                                    - report.adjoint_values[n]));
    }
    out << fmt::format("# parameter={} h_rel={:.3g} nodes={} "
                       "rel_error_linf={:.6e}\n",
                       to_string(report.parameter), report.h_rel,
                       report.nodes.size(), report.rel_error_linf);
}
}  // namespace

void write_fd_csv(FdReport const& report, std::filesystem::path const& path)
{
    write_fd_csv(std::vector<FdReport>{report}, path);
}

void write_fd_csv(std::vector<FdReport> const& reports,
                  std::filesystem::path const& path)
{
    std::ofstream out(path);
    if (!out)
        fail(ErrorCode::io_error,
             fmt::format("cannot write '{}'", path.string()));
    out << "energy_mev,fd,adjoint,abs_err\n";
    for (auto const& r : reports)
        write_fd_block(out, r);
}

}  // namespace fpsens
