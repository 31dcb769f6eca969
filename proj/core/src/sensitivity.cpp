// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
#include "fpsens/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "fpsens/error.hpp"
#include "fpsens/legendre.hpp"

namespace fpsens
{
double SensitivityKernel::pair(std::span<double const> delta) const
{
    if (delta.size() != g.size())
        fail(ErrorCode::dimension_mismatch,
             fmt::format("kernel has {} nodes, perturbation {}", g.size(),
                         delta.size()));
    double sum = 0;
    for (std::size_t j = 0; j < g.size(); ++j)
        sum += weights[j] * g[j] * delta[j];
    return sum;
}

double reconstruct(MomentField const& field, std::size_t j, std::size_t i,
                   double mu)
{
    if (!(mu >= -1 && mu <= 1))
        fail(ErrorCode::out_of_range,
             fmt::format("direction cosine {} outside [-1, 1]", mu));
    std::vector<double> p(field.moments());
    legendre_all(mu, p);
    auto moments = field.cell(j, i);
    double sum = 0;
    for (std::size_t l = 0; l < p.size(); ++l)
        sum += 0.5 * static_cast<double>(2 * l + 1) * p[l] * moments[l];
    return sum;
}

namespace
{
void check_pair(MomentField const& psi, MomentField const& lambda)
{
    if (psi.kind() != FieldKind::forward || lambda.kind() != FieldKind::adjoint)
        fail(ErrorCode::invalid_argument,
             "kernels need a forward and an adjoint field");
    if (!psi.same_layout(lambda))
        fail(ErrorCode::dimension_mismatch,
             "forward and adjoint fields use different grids or orders");
}
}  // namespace

SensitivityKernel
kernel_t(MomentField const& psi, MomentField const& lambda, Target target)
{
    check_pair(psi, lambda);
    auto const& grid = psi.energy();
    auto const& slab = psi.slab();
    std::size_t const m = psi.moments();

    SensitivityKernel kernel;
    kernel.target = target;
    kernel.parameter = Coefficient::transport;
    kernel.weights = grid.trapezoid_weights();
    kernel.g.assign(grid.size(), 0.0);

    // T_j damps the step from level j down to j-1, so node 0 never enters
    for (std::size_t j = 1; j < grid.size(); ++j)
    {
        double sum = 0;
        for (std::size_t i = 0; i < slab.size(); ++i)
        {
            auto forward = psi.cell(j - 1, i);
            auto adjoint = lambda.cell(j, i);
            double cell = 0;
            for (std::size_t l = 1; l < m; ++l)
            {
                double ld = static_cast<double>(l);
                cell += 0.5 * (2 * ld + 1) * ld * (ld + 1) * forward[l]
                        * adjoint[l];
            }
            sum += slab.dx() * slab.density(i) * cell;
        }
        kernel.g[j] = -grid.spacing() * sum / kernel.weights[j];
    }
    return kernel;
}

SensitivityKernel kernel_s(MomentField const& psi, MomentField const& lambda,
                           SlabGrid const& slab, Target target)
{
    check_pair(psi, lambda);
    if (!(psi.slab() == slab))
        fail(ErrorCode::dimension_mismatch, "slab does not match the fields");
    auto const& grid = psi.energy();
    if (grid.size() < 3)
        fail(ErrorCode::dimension_mismatch,
             fmt::format("stopping-power kernel needs at least 3 energy nodes, "
                         "got {}",
                         grid.size()));
    std::size_t const m = psi.moments();

    SensitivityKernel kernel;
    kernel.target = target;
    kernel.parameter = Coefficient::stopping_power;
    kernel.weights = grid.trapezoid_weights();
    kernel.g.assign(grid.size(), 0.0);

    // Level `last` is identically zero in the forward field
    for (std::size_t j = 0; j < grid.last(); ++j)
    {
        double direct = 0;
        double coupling = 0;
        for (std::size_t i = 0; i < slab.size(); ++i)
        {
            auto forward = psi.cell(j, i);
            auto here = lambda.cell(j, i);
            auto above = lambda.cell(j + 1, i);
            double q = target == Target::x_bar ? slab.center(i) : 1.0;
            direct += slab.dx() * q * forward[0];
            double cell = 0;
            for (std::size_t l = 0; l < m; ++l)
            {
                cell += 0.5 * static_cast<double>(2 * l + 1) * forward[l]
                        * (above[l] - here[l]);
            }
            coupling += slab.dx() * slab.density(i) * cell;
        }
        kernel.g[j] = direct - coupling / kernel.weights[j];
    }
    return kernel;
}

RelativeSensitivity
normalized_sensitivity(SensitivityKernel const& depth_kernel,
                       SensitivityKernel const* dose_kernel,
                       FunctionalReport const& report,
                       MaterialTable const& material,
                       NormalizationMode mode)
{
    if (report.d_bar == 0)
        fail(ErrorCode::degenerate_profile,
             "total dose is zero; normalized sensitivity undefined");
    if (depth_kernel.target != Target::x_bar)
        fail(ErrorCode::invalid_argument,
             "first kernel must be the x-bar kernel");
    std::size_t const n = depth_kernel.g.size();
    if (n != material.grid().size())
        fail(ErrorCode::dimension_mismatch, "kernel does not match material");
    if (mode == NormalizationMode::exact)
    {
        if (!dose_kernel)
            fail(ErrorCode::invalid_argument,
                 "exact normalization needs the D-bar kernel");
        if (dose_kernel->target != Target::d_bar
            || dose_kernel->parameter != depth_kernel.parameter
            || dose_kernel->g.size() != n)
            fail(ErrorCode::dimension_mismatch,
                 "D-bar kernel does not match the x-bar kernel");
    }

    RelativeSensitivity rel;
    rel.parameter = depth_kernel.parameter;
    rel.mode = mode;
    rel.normalized.resize(n);
    rel.values.resize(n);
    auto const coef = material.values(depth_kernel.parameter);
    double const d = report.d_bar;
    for (std::size_t j = 0; j < n; ++j)
    {
        double g = depth_kernel.g[j];
        rel.normalized[j] = mode == NormalizationMode::approximate
                                ? g / d
                                : (g * d - report.x_bar * dose_kernel->g[j])
                                      / (d * d);
        rel.values[j] = rel.normalized[j] / report.x_norm * coef[j];
        rel.sup_norm = std::max(rel.sup_norm, std::abs(rel.values[j]));
    }
    return rel;
}

void write_kernel_csv(EnergyGrid const& grid, SensitivityKernel const& g_s,
                      SensitivityKernel const& g_t,
                      RelativeSensitivity const& rel_s,
                      RelativeSensitivity const& rel_t,
                      std::filesystem::path const& path)
{
    std::ofstream out(path);
    if (!out)
        fail(ErrorCode::io_error,
             fmt::format("cannot write '{}'", path.string()));
    out << "energy_mev,g_S,g_T,rel_S,rel_T\n";
    for (std::size_t j = 0; j < grid.size(); ++j)
    {
        out << fmt::format("{:.10g},{:.17g},{:.17g},{:.17g},{:.17g}\n",
                           grid.node(j), g_s.g[j], g_t.g[j], rel_s.values[j],
                           rel_t.values[j]);
    }
}

}  // namespace fpsens
