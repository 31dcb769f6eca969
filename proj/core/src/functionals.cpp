// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
#include "fpsens/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <fmt/format.h>

#include "fpsens/error.hpp"

namespace fpsens
{
DoseProfile dose(MomentField const& field, MaterialTable const& material)
{
    if (field.kind() != FieldKind::forward)
        fail(ErrorCode::invalid_argument,
             fmt::format("dose needs a forward field, got {}",
                         to_string(field.kind())));
    if (!(field.energy() == material.grid()))
        fail(ErrorCode::dimension_mismatch,
             "material and field use different energy grids");

    auto const w = field.energy().trapezoid_weights();
    auto const s = material.stopping_power();
    DoseProfile result{field.slab(),
                       std::vector<double>(field.slab().size(), 0.0)};
    for (std::size_t j = 0; j < w.size(); ++j)
    {
        double const ws = w[j] * s[j];
        for (std::size_t i = 0; i < result.values.size(); ++i)
            result.values[i] += ws * field(j, i, 0);
    }
    return result;
}

FunctionalReport report(DoseProfile const& dose, BeamSpec const& beam,
                        EnergyGrid const& grid)
{
    auto const& slab = dose.slab;
    if (dose.values.size() != slab.size())
        fail(ErrorCode::dimension_mismatch, "dose profile does not match slab");

    FunctionalReport r;
    double deposited = 0;
    for (std::size_t i = 0; i < slab.size(); ++i)
    {
        double const dd = slab.dx() * dose.values[i];
        r.x_bar += slab.center(i) * dd;
        r.d_bar += dd;
        deposited += slab.density(i) * dd;
    }
    if (r.d_bar == 0 || !std::isfinite(r.d_bar))
        fail(ErrorCode::degenerate_profile,
             fmt::format("total dose is {}; x_norm is undefined", r.d_bar));
    r.x_norm = r.x_bar / r.d_bar;

    double const inflow = energy_inflow(beam, grid.cutoff());
    r.balance_residual = inflow != 0 ? std::abs(deposited - inflow)
                                           / std::abs(inflow)
                                     : std::numeric_limits<double>::infinity();
    return r;
}

std::vector<double> pdd(DoseProfile const& dose)
{
    if (dose.values.empty())
        fail(ErrorCode::degenerate_profile, "empty dose profile");
    double peak = *std::max_element(dose.values.begin(), dose.values.end());
    if (!(peak > 0))
        fail(ErrorCode::degenerate_profile,
             "dose profile has no positive value to normalize");
    std::vector<double> out(dose.values.size());
    std::transform(dose.values.begin(), dose.values.end(), out.begin(),
                   [peak](double v) { return 100 * v / peak; });
    return out;
}

void write_profile_csv(SlabGrid const& slab, std::span<double const> values,
                       std::filesystem::path const& path)
{
    std::ofstream out(path);
    if (!out)
        fail(ErrorCode::io_error,
             fmt::format("cannot write '{}'", path.string()));
    out << "x_cm,value\n";
    for (std::size_t i = 0; i < values.size(); ++i)
        out << fmt::format("{:.10g},{:.17g}\n", slab.center(i), values[i]);
}

}  // namespace fpsens
