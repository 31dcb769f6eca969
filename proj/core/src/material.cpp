// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
#include "fpsens/material.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "fpsens/error.hpp"

namespace fpsens
{
namespace
{
std::string trim(std::string_view s)
{
    auto const first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    auto const last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

double parse_number(std::string const& field, std::size_t line)
{
    try
    {
        std::size_t used = 0;
        double value = std::stod(field, &used);
        if (used != field.size())
            throw std::invalid_argument(field);
        return value;
    }
    catch (std::exception const&)
    {
        fail(ErrorCode::parse_error,
             fmt::format("line {}: '{}' is not a number", line, field));
    }
}

// Linear interpolation on sorted abscissae, clamped to the end values
double clamped_linear(std::span<double const> x,
                      std::span<double const> y,
                      double at)
{
    if (at <= x.front())
        return y.front();
    if (at >= x.back())
        return y.back();
    auto upper = std::upper_bound(x.begin(), x.end(), at);
    auto hi = static_cast<std::size_t>(upper - x.begin());
    auto lo = hi - 1;
    double frac = (at - x[lo]) / (x[hi] - x[lo]);
    return y[lo] + frac * (y[hi] - y[lo]);
}
}  // namespace

//---------------------------------------------------------------------------//
EnergyGrid::EnergyGrid(double cutoff_mev, std::size_t n_nodes)
    : cutoff_(cutoff_mev)
{
    if (!(cutoff_mev > 0) || !std::isfinite(cutoff_mev))
        fail(ErrorCode::invalid_argument,
             fmt::format("energy cutoff must be positive, got {}", cutoff_mev));
    if (n_nodes < 2)
        fail(ErrorCode::invalid_argument,
             fmt::format("energy grid needs at least 2 nodes, got {}", n_nodes));

    spacing_ = cutoff_ / static_cast<double>(n_nodes - 1);
    nodes_.resize(n_nodes);
    for (std::size_t j = 0; j < n_nodes; ++j)
        nodes_[j] = static_cast<double>(j) * spacing_;
    nodes_.back() = cutoff_;
}

std::size_t EnergyGrid::nearest_node(double energy) const noexcept
{
    if (energy <= 0)
        return 0;
    auto j = static_cast<std::size_t>(std::lround(energy / spacing_));
    return std::min(j, this->last());
}

std::vector<double> EnergyGrid::trapezoid_weights() const
{
    std::vector<double> w(nodes_.size(), spacing_);
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

char const* to_string(Coefficient c) noexcept
{
    return c == Coefficient::stopping_power ? "S" : "T";
}

//---------------------------------------------------------------------------//
MaterialTable::MaterialTable(EnergyGrid grid,
                             std::vector<double> stopping_power,
                             std::vector<double> transport,
                             std::string name)
    : grid_(std::move(grid))
    , s_(std::move(stopping_power))
    , t_(std::move(transport))
    , name_(std::move(name))
{
    if (s_.size() != grid_.size() || t_.size() != grid_.size())
        fail(ErrorCode::dimension_mismatch,
             fmt::format("material '{}': {} S and {} T values for {} nodes",
                         name_, s_.size(), t_.size(), grid_.size()));
    for (std::size_t j = 0; j < s_.size(); ++j)
    {
        double e = grid_.node(j);
        if (!std::isfinite(s_[j]) || !std::isfinite(t_[j]))
            fail(ErrorCode::invalid_material,
                 fmt::format("material '{}': non-finite value at {} MeV",
                             name_, e));
        if (s_[j] < 0 || (e > 0 && s_[j] <= 0))
            fail(ErrorCode::invalid_material,
                 fmt::format("material '{}': non-positive S = {} at {} MeV",
                             name_, s_[j], e));
        if (t_[j] < 0)
            fail(ErrorCode::invalid_material,
                 fmt::format("material '{}': negative T = {} at {} MeV",
                             name_, t_[j], e));
    }
}

MaterialTable::MaterialTable(Unchecked, EnergyGrid grid, std::vector<double> s,
                             std::vector<double> t, std::string name)
    : grid_(std::move(grid)), s_(std::move(s)), t_(std::move(t)), name_(std::move(name))
{
    for (std::size_t j = 0; j < s_.size(); ++j)
    {
        if (!std::isfinite(s_[j]) || !std::isfinite(t_[j]))
            fail(ErrorCode::invalid_material,
                 fmt::format("material '{}': non-finite value at {} MeV",
                             name_, grid_.node(j)));
    }
}

MaterialTable
MaterialTable::perturbed(Coefficient which, std::size_t node, double delta) const
{
    if (node >= grid_.size())
        fail(ErrorCode::out_of_range,
             fmt::format("node {} outside grid of {} nodes", node, grid_.size()));
    auto s = s_;
    auto t = t_;
    (which == Coefficient::stopping_power ? s : t)[node] += delta;
    return MaterialTable(Unchecked{}, grid_, std::move(s), std::move(t), name_);
}

MaterialTable MaterialTable::perturbed(Coefficient which,
                                       std::span<double const> delta) const
{
    if (delta.size() != grid_.size())
        fail(ErrorCode::dimension_mismatch,
             fmt::format("perturbation has {} entries for {} nodes",
                         delta.size(), grid_.size()));
    auto s = s_;
    auto t = t_;
    auto& target = (which == Coefficient::stopping_power ? s : t);
    for (std::size_t j = 0; j < target.size(); ++j)
        target[j] += delta[j];
    return MaterialTable(Unchecked{}, grid_, std::move(s), std::move(t), name_);
}

//---------------------------------------------------------------------------//
double interp(MaterialTable const& table, double energy, Coefficient which)
{
    auto const& grid = table.grid();
    double const slack = 1e-12 * grid.cutoff();
    if (!(energy >= -slack && energy <= grid.cutoff() + slack))
        fail(ErrorCode::out_of_range,
             fmt::format("energy {} MeV outside [0, {}] MeV", energy,
                         grid.cutoff()));
    auto values = table.values(which);
    double pos = std::clamp(energy, 0.0, grid.cutoff()) / grid.spacing();
    auto lo = std::min(static_cast<std::size_t>(pos), grid.last() - 1);
    double frac = pos - static_cast<double>(lo);
    if (frac <= 0)
        return values[lo];
    if (frac >= 1)
        return values[lo + 1];
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

MaterialTable resample_material(std::span<double const> energy,
                                std::span<double const> stopping_power,
                                std::span<double const> transport,
                                EnergyGrid const& grid,
                                std::string name)
{
    if (energy.size() != stopping_power.size()
        || energy.size() != transport.size())
        fail(ErrorCode::dimension_mismatch, "column lengths differ");
    if (energy.size() < 2)
        fail(ErrorCode::invalid_material,
             fmt::format("material '{}' needs at least 2 rows, got {}", name,
                         energy.size()));
    for (std::size_t r = 1; r < energy.size(); ++r)
    {
        if (!(energy[r] > energy[r - 1]))
            fail(ErrorCode::non_monotone_grid,
                 fmt::format("non-monotone grid: energy {} follows {}",
                             energy[r], energy[r - 1]));
    }
    for (std::size_t r = 0; r < energy.size(); ++r)
    {
        if (energy[r] > 0 && stopping_power[r] < 0)
            fail(ErrorCode::invalid_material,
                 fmt::format("negative S = {} at {} MeV", stopping_power[r],
                             energy[r]));
        if (transport[r] < 0)
            fail(ErrorCode::invalid_material,
                 fmt::format("negative T = {} at {} MeV", transport[r],
                             energy[r]));
    }

    std::vector<double> s(grid.size());
    std::vector<double> t(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j)
    {
        s[j] = clamped_linear(energy, stopping_power, grid.node(j));
        t[j] = clamped_linear(energy, transport, grid.node(j));
    }
    return MaterialTable(grid, std::move(s), std::move(t), std::move(name));
}

MaterialTable
load_material(std::filesystem::path const& path, EnergyGrid const& grid)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorCode::io_error,
             fmt::format("cannot open material file '{}'", path.string()));

    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<double> e, s, t;
    while (std::getline(in, line))
    {
        ++line_no;
        auto content = trim(line);
        if (content.empty())
            continue;
        if (!have_header)
        {
            std::string compact;
            for (char c : content)
                if (c != ' ' && c != '\t')
                    compact.push_back(c);
            if (compact != "energy_mev,S,T")
                fail(ErrorCode::parse_error,
                     fmt::format("'{}': expected header 'energy_mev,S,T', got "
                                 "'{}'",
                                 path.string(), content));
            have_header = true;
            continue;
        }
        std::stringstream ss(content);
        std::string field;
        std::vector<double> row;
        while (std::getline(ss, field, ','))
            row.push_back(parse_number(trim(field), line_no));
        if (row.size() != 3)
            fail(ErrorCode::parse_error,
                 fmt::format("'{}' line {}: expected 3 columns, got {}",
                             path.string(), line_no, row.size()));
        e.push_back(row[0]);
        s.push_back(row[1]);
        t.push_back(row[2]);
    }
    if (!have_header)
        fail(ErrorCode::parse_error,
             fmt::format("'{}': empty material file", path.string()));

    return resample_material(e, s, t, grid, path.stem().string());
}

void write_material_csv(MaterialTable const& table,
                        std::filesystem::path const& path)
{
    std::ofstream out(path);
    if (!out)
        fail(ErrorCode::io_error,
             fmt::format("cannot write '{}'", path.string()));
    out << "energy_mev,S,T\n";
    auto const& grid = table.grid();
    for (std::size_t j = 0; j < grid.size(); ++j)
    {
        out << fmt::format("{:.17g},{:.17g},{:.17g}\n", grid.node(j),
                           table.stopping_power()[j], table.transport()[j]);
    }
}

//---------------------------------------------------------------------------//
// Collision-dominated shape: steep rise below ~0.5 MeV, nearly flat above.
double water_surrogate_stopping_power(double energy_mev) noexcept
{
    constexpr double plateau = 1.95;
    constexpr double rise = 0.43;
    constexpr double knee = 0.1;
    return plateau + rise / (std::max(energy_mev, 0.0) + knee);
}

// Fokker-Planck coefficient from the Rossi small-angle scattering power,
// T = (E_s / p beta)^2 / (4 X_0), with the kinetic energy offset so T(0) is
// finite.
double water_surrogate_transport(double energy_mev) noexcept
{
    constexpr double electron_mass = 0.51099895;
    constexpr double scale_energy = 21.2;
    constexpr double radiation_length = 36.08;
    constexpr double offset = 0.05;
    double e = std::max(energy_mev, 0.0) + offset;
    double p_beta = e * (e + 2 * electron_mass) / (e + electron_mass);
    double ratio = scale_energy / p_beta;
    return ratio * ratio / (4 * radiation_length);
}

MaterialTable water_surrogate(EnergyGrid const& grid)
{
    std::vector<double> s(grid.size());
    std::vector<double> t(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j)
    {
        s[j] = water_surrogate_stopping_power(grid.node(j));
        t[j] = water_surrogate_transport(grid.node(j));
    }
    return MaterialTable(grid, std::move(s), std::move(t), "water-surrogate");
}

}  // namespace fpsens
