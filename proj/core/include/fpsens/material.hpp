// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
//! \file fpsens/material.hpp
//! Energy grids and tabulated stopping power / transport coefficient data.
#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace fpsens
{
//---------------------------------------------------------------------------//
/*!
 * Uniform energy grid on [0, cutoff] in MeV.
 *
 * Node \c j sits at \f$ \varepsilon_j = j \Delta\varepsilon \f$ with
 * \f$ \Delta\varepsilon = \varepsilon_{max} / (n - 1) \f$, so the first node is
 * exactly zero and the last node is exactly the cutoff.
 */
class EnergyGrid
{
  public:
    EnergyGrid(double cutoff_mev, std::size_t n_nodes);

    std::size_t size() const noexcept { return nodes_.size(); }
    double cutoff() const noexcept { return cutoff_; }
    double spacing() const noexcept { return spacing_; }
    double node(std::size_t j) const { return nodes_[j]; }
    std::span<double const> nodes() const noexcept { return nodes_; }
    std::size_t last() const noexcept { return nodes_.size() - 1; }

    //! Index of the node closest to \c energy (clamped to the grid)
    std::size_t nearest_node(double energy) const noexcept;

    //! Trapezoidal quadrature weights for integrals over [0, cutoff]
    std::vector<double> trapezoid_weights() const;

    bool operator==(EnergyGrid const& other) const noexcept
    {
        return cutoff_ == other.cutoff_ && nodes_.size() == other.nodes_.size();
    }

  private:
    double cutoff_;
    double spacing_;
    std::vector<double> nodes_;
};

enum class Coefficient
{
    stopping_power,  //!< S, MeV cm^2/g
    transport,  //!< T, cm^2/g
};

char const* to_string(Coefficient c) noexcept;

//---------------------------------------------------------------------------//
/*!
 * Stopping power and transport coefficient sampled on an EnergyGrid.
 *
 * Values are immutable after construction. Between nodes the table is
 * piecewise linear, so a perturbation of one nodal value is a hat function.
 */
class MaterialTable
{
  public:
    MaterialTable(EnergyGrid grid,
                  std::vector<double> stopping_power,
                  std::vector<double> transport,
                  std::string name);

    EnergyGrid const& grid() const noexcept { return grid_; }
    std::string const& name() const noexcept { return name_; }
    std::span<double const> stopping_power() const noexcept { return s_; }
    std::span<double const> transport() const noexcept { return t_; }
    std::span<double const> values(Coefficient which) const noexcept
    {
        return which == Coefficient::stopping_power ? stopping_power()
                                                    : transport();
    }

    //! Copy with one nodal value shifted by \c delta.
    //! Perturbed tables may carry negative T (finite-difference steps around
    //! a zero coefficient); S positivity is still enforced by the solvers.
    MaterialTable perturbed(Coefficient which, std::size_t node,
                            double delta) const;
    //! Copy with every nodal value shifted by the matching entry of \c delta
    MaterialTable perturbed(Coefficient which,
                            std::span<double const> delta) const;

  private:
    struct Unchecked
    {
    };
    MaterialTable(Unchecked, EnergyGrid grid, std::vector<double> s,
                  std::vector<double> t, std::string name);

    EnergyGrid grid_;
    std::vector<double> s_;
    std::vector<double> t_;
    std::string name_;
};

//! Piecewise-linear evaluation; throws out_of_range outside [0, cutoff]
double interp(MaterialTable const& table, double energy, Coefficient which);

//! Read a CSV with header `energy_mev,S,T` and resample it onto \c grid
MaterialTable
load_material(std::filesystem::path const& path, EnergyGrid const& grid);

//! Resample tabulated points onto \c grid (linear inside, clamped outside)
MaterialTable resample_material(std::span<double const> energy,
                                std::span<double const> stopping_power,
                                std::span<double const> transport,
                                EnergyGrid const& grid,
                                std::string name);

//! Write a table in the same CSV schema load_material reads
void write_material_csv(MaterialTable const& table,
                        std::filesystem::path const& path);

//---------------------------------------------------------------------------//
// ANALYTIC WATER SURROGATE
//---------------------------------------------------------------------------//
//! Smooth stand-in for water stopping power [MeV cm^2/g]
double water_surrogate_stopping_power(double energy_mev) noexcept;
//! Smooth stand-in for the water transport coefficient [cm^2/g]
double water_surrogate_transport(double energy_mev) noexcept;
//! Sample the analytic surrogate at the nodes of \c grid
MaterialTable water_surrogate(EnergyGrid const& grid);

}  // namespace fpsens
