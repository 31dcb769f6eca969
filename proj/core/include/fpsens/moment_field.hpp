// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
//! \file fpsens/moment_field.hpp
//! Dense storage for Legendre moments over energy x space.
#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "fpsens/material.hpp"
#include "fpsens/slab.hpp"

namespace fpsens
{
enum class FieldKind
{
    forward,  //!< Psi, zero at the cutoff energy
    adjoint,  //!< lambda, zero at zero energy
    source,  //!< adjoint source moments r
};

char const* to_string(FieldKind kind) noexcept;

//---------------------------------------------------------------------------//
/*!
 * Moments \f$ \Psi^{(k)}(\varepsilon_j, x_i) \f$ for j over energy nodes, i
 * over cells and k = 0..N.
 *
 * Storage is row-major [j][i][k] so that one energy level is contiguous.
 */
class MomentField
{
  public:
    MomentField(FieldKind kind, EnergyGrid energy, SlabGrid slab, int order);

    FieldKind kind() const noexcept { return kind_; }
    EnergyGrid const& energy() const noexcept { return energy_; }
    SlabGrid const& slab() const noexcept { return slab_; }
    int order() const noexcept { return order_; }
    std::size_t moments() const noexcept
    {
        return static_cast<std::size_t>(order_) + 1;
    }

    double& operator()(std::size_t j, std::size_t i, std::size_t k)
    {
        return data_[(j * slab_.size() + i) * moments() + k];
    }
    double operator()(std::size_t j, std::size_t i, std::size_t k) const
    {
        return data_[(j * slab_.size() + i) * moments() + k];
    }

    //! All cells and moments at energy node j
    std::span<double> level(std::size_t j)
    {
        return {data_.data() + j * level_size(), level_size()};
    }
    std::span<double const> level(std::size_t j) const
    {
        return {data_.data() + j * level_size(), level_size()};
    }
    //! Moment vector of cell i at energy node j
    std::span<double const> cell(std::size_t j, std::size_t i) const
    {
        return {data_.data() + (j * slab_.size() + i) * moments(), moments()};
    }

    std::size_t level_size() const noexcept { return slab_.size() * moments(); }
    std::span<double const> values() const noexcept { return data_; }
    std::span<double> values() noexcept { return data_; }

    //! True when both fields share energy grid, slab and order
    bool same_layout(MomentField const& other) const noexcept;

  private:
    FieldKind kind_;
    EnergyGrid energy_;
    SlabGrid slab_;
    int order_;
    std::vector<double> data_;
};

//! Debug dump with header `j,i,k,value`
void write_field_csv(MomentField const& field, std::filesystem::path const& path);

}  // namespace fpsens
