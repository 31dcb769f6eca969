// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fpsens
{
//! Uniform finite-volume mesh of the slab [0, L] with per-cell density.
class SlabGrid
{
  public:
    //! Homogeneous slab of \c density g/cm^3
    SlabGrid(double length_cm, std::size_t n_cells, double density = 1.0);
    //! Slab with one density per cell
    SlabGrid(double length_cm, std::vector<double> densities);

    double length() const noexcept { return length_; }
    std::size_t size() const noexcept { return density_.size(); }
    double dx() const noexcept { return dx_; }
    double center(std::size_t i) const { return centers_[i]; }
    double density(std::size_t i) const { return density_[i]; }
    std::span<double const> centers() const noexcept { return centers_; }
    std::span<double const> densities() const noexcept { return density_; }
    double min_density() const noexcept;

    bool operator==(SlabGrid const& other) const noexcept
    {
        return length_ == other.length_ && density_ == other.density_;
    }

  private:
    double length_;
    double dx_;
    std::vector<double> centers_;
    std::vector<double> density_;
};

}  // namespace fpsens
