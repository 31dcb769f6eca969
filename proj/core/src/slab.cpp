// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
#include "fpsens/slab.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "fpsens/error.hpp"

namespace fpsens
{
SlabGrid::SlabGrid(double length_cm, std::size_t n_cells, double density)
    : SlabGrid(length_cm, std::vector<double>(n_cells, density))
{
}

SlabGrid::SlabGrid(double length_cm, std::vector<double> densities)
    : length_(length_cm), density_(std::move(densities))
{
    if (!(length_cm > 0) || !std::isfinite(length_cm))
        fail(ErrorCode::invalid_argument,
             fmt::format("slab length must be positive, got {}", length_cm));
    if (density_.empty())
        fail(ErrorCode::invalid_argument, "slab needs at least one cell");
    for (std::size_t i = 0; i < density_.size(); ++i)
    {
        if (!(density_[i] > 0) || !std::isfinite(density_[i]))
            fail(ErrorCode::invalid_argument,
                 fmt::format("density must be positive, got {} in cell {}",
                             density_[i], i));
    }
    dx_ = length_ / static_cast<double>(density_.size());
    centers_.resize(density_.size());
    for (std::size_t i = 0; i < centers_.size(); ++i)
        centers_[i] = (static_cast<double>(i) + 0.5) * dx_;
}

double SlabGrid::min_density() const noexcept
{
    return *std::min_element(density_.begin(), density_.end());
}

}  // namespace fpsens
