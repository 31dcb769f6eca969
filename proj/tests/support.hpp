// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
//! Shared fixtures for the unit tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <doctest.h>

#include "fpsens/error.hpp"
#include "fpsens/fd_oracle.hpp"
#include "fpsens/material.hpp"
#include "fpsens/pn_system.hpp"
#include "fpsens/slab.hpp"

namespace fpsens::test
{
//! Fresh scratch directory under the system temp dir
inline std::filesystem::path scratch_dir(std::string const& name)
{
    auto dir = std::filesystem::temp_directory_path()
               / ("fpsens_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

//! Small surrogate-water problem with a CFL-stable energy grid
inline Problem small_problem(BeamSpec beam, double length = 3.0,
                             std::size_t cells = 40, int order = 7,
                             double cutoff = 12.0)
{
    SlabGrid slab(length, cells);
    PnConfig pn{order};
    auto a = flux_matrix(pn);
    std::size_t n = 2;
    for (;; n *= 2)
    {
        EnergyGrid grid(cutoff, n * 24 + 1);
        if (grid.spacing() <= max_energy_step(slab, water_surrogate(grid), a, 0.9))
            break;
    }
    EnergyGrid grid(cutoff, n * 24 + 1);
    return Problem{slab, water_surrogate(grid), beam, pn, {}};
}

template<class F>
void check_error(F&& f, ErrorCode expected)
{
    bool thrown = false;
    try
    {
        f();
    }
    catch (Error const& e)
    {
        thrown = true;
        CHECK_MESSAGE(e.code() == expected, e.what());
    }
    CHECK_MESSAGE(thrown, "expected error ", to_string(expected));
}

inline double max_abs(std::span<double const> v)
{
    double m = 0;
    for (double x : v)
        m = std::max(m, std::abs(x));
    return m;
}

inline double max_abs_diff(std::span<double const> a, std::span<double const> b)
{
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace fpsens::test
