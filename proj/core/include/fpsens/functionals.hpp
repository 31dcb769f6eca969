// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
//! \file fpsens/functionals.hpp
//! Dose, penetration-depth functionals and the energy-balance diagnostic.
#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "fpsens/material.hpp"
#include "fpsens/moment_field.hpp"
#include "fpsens/pn_system.hpp"
#include "fpsens/slab.hpp"

namespace fpsens
{
//! Deposited dose per cell, MeV/g per unit fluence
struct DoseProfile
{
    SlabGrid slab;
    std::vector<double> values;
};

struct FunctionalReport
{
    double x_bar = 0;  //!< sum_i dx x_i D_i
    double d_bar = 0;  //!< sum_i dx D_i
    double x_norm = 0;  //!< x_bar / d_bar, cm
    double balance_residual = 0;  //!< |deposited - inflow| / inflow
};

//! D_i = sum_j w_j S_j Psi^(0)_{j,i} with trapezoidal w_j
DoseProfile dose(MomentField const& field, MaterialTable const& material);

/*!
 * Reduce a dose profile to the scalar functionals.
 *
 * The energy balance compares the deposited energy
 * \f$ \sum_i \Delta x \rho_i D_i \f$ against the beam's energy-weighted
 * inflow, which equals \f$ \bar D \f$ for unit density.
 */
FunctionalReport report(DoseProfile const& dose, BeamSpec const& beam,
                        EnergyGrid const& grid);

//! Dose scaled so its maximum is 100
std::vector<double> pdd(DoseProfile const& dose);

//! CSV with header `x_cm,value`
void write_profile_csv(SlabGrid const& slab, std::span<double const> values,
                       std::filesystem::path const& path);

}  // namespace fpsens
