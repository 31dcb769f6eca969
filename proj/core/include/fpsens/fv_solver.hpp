// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
//! \file fpsens/fv_solver.hpp
//! Explicit HLL finite-volume energy marching for the forward and adjoint
//! P_N systems.
#pragma once

#include <span>
#include <vector>

#include "fpsens/material.hpp"
#include "fpsens/moment_field.hpp"
#include "fpsens/pn_system.hpp"
#include "fpsens/slab.hpp"

namespace fpsens
{
struct SolverOptions
{
    //! Fraction of the largest stable energy step that may be used
    double cfl_factor = 0.9;
};

//! HLL flux with symmetric wave-speed bounds +/- A.max_speed()
std::vector<double> hll_flux(std::span<double const> left,
                             std::span<double const> right,
                             FluxMatrix const& a);

//! Allocation-free variant; \c out must have the moment count as size
void hll_flux(std::span<double const> left, std::span<double const> right,
              FluxMatrix const& a, std::span<double> out) noexcept;

//! Largest energy step allowed by the CFL bound with the given factor
double max_energy_step(SlabGrid const& slab, MaterialTable const& material,
                       FluxMatrix const& a, double cfl_factor);

//! Throws cfl_violation if the material's grid spacing is too coarse
void check_cfl(SlabGrid const& slab, MaterialTable const& material,
               FluxMatrix const& a, SolverOptions const& options);

/*!
 * March the forward system from the cutoff down to zero energy.
 *
 * Each step solves
 * \f[
 *  \rho_i (S_j + \Delta\varepsilon T_{j+1} d_k) \Psi^j_{ik}
 *  = \rho_i S_{j+1} \Psi^{j+1}_{ik}
 *    - \frac{\Delta\varepsilon}{\Delta x}(F_{i+1/2} - F_{i-1/2})_k
 * \f]
 * with the HLL fluxes evaluated on level j+1. The left ghost state carries the
 * boundary moments \c inflow at level j+1; the right ghost state is vacuum.
 */
MomentField solve_forward(SlabGrid const& slab,
                          MaterialTable const& material,
                          BoundaryMoments const& inflow,
                          PnConfig const& config,
                          SolverOptions const& options = {});

//! Project \c beam and march the forward system
MomentField solve_forward(SlabGrid const& slab,
                          EnergyGrid const& grid,
                          MaterialTable const& material,
                          BeamSpec const& beam,
                          PnConfig const& config,
                          SolverOptions const& options = {});

/*!
 * March the adjoint system from zero energy up to the cutoff.
 *
 * The update is the exact transpose of the forward march: with
 * \f$ \lambda^0 = 0 \f$,
 * \f[
 *  \rho_i (S_j + \Delta\varepsilon T_{j+1} d_k) \lambda^{j+1}_{ik}
 *  = \rho_i S_j \lambda^j_{ik}
 *    - \frac{\Delta\varepsilon}{\Delta x}(\tilde F_{i+1/2} - \tilde F_{i-1/2})_k
 *    + w_j r^j_{ik}
 * \f]
 * where \f$ \tilde F \f$ is the HLL flux for \f$ -A \f$ with zero ghost states
 * on both faces and \f$ w_j \f$ are the trapezoidal energy weights. Node j+1
 * therefore holds the multiplier of the forward step from j+1 down to j.
 */
MomentField solve_adjoint(SlabGrid const& slab,
                          EnergyGrid const& grid,
                          MaterialTable const& material,
                          MomentField const& source,
                          PnConfig const& config,
                          SolverOptions const& options = {});

}  // namespace fpsens
