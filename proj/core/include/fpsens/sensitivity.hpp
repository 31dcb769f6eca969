// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
//! \file fpsens/sensitivity.hpp
//! Adjoint sensitivity kernels of the penetration-depth functionals.
#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "fpsens/functionals.hpp"
#include "fpsens/material.hpp"
#include "fpsens/moment_field.hpp"

namespace fpsens
{
enum class Target
{
    x_bar,
    d_bar,
};

//---------------------------------------------------------------------------//
/*!
 * Energy density of a Frechet derivative.
 *
 * The derivative of the target in direction \f$ \delta \f$ (nodal values of a
 * perturbation of S or T) is \f$ \sum_j w_j g_j \delta_j \f$ with the
 * trapezoidal weights \f$ w_j \f$.
 */
struct SensitivityKernel
{
    Target target = Target::x_bar;
    Coefficient parameter = Coefficient::stopping_power;
    std::vector<double> g;
    std::vector<double> weights;

    //! Directional derivative for nodal perturbation \c delta
    double pair(std::span<double const> delta) const;
};

//! Angular value sum_l (2l+1)/2 P_l(mu) Psi^(l)(e_j, x_i)
double reconstruct(MomentField const& field, std::size_t j, std::size_t i,
                   double mu);

/*!
 * Kernel with respect to the transport coefficient.
 *
 * The angular integral is exact through the Legendre eigenfunction identity,
 * leaving
 * \f[
 *  w_j g_j = -\Delta\varepsilon \sum_i \Delta x \rho_i \sum_l
 *       \tfrac{2l+1}{2} l(l+1) \Psi^{(l)}_{j-1,i} \lambda^{(l)}_{j,i},
 * \f]
 * which pairs each forward level with the adjoint multiplier of the step that
 * produced it, so the kernel is the exact derivative of the discrete solve.
 */
SensitivityKernel kernel_t(MomentField const& psi, MomentField const& lambda,
                           Target target = Target::x_bar);

/*!
 * Kernel with respect to the stopping power.
 *
 * \f[
 *  g_j = \sum_i \Delta x \Big[ q_i \Psi^{(0)}_{j,i}
 *        - \rho_i \sum_l \tfrac{2l+1}{2} \Psi^{(l)}_{j,i}
 *          \frac{\lambda^{(l)}_{j+1,i} - \lambda^{(l)}_{j,i}}{w_j} \Big]
 * \f]
 * with \f$ q_i = x_i \f$ for x-bar and 1 for D-bar. The adjoint difference is
 * centred on the forward energy step it belongs to.
 */
SensitivityKernel kernel_s(MomentField const& psi, MomentField const& lambda,
                           SlabGrid const& slab,
                           Target target = Target::x_bar);

enum class NormalizationMode
{
    approximate,  //!< [x_norm]_P ~ x_P / D
    exact,  //!< full quotient rule with the D-bar kernel
};

struct RelativeSensitivity
{
    Coefficient parameter = Coefficient::stopping_power;
    NormalizationMode mode = NormalizationMode::approximate;
    std::vector<double> normalized;  //!< [x_norm]_P per node
    std::vector<double> values;  //!< [x_norm]_P / x_norm * coefficient
    double sup_norm = 0;
};

/*!
 * Derivative of x_norm = x_bar / D_bar and its relative form.
 *
 * Approximate mode neglects the D-bar derivative; exact mode requires
 * \c dose_kernel and applies the quotient rule.
 */
RelativeSensitivity
normalized_sensitivity(SensitivityKernel const& depth_kernel,
                       SensitivityKernel const* dose_kernel,
                       FunctionalReport const& report,
                       MaterialTable const& material,
                       NormalizationMode mode);

//! CSV `energy_mev,g_S,g_T,rel_S,rel_T`
void write_kernel_csv(EnergyGrid const& grid, SensitivityKernel const& g_s,
                      SensitivityKernel const& g_t,
                      RelativeSensitivity const& rel_s,
                      RelativeSensitivity const& rel_t,
                      std::filesystem::path const& path);

}  // namespace fpsens
