// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
//! \file fpsens/pn_system.hpp
//! Assembly of the slab-geometry P_N moment system.
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fpsens/material.hpp"
#include "fpsens/moment_field.hpp"
#include "fpsens/slab.hpp"

namespace fpsens
{
//! Moment order N; the expansion is closed by dropping moment N+1.
struct PnConfig
{
    int order = 15;

    std::size_t moments() const noexcept
    {
        return static_cast<std::size_t>(order) + 1;
    }
};

//! Throws for N < 1; returns a warning for even orders
std::vector<std::string> check_pn_config(PnConfig const& config);

//---------------------------------------------------------------------------//
/*!
 * Tridiagonal streaming matrix of the P_N system.
 *
 * Row k couples moment k to its neighbours through the Legendre recurrence
 * \f$ \mu P_k = \frac{k}{2k+1} P_{k-1} + \frac{k+1}{2k+1} P_{k+1} \f$.
 * The eigenvalues are the roots of \f$ P_{N+1} \f$, and \c max_speed is the
 * largest of them.
 */
class FluxMatrix
{
  public:
    std::size_t size() const noexcept { return diag_lo_.size() + 1; }
    int order() const noexcept { return static_cast<int>(diag_lo_.size()); }
    double max_speed() const noexcept { return c_max_; }

    //! Dense element access
    double operator()(std::size_t row, std::size_t col) const noexcept;

    //! out = A * in
    void apply(std::span<double const> in, std::span<double> out) const noexcept;

    //! Matrix with every entry negated and the same wave-speed bound
    FluxMatrix reversed() const;

  private:
    friend FluxMatrix flux_matrix(PnConfig const& config);

    std::vector<double> diag_lo_;  //!< A[k][k-1], k = 1..N
    std::vector<double> diag_hi_;  //!< A[k][k+1], k = 0..N-1
    double c_max_ = 0;
};

FluxMatrix flux_matrix(PnConfig const& config);

//! Laplace-Beltrami eigenvalue magnitudes d[k] = k(k+1)
std::vector<double> diffusion_coeffs(PnConfig const& config);

//---------------------------------------------------------------------------//
// BOUNDARY BEAMS
//---------------------------------------------------------------------------//
enum class BeamKind
{
    mono,
    gaussian,
};

struct BeamSpec
{
    BeamKind kind = BeamKind::gaussian;
    double center = 10;  //!< MeV
    double amplitude = 1;  //!< Q0
    double sigma_energy = 0;  //!< MeV, gaussian only
    double sigma_mu = 0;  //!< gaussian only

    //! Q0 delta(mu - 1) delta(e - center)
    static BeamSpec mono(double center_mev, double amplitude = 1);
    //! Gaussian in energy and angle; defaults are 10% FWHM and sigma_mu 0.1
    static BeamSpec gaussian(double center_mev, double amplitude = 1);
    static BeamSpec gaussian(double center_mev, double amplitude,
                             double sigma_energy, double sigma_mu);
};

char const* to_string(BeamKind kind) noexcept;

//! Throws invalid_argument if the beam cannot be placed on the grid
void validate_beam(BeamSpec const& beam, EnergyGrid const& grid);

//! Soft diagnostics: mass beyond the cutoff, less than 4 sigma clearance
std::vector<std::string>
beam_warnings(BeamSpec const& beam, EnergyGrid const& grid);

//! Fraction of the beam's energy profile inside [0, cutoff]
double beam_mass_fraction(BeamSpec const& beam, double cutoff);

//! Energy-weighted inflow \f$ \int \varepsilon \int_0^1 \mu Q \,d\mu\,d\varepsilon \f$
//! over [0, cutoff]
double energy_inflow(BeamSpec const& beam, double cutoff);

//! b^(k)(e_j) stored [j][k]
class BoundaryMoments
{
  public:
    BoundaryMoments(std::size_t n_energy, std::size_t n_moments)
        : n_moments_(n_moments), data_(n_energy * n_moments, 0.0)
    {
    }

    std::size_t energies() const noexcept
    {
        return n_moments_ ? data_.size() / n_moments_ : 0;
    }
    std::size_t moments() const noexcept { return n_moments_; }

    double& operator()(std::size_t j, std::size_t k)
    {
        return data_[j * n_moments_ + k];
    }
    double operator()(std::size_t j, std::size_t k) const
    {
        return data_[j * n_moments_ + k];
    }
    std::span<double const> at(std::size_t j) const
    {
        return {data_.data() + j * n_moments_, n_moments_};
    }

  private:
    std::size_t n_moments_;
    std::vector<double> data_;
};

//! Legendre moments of f over mu; f is negligible outside [lo, hi]
std::vector<double> legendre_moments(std::function<double(double)> const& f,
                                     int order, int quadrature_order,
                                     double lo = -1, double hi = 1,
                                     int panels = 1);

//! Angular moments of the beam's mu profile, integrated to full precision
std::vector<double> beam_angular_moments(BeamSpec const& beam, int order,
                                         int quadrature_order);

/*!
 * Project the beam onto boundary moments.
 *
 * A zero \c quadrature_order selects the default 2(N+1); smaller explicit
 * orders are rejected.
 */
BoundaryMoments project_beam(BeamSpec const& beam, EnergyGrid const& grid,
                             PnConfig const& config, int quadrature_order = 0);

//---------------------------------------------------------------------------//
// ADJOINT SOURCES
//---------------------------------------------------------------------------//
enum class Functional
{
    average_depth,  //!< x-bar = int x D dx
    total_dose,  //!< D-bar = int D dx
};

char const* to_string(Functional f) noexcept;

//! Isotropic source moments r^(0) = 2 x S or 2 S; higher moments vanish
MomentField adjoint_source_moments(SlabGrid const& slab,
                                   MaterialTable const& material,
                                   PnConfig const& config,
                                   Functional functional);

}  // namespace fpsens
