// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
#include "fpsens/fv_solver.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "fpsens/error.hpp"

namespace fpsens
{
void hll_flux(std::span<double const> left, std::span<double const> right,
              FluxMatrix const& a, std::span<double> out) noexcept
{
    std::size_t const n = out.size();
    double const c = a.max_speed();
    // out = A (uL + uR) / 2 - c (uR - uL) / 2, with the tridiagonal product
    // expanded in place
    for (std::size_t k = 0; k < n; ++k)
    {
        double flux = 0;
        if (k > 0)
            flux += a(k, k - 1) * (left[k - 1] + right[k - 1]);
        if (k + 1 < n)
            flux += a(k, k + 1) * (left[k + 1] + right[k + 1]);
        out[k] = 0.5 * flux - 0.5 * c * (right[k] - left[k]);
    }
}

std::vector<double> hll_flux(std::span<double const> left,
                             std::span<double const> right,
                             FluxMatrix const& a)
{
    if (left.size() != a.size() || right.size() != a.size())
        fail(ErrorCode::dimension_mismatch,
             fmt::format("HLL flux: states of size {} and {} for a {}-moment "
                         "system",
                         left.size(), right.size(), a.size()));
    std::vector<double> out(a.size());
    hll_flux(left, right, a, out);
    return out;
}

double max_energy_step(SlabGrid const& slab, MaterialTable const& material,
                       FluxMatrix const& a, double cfl_factor)
{
    auto s = material.stopping_power();
    double s_min = *std::min_element(s.begin(), s.end());
    return cfl_factor * slab.min_density() * s_min * slab.dx() / a.max_speed();
}

void check_cfl(SlabGrid const& slab, MaterialTable const& material,
               FluxMatrix const& a, SolverOptions const& options)
{
    auto s = material.stopping_power();
    if (*std::min_element(s.begin(), s.end()) <= 0)
        fail(ErrorCode::invalid_material,
             "energy marching needs S > 0 at every node, including 0 MeV");
    double allowed = max_energy_step(slab, material, a, options.cfl_factor);
    double step = material.grid().spacing();
    if (step > allowed)
        fail(ErrorCode::cfl_violation,
             fmt::format("energy step {:.6g} MeV exceeds the CFL limit; need "
                         "a step <= {:.6g} MeV (at least {} nodes)",
                         step, allowed,
                         static_cast<std::size_t>(
                             std::ceil(material.grid().cutoff() / allowed))
                             + 1));
}

namespace
{
// Fluxes on all n+1 faces of one level, with explicit ghost states
class FaceFluxes
{
  public:
    FaceFluxes(std::size_t n_cells, std::size_t n_moments)
        : n_cells_(n_cells)
        , n_moments_(n_moments)
        , flux_((n_cells + 1) * n_moments)
        , zero_(n_moments, 0.0)
    {
    }

    void compute(std::span<double const> level,
                 std::span<double const> left_ghost,
                 FluxMatrix const& a)
    {
        for (std::size_t f = 0; f <= n_cells_; ++f)
        {
            auto left = f == 0 ? left_ghost : cell(level, f - 1);
            auto right = f == n_cells_ ? std::span<double const>(zero_)
                                       : cell(level, f);
            hll_flux(left, right, a, face(f));
        }
    }

    std::span<double const> zero() const { return zero_; }

    double divergence(std::size_t i, std::size_t k) const
    {
        return flux_[(i + 1) * n_moments_ + k] - flux_[i * n_moments_ + k];
    }

  private:
    std::size_t n_cells_;
    std::size_t n_moments_;
    std::vector<double> flux_;
    std::vector<double> zero_;

    std::span<double const>
    cell(std::span<double const> level, std::size_t i) const
    {
        return level.subspan(i * n_moments_, n_moments_);
    }
    std::span<double> face(std::size_t f)
    {
        return {flux_.data() + f * n_moments_, n_moments_};
    }
};

void check_level(MomentField const& field, std::size_t j)
{
    for (double v : field.level(j))
    {
        if (!std::isfinite(v))
            fail(ErrorCode::non_finite,
                 fmt::format("{} solve produced a non-finite value at energy "
                             "node {} ({} MeV)",
                             to_string(field.kind()), j,
                             field.energy().node(j)));
    }
}

void check_inputs(SlabGrid const& slab, EnergyGrid const& grid,
                  MaterialTable const& material)
{
    if (!(material.grid() == grid))
        fail(ErrorCode::dimension_mismatch,
             "material table is not sampled on the solver's energy grid");
    if (grid.size() < 2 || slab.size() < 1)
        fail(ErrorCode::dimension_mismatch, "empty solver grid");
}
}  // namespace

//---------------------------------------------------------------------------//
MomentField solve_forward(SlabGrid const& slab,
                          MaterialTable const& material,
                          BoundaryMoments const& inflow,
                          PnConfig const& config,
                          SolverOptions const& options)
{
    auto const& grid = material.grid();
    check_inputs(slab, grid, material);
    auto const a = flux_matrix(config);
    check_cfl(slab, material, a, options);
    std::size_t const m = config.moments();
    if (inflow.energies() != grid.size() || inflow.moments() != m)
        fail(ErrorCode::dimension_mismatch,
             fmt::format("boundary data is {}x{}, solver expects {}x{}",
                         inflow.energies(), inflow.moments(), grid.size(), m));

    auto const d = diffusion_coeffs(config);
    auto const s = material.stopping_power();
    auto const t = material.transport();
    double const de = grid.spacing();
    double const ratio = de / slab.dx();
    std::size_t const n = slab.size();

    MomentField psi(FieldKind::forward, grid, slab, config.order);
    FaceFluxes fluxes(n, m);
    for (std::size_t j = grid.last(); j-- > 0;)
    {
        auto upper = std::as_const(psi).level(j + 1);
        fluxes.compute(upper, inflow.at(j + 1), a);
        auto lower = psi.level(j);
        for (std::size_t i = 0; i < n; ++i)
        {
            double const rho = slab.density(i);
            for (std::size_t k = 0; k < m; ++k)
            {
                double rhs = rho * s[j + 1] * upper[i * m + k]
                             - ratio * fluxes.divergence(i, k);
                lower[i * m + k] = rhs / (rho * (s[j] + de * t[j + 1] * d[k]));
            }
        }
        check_level(psi, j);
    }
    return psi;
}

MomentField solve_forward(SlabGrid const& slab,
                          EnergyGrid const& grid,
                          MaterialTable const& material,
                          BeamSpec const& beam,
                          PnConfig const& config,
                          SolverOptions const& options)
{
    check_inputs(slab, grid, material);
    return solve_forward(slab, material, project_beam(beam, grid, config),
                         config, options);
}

MomentField solve_adjoint(SlabGrid const& slab,
                          EnergyGrid const& grid,
                          MaterialTable const& material,
                          MomentField const& source,
                          PnConfig const& config,
                          SolverOptions const& options)
{
    check_inputs(slab, grid, material);
    if (!(source.energy() == grid) || !(source.slab() == slab)
        || source.order() != config.order)
        fail(ErrorCode::dimension_mismatch,
             "adjoint source does not match the solver grids");
    auto const a = flux_matrix(config);
    auto const reversed = a.reversed();
    check_cfl(slab, material, a, options);

    std::size_t const m = config.moments();
    auto const d = diffusion_coeffs(config);
    auto const s = material.stopping_power();
    auto const t = material.transport();
    auto const w = grid.trapezoid_weights();
    double const de = grid.spacing();
    double const ratio = de / slab.dx();
    std::size_t const n = slab.size();

    MomentField lambda(FieldKind::adjoint, grid, slab, config.order);
    FaceFluxes fluxes(n, m);
    for (std::size_t j = 0; j < grid.last(); ++j)
    {
        auto lower = std::as_const(lambda).level(j);
        auto r = source.level(j);
        fluxes.compute(lower, fluxes.zero(), reversed);
        auto upper = lambda.level(j + 1);
        for (std::size_t i = 0; i < n; ++i)
        {
            double const rho = slab.density(i);
            for (std::size_t k = 0; k < m; ++k)
            {
                double rhs = rho * s[j] * lower[i * m + k]
                             - ratio * fluxes.divergence(i, k)
                             + w[j] * r[i * m + k];
                upper[i * m + k] = rhs / (rho * (s[j] + de * t[j + 1] * d[k]));
            }
        }
        check_level(lambda, j + 1);
    }
    return lambda;
}

}  // namespace fpsens
