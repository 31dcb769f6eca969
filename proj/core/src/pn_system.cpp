// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
#include "fpsens/pn_system.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "fpsens/error.hpp"
#include "fpsens/legendre.hpp"

namespace fpsens
{
std::vector<std::string> check_pn_config(PnConfig const& config)
{
    if (config.order < 1)
        fail(ErrorCode::invalid_argument,
             fmt::format("P_N order must be at least 1, got {}", config.order));
    std::vector<std::string> warnings;
    if (config.order % 2 == 0)
        warnings.push_back(fmt::format(
            "even P_N order {} has a zero wave speed; odd orders are "
            "recommended",
            config.order));
    return warnings;
}

//---------------------------------------------------------------------------//
double FluxMatrix::operator()(std::size_t row, std::size_t col) const noexcept
{
    if (col + 1 == row)
        return diag_lo_[row - 1];
    if (row + 1 == col)
        return diag_hi_[row];
    return 0.0;
}

void FluxMatrix::apply(std::span<double const> in,
                       std::span<double> out) const noexcept
{
    std::size_t const n = this->size();
    if (n == 1)
    {
        out[0] = 0;
        return;
    }
    out[0] = diag_hi_[0] * in[1];
    for (std::size_t k = 1; k + 1 < n; ++k)
        out[k] = diag_lo_[k - 1] * in[k - 1] + diag_hi_[k] * in[k + 1];
    out[n - 1] = diag_lo_[n - 2] * in[n - 2];
}

FluxMatrix FluxMatrix::reversed() const
{
    FluxMatrix result = *this;
    for (auto& v : result.diag_lo_)
        v = -v;
    for (auto& v : result.diag_hi_)
        v = -v;
    return result;
}

FluxMatrix flux_matrix(PnConfig const& config)
{
    check_pn_config(config);
    int const n = config.order;
    FluxMatrix a;
    a.diag_lo_.resize(n);
    a.diag_hi_.resize(n);
    for (int k = 1; k <= n; ++k)
        a.diag_lo_[k - 1] = static_cast<double>(k) / (2 * k + 1);
    for (int k = 0; k < n; ++k)
        a.diag_hi_[k] = static_cast<double>(k + 1) / (2 * k + 1);
    a.c_max_ = legendre_roots(n + 1).back();
    return a;
}

std::vector<double> diffusion_coeffs(PnConfig const& config)
{
    std::vector<double> d(config.moments());
    for (std::size_t k = 0; k < d.size(); ++k)
        d[k] = static_cast<double>(k * (k + 1));
    return d;
}

//---------------------------------------------------------------------------//
BeamSpec BeamSpec::mono(double center_mev, double amplitude)
{
    BeamSpec b;
    b.kind = BeamKind::mono;
    b.center = center_mev;
    b.amplitude = amplitude;
    return b;
}

BeamSpec BeamSpec::gaussian(double center_mev, double amplitude)
{
    return gaussian(center_mev, amplitude,
                    0.1 * center_mev / std::sqrt(2 * std::numbers::ln2), 0.1);
}

BeamSpec BeamSpec::gaussian(double center_mev, double amplitude,
                            double sigma_energy, double sigma_mu)
{
    BeamSpec b;
    b.kind = BeamKind::gaussian;
    b.center = center_mev;
    b.amplitude = amplitude;
    b.sigma_energy = sigma_energy;
    b.sigma_mu = sigma_mu;
    return b;
}

char const* to_string(BeamKind kind) noexcept
{
    return kind == BeamKind::mono ? "mono" : "gaussian";
}

namespace
{
double energy_profile(BeamSpec const& beam, double e)
{
    double z = (e - beam.center) / beam.sigma_energy;
    return std::exp(-0.5 * z * z);
}

double angular_profile(BeamSpec const& beam, double mu)
{
    double z = (mu - 1) / beam.sigma_mu;
    return std::exp(-0.5 * z * z);
}

// Region where the angular gaussian exceeds exp(-72) of its peak
double angular_window_lo(BeamSpec const& beam)
{
    return std::max(-1.0, 1 - 12 * beam.sigma_mu);
}

int panels_for(double width, double scale)
{
    return std::max(1, static_cast<int>(std::ceil(width / scale)));
}

bool on_grid(double energy, EnergyGrid const& grid)
{
    double node = grid.node(grid.nearest_node(energy));
    return std::abs(node - energy) <= 1e-9 * grid.spacing();
}
}  // namespace

void validate_beam(BeamSpec const& beam, EnergyGrid const& grid)
{
    if (!(beam.center > 0 && beam.center < grid.cutoff()))
        fail(ErrorCode::invalid_argument,
             fmt::format("beam center {} MeV must lie in (0, {}) MeV",
                         beam.center, grid.cutoff()));
    if (!std::isfinite(beam.amplitude))
        fail(ErrorCode::invalid_argument, "beam amplitude must be finite");
    if (beam.kind == BeamKind::gaussian)
    {
        if (!(beam.sigma_energy > 0))
            fail(ErrorCode::invalid_argument,
                 fmt::format("gaussian beam needs sigma_energy > 0, got {}",
                             beam.sigma_energy));
        if (!(beam.sigma_mu > 0))
            fail(ErrorCode::invalid_argument,
                 fmt::format("gaussian beam needs sigma_mu > 0, got {}",
                             beam.sigma_mu));
    }
    else if (!on_grid(beam.center, grid))
    {
        fail(ErrorCode::off_grid_beam,
             fmt::format("mono beam at {} MeV is not an energy node (nearest "
                         "{} MeV)",
                         beam.center, grid.node(grid.nearest_node(beam.center))));
    }
}

double beam_mass_fraction(BeamSpec const& beam, double cutoff)
{
    if (beam.kind == BeamKind::mono)
        return (beam.center >= 0 && beam.center <= cutoff) ? 1.0 : 0.0;
    double scale = std::sqrt(2.0) * beam.sigma_energy;
    double inside = std::erf((cutoff - beam.center) / scale)
                    + std::erf(beam.center / scale);
    double total = 1 + std::erf(beam.center / scale);
    return inside / total;
}

std::vector<std::string>
beam_warnings(BeamSpec const& beam, EnergyGrid const& grid)
{
    std::vector<std::string> warnings;
    if (beam.kind != BeamKind::gaussian)
        return warnings;
    double const cutoff = grid.cutoff();
    if (beam.center + 4 * beam.sigma_energy > cutoff
        || beam.center - 4 * beam.sigma_energy < 0)
    {
        warnings.push_back(fmt::format(
            "beam at {} MeV with sigma {:.4g} MeV has less than 4 sigma "
            "clearance inside [0, {}] MeV",
            beam.center, beam.sigma_energy, cutoff));
    }
    double mass = beam_mass_fraction(beam, cutoff);
    if (mass < 1 - 1e-6)
    {
        warnings.push_back(fmt::format(
            "only {:.8f} of the beam's energy profile lies below the {} MeV "
            "cutoff",
            mass, cutoff));
    }
    return warnings;
}

double energy_inflow(BeamSpec const& beam, double cutoff)
{
    if (beam.kind == BeamKind::mono)
        return beam.amplitude * beam.center;

    double const lo_e = std::max(0.0, beam.center - 12 * beam.sigma_energy);
    double const hi_e = std::min(cutoff, beam.center + 12 * beam.sigma_energy);
    double energy_part = 0;
    if (hi_e > lo_e)
    {
        energy_part = integrate_gl(
            [&](double e) { return e * energy_profile(beam, e); }, lo_e, hi_e,
            20, panels_for(hi_e - lo_e, 0.5 * beam.sigma_energy));
    }
    double const lo_mu = std::max(0.0, angular_window_lo(beam));
    double angle_part = integrate_gl(
        [&](double mu) { return mu * angular_profile(beam, mu); }, lo_mu, 1.0,
        20, panels_for(1 - lo_mu, 0.5 * beam.sigma_mu));
    return beam.amplitude * energy_part * angle_part;
}

//---------------------------------------------------------------------------//
std::vector<double> legendre_moments(std::function<double(double)> const& f,
                                     int order, int quadrature_order,
                                     double lo, double hi, int panels)
{
    auto rule = gauss_legendre(quadrature_order);
    std::vector<double> moments(static_cast<std::size_t>(order) + 1, 0.0);
    std::vector<double> p(moments.size());
    double width = (hi - lo) / panels;
    for (int panel = 0; panel < panels; ++panel)
    {
        double mid = lo + (panel + 0.5) * width;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q)
        {
            double mu = mid + 0.5 * width * rule.nodes[q];
            double fw = 0.5 * width * rule.weights[q] * f(mu);
            legendre_all(mu, p);
            for (std::size_t k = 0; k < moments.size(); ++k)
                moments[k] += fw * p[k];
        }
    }
    return moments;
}

std::vector<double>
beam_angular_moments(BeamSpec const& beam, int order, int quadrature_order)
{
    if (beam.kind == BeamKind::mono)
        return std::vector<double>(static_cast<std::size_t>(order) + 1, 1.0);
    double lo = angular_window_lo(beam);
    return legendre_moments([&](double mu) { return angular_profile(beam, mu); },
                            order, quadrature_order, lo, 1.0,
                            panels_for(1 - lo, 2 * beam.sigma_mu));
}

BoundaryMoments project_beam(BeamSpec const& beam, EnergyGrid const& grid,
                             PnConfig const& config, int quadrature_order)
{
    check_pn_config(config);
    validate_beam(beam, grid);
    int const min_order = 2 * (config.order + 1);
    if (quadrature_order == 0)
        quadrature_order = min_order;
    if (quadrature_order < min_order)
        fail(ErrorCode::invalid_argument,
             fmt::format("beam quadrature order {} is below the required {} "
                         "for P_{}",
                         quadrature_order, min_order, config.order));

    BoundaryMoments b(grid.size(), config.moments());
    if (beam.kind == BeamKind::mono)
    {
        std::size_t jc = grid.nearest_node(beam.center);
        double value = beam.amplitude / grid.spacing();
        for (std::size_t k = 0; k < b.moments(); ++k)
            b(jc, k) = value;
        return b;
    }

    auto angular = beam_angular_moments(beam, config.order, quadrature_order);
    for (std::size_t j = 0; j < grid.size(); ++j)
    {
        double e = beam.amplitude * energy_profile(beam, grid.node(j));
        for (std::size_t k = 0; k < b.moments(); ++k)
            b(j, k) = e * angular[k];
    }
    return b;
}

//---------------------------------------------------------------------------//
char const* to_string(Functional f) noexcept
{
    return f == Functional::average_depth ? "avg_depth" : "total_dose";
}

MomentField adjoint_source_moments(SlabGrid const& slab,
                                   MaterialTable const& material,
                                   PnConfig const& config,
                                   Functional functional)
{
    check_pn_config(config);
    auto const& grid = material.grid();
    MomentField r(FieldKind::source, grid, slab, config.order);
    auto s = material.stopping_power();
    for (std::size_t j = 0; j < grid.size(); ++j)
    {
        for (std::size_t i = 0; i < slab.size(); ++i)
        {
            double weight = functional == Functional::average_depth
                                ? slab.center(i)
                                : 1.0;
            r(j, i, 0) = 2 * weight * s[j];
        }
    }
    return r;
}

}  // namespace fpsens
