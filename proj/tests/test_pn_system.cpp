// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fpsens/legendre.hpp"
#include "fpsens/moment_field.hpp"
#include "fpsens/pn_system.hpp"
#include "support.hpp"

using namespace fpsens;
using fpsens::test::check_error;

namespace
{
Eigen::MatrixXd dense(FluxMatrix const& a)
{
    Eigen::MatrixXd m(a.size(), a.size());
    for (std::size_t r = 0; r < a.size(); ++r)
        for (std::size_t c = 0; c < a.size(); ++c)
            m(r, c) = a(r, c);
    return m;
}

std::vector<double> sorted_eigenvalues(FluxMatrix const& a)
{
    Eigen::EigenSolver<Eigen::MatrixXd> solver(dense(a));
    std::vector<double> ev;
    for (auto const& z : solver.eigenvalues())
    {
        CHECK(std::abs(z.imag()) < 1e-12);
        ev.push_back(z.real());
    }
    std::sort(ev.begin(), ev.end());
    return ev;
}

// Roots of P_n from Boost's tabulated Gauss abscissae
template<unsigned N>
std::vector<double> boost_roots()
{
    std::vector<double> roots;
    for (double x : boost::math::quadrature::gauss<double, N>::abscissa())
    {
        roots.push_back(x);
        if (x != 0)
            roots.push_back(-x);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

template<unsigned N>
void check_eigen_vs_roots()
{
    PnConfig cfg{static_cast<int>(N) - 1};
    auto ev = sorted_eigenvalues(flux_matrix(cfg));
    auto roots = boost_roots<N>();
    REQUIRE(ev.size() == roots.size());
    for (std::size_t i = 0; i < ev.size(); ++i)
        CHECK(std::abs(ev[i] - roots[i]) <= 1e-10);
    CHECK(std::abs(flux_matrix(cfg).max_speed() - roots.back()) <= 1e-12);
}
}  // namespace

TEST_CASE("legendre polynomials")
{
    CHECK(legendre_p(0, 0.3) == 1);
    CHECK(legendre_p(1, 0.3) == doctest::Approx(0.3));
    CHECK(legendre_p(2, 0.3) == doctest::Approx((3 * 0.09 - 1) / 2));
    CHECK(legendre_p(4, 0.5) == doctest::Approx((35 * 0.0625 - 30 * 0.25 + 3) / 8));
    for (int l = 0; l < 20; ++l)
        CHECK(legendre_p(l, 1.0) == doctest::Approx(1.0));
    std::vector<double> all(8);
    legendre_all(-0.7, all);
    for (int l = 0; l < 8; ++l)
        CHECK(all[l] == doctest::Approx(legendre_p(l, -0.7)).epsilon(1e-14));
}

TEST_CASE("gauss-legendre rule is exact to degree 2n-1")
{
    auto rule = gauss_legendre(6);
    for (int p = 0; p <= 11; ++p)
    {
        double sum = 0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q)
            sum += rule.weights[q] * std::pow(rule.nodes[q], p);
        double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
        CHECK(sum == doctest::Approx(exact).epsilon(1e-14));
    }
    CHECK(integrate_gl([](double x) { return std::exp(x); }, 0, 2, 10, 4)
          == doctest::Approx(std::exp(2.0) - 1).epsilon(1e-14));
}

TEST_CASE("flux matrix N=1")
{
    auto a = flux_matrix(PnConfig{1});
    CHECK(a(0, 0) == 0);
    CHECK(a(0, 1) == doctest::Approx(1.0));
    CHECK(a(1, 0) == doctest::Approx(1.0 / 3));
    CHECK(a(1, 1) == 0);
    auto ev = sorted_eigenvalues(a);
    CHECK(ev[0] == doctest::Approx(-1 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(ev[1] == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-14));
}

TEST_CASE("flux matrix N=3 max speed")
{
    // largest root of P_4: x^2 = (15 + 2 sqrt 30) / 35
    double const root = std::sqrt((15 + 2 * std::sqrt(30.0)) / 35);
    CHECK(root == doctest::Approx(0.8611363).epsilon(1e-7));
    auto a = flux_matrix(PnConfig{3});
    CHECK(std::abs(a.max_speed() - root) < 1e-13);
    CHECK(std::abs(sorted_eigenvalues(a).back() - root) < 1e-12);
}

TEST_CASE("flux eigenvalues equal roots of P_{N+1}")
{
    check_eigen_vs_roots<2>();
    check_eigen_vs_roots<4>();
    check_eigen_vs_roots<8>();
    check_eigen_vs_roots<16>();
}

TEST_CASE("flux matrix apply and reversed")
{
    auto a = flux_matrix(PnConfig{5});
    std::vector<double> u{1, -2, 0.5, 3, 0, 1}, out(6), neg(6);
    a.apply(u, out);
    a.reversed().apply(u, neg);
    auto m = dense(a);
    for (std::size_t r = 0; r < 6; ++r)
    {
        double expected = 0;
        for (std::size_t c = 0; c < 6; ++c)
            expected += m(r, c) * u[c];
        CHECK(out[r] == doctest::Approx(expected));
        CHECK(neg[r] == doctest::Approx(-expected));
    }
    CHECK(a.reversed().max_speed() == a.max_speed());
}

TEST_CASE("pn config checks")
{
    check_error([] { check_pn_config(PnConfig{0}); }, ErrorCode::invalid_argument);
    CHECK(check_pn_config(PnConfig{15}).empty());
    CHECK(check_pn_config(PnConfig{4}).size() == 1);
}

TEST_CASE("damping coefficients")
{
    auto d = diffusion_coeffs(PnConfig{15});
    REQUIRE(d.size() == 16);
    CHECK(d[0] == 0);
    CHECK(d[1] == 2);
    CHECK(d[15] == 240);
}

TEST_CASE("mono beam projection")
{
    EnergyGrid grid(20.5, 83);
    PnConfig cfg{7};
    auto b = project_beam(BeamSpec::mono(10), grid, cfg);
    std::size_t jc = grid.nearest_node(10);
    for (std::size_t k = 0; k < cfg.moments(); ++k)
    {
        CHECK(b(jc, k) == doctest::Approx(1 / grid.spacing()));
        CHECK(b(jc, k) == b(jc, 0));
        CHECK(b(jc - 1, k) == 0);
        CHECK(b(jc + 1, k) == 0);
    }
    check_error([&] { project_beam(BeamSpec::mono(10.1), grid, cfg); },
                ErrorCode::off_grid_beam);
    check_error([&] { project_beam(BeamSpec::mono(25), grid, cfg); },
                ErrorCode::invalid_argument);
}

TEST_CASE("gaussian beam: narrow angular limit")
{
    EnergyGrid grid(20.5, 83);
    PnConfig cfg{15};
    std::size_t jc = grid.nearest_node(10);
    double previous = 1;
    for (double sigma : {1e-2, 1e-3, 1e-4})
    {
        auto beam = BeamSpec::gaussian(10, 1, 1.0, sigma);
        auto b = project_beam(beam, grid, cfg);
        double worst = 0;
        for (std::size_t k = 1; k < cfg.moments(); ++k)
        {
            double dev = std::abs(b(jc, k) / b(jc, 0) - 1);
            // P_k(1 - d) ~ 1 - k(k+1) d / 2 and the mean offset is below sigma
            CHECK(dev <= 0.5 * k * (k + 1) * sigma);
            worst = std::max(worst, dev);
        }
        CHECK(worst < previous);
        previous = worst;
    }
    CHECK(previous < 0.01);
}

TEST_CASE("gaussian beam k=0 against adaptive quadrature")
{
    using boost::math::quadrature::gauss_kronrod;
    EnergyGrid grid(20.5, 575);
    PnConfig cfg{15};
    auto beam = BeamSpec::gaussian(6);
    auto b = project_beam(beam, grid, cfg);
    double const sm = beam.sigma_mu;
    double angular = gauss_kronrod<double, 61>::integrate(
        [sm](double mu) { return std::exp(-(mu - 1) * (mu - 1) / (2 * sm * sm)); },
        -1.0, 1.0, 15, 1e-14);
    for (std::size_t j : {std::size_t{100}, std::size_t{150}, std::size_t{168},
                          std::size_t{200}})
    {
        double e = grid.node(j);
        double se = beam.sigma_energy;
        double expected = std::exp(-(e - 6) * (e - 6) / (2 * se * se)) * angular;
        CHECK(b(j, 0) == doctest::Approx(expected).epsilon(1e-10));
    }
    CHECK(beam.sigma_energy == doctest::Approx(0.6 / std::sqrt(2 * std::log(2.0))));
}

TEST_CASE("beam projection is linear in amplitude")
{
    EnergyGrid grid(20.5, 83);
    PnConfig cfg{7};
    auto b1 = project_beam(BeamSpec::gaussian(9, 1), grid, cfg);
    auto b3 = project_beam(BeamSpec::gaussian(9, 3), grid, cfg);
    for (std::size_t j = 0; j < grid.size(); ++j)
        for (std::size_t k = 0; k < cfg.moments(); ++k)
            CHECK(b3(j, k) == doctest::Approx(3 * b1(j, k)).epsilon(1e-14));
}

TEST_CASE("beam quadrature order")
{
    EnergyGrid grid(20.5, 83);
    PnConfig cfg{7};
    auto beam = BeamSpec::gaussian(9);
    check_error([&] { project_beam(beam, grid, cfg, 10); },
                ErrorCode::invalid_argument);
    auto lo = project_beam(beam, grid, cfg, 16);
    auto hi = project_beam(beam, grid, cfg, 40);
    std::size_t jc = grid.nearest_node(9);
    for (std::size_t k = 0; k < cfg.moments(); ++k)
        CHECK(lo(jc, k) == doctest::Approx(hi(jc, k)).epsilon(1e-12));
}

TEST_CASE("beam warnings")
{
    EnergyGrid grid(20.5, 83);
    CHECK(beam_warnings(BeamSpec::gaussian(10), grid).empty());
    CHECK(!beam_warnings(BeamSpec::gaussian(16), grid).empty());
    CHECK(beam_mass_fraction(BeamSpec::gaussian(10), 20.5)
          == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(energy_inflow(BeamSpec::mono(10, 2), 20.5) == 20);
}

TEST_CASE("adjoint sources")
{
    EnergyGrid grid(4, 3);
    MaterialTable m(grid, {2, 2, 2}, {0.1, 0.1, 0.1}, "flat");
    PnConfig cfg{3};
    SlabGrid one(2.0, 1);  // single cell centered at x = 1
    auto r = adjoint_source_moments(one, m, cfg, Functional::average_depth);
    CHECK(r.kind() == FieldKind::source);
    CHECK(r(1, 0, 0) == doctest::Approx(4.0));
    for (std::size_t k = 1; k < cfg.moments(); ++k)
        CHECK(r(1, 0, k) == 0);
    auto rd = adjoint_source_moments(SlabGrid(6.0, 7), m, cfg,
                                     Functional::total_dose);
    for (std::size_t i = 0; i < 7; ++i)
        CHECK(rd(2, i, 0) == 4.0);

    // x factor vanishes toward the entry face
    for (std::size_t n : {10u, 100u, 1000u})
    {
        SlabGrid slab(1.0, n);
        auto rx = adjoint_source_moments(slab, m, cfg, Functional::average_depth);
        CHECK(rx(0, 0, 0) == doctest::Approx(2 * 2 * slab.dx() / 2));
    }
}
