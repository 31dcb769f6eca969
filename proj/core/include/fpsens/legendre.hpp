// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
//! \file fpsens/legendre.hpp
//! Legendre polynomials and Gauss-Legendre quadrature.
#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fpsens
{
//! P_l(mu) by the three-term recurrence
double legendre_p(int l, double mu) noexcept;

//! Fill out[l] = P_l(mu) for l = 0..out.size()-1
void legendre_all(double mu, std::span<double> out) noexcept;

//! Nodes and weights of an n-point rule on [-1, 1], nodes ascending
struct GaussLegendre
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n);

//! Roots of P_n in ascending order (Newton from Chebyshev initial guesses)
std::vector<double> legendre_roots(int n);

//! Composite n-point Gauss-Legendre integral of f over [a, b] with
//! \c panels equal subintervals
double integrate_gl(std::function<double(double)> const& f, double a,
                    double b, int n, int panels = 1);

}  // namespace fpsens
