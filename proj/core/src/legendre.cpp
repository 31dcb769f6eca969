// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
#include "fpsens/legendre.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "fpsens/error.hpp"

namespace fpsens
{
double legendre_p(int l, double mu) noexcept
{
    if (l == 0)
        return 1.0;
    double prev = 1.0;
    double cur = mu;
    for (int k = 1; k < l; ++k)
    {
        double next = ((2 * k + 1) * mu * cur - k * prev) / (k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

void legendre_all(double mu, std::span<double> out) noexcept
{
    if (out.empty())
        return;
    out[0] = 1.0;
    if (out.size() == 1)
        return;
    out[1] = mu;
    for (std::size_t k = 1; k + 1 < out.size(); ++k)
    {
        double kd = static_cast<double>(k);
        out[k + 1] = ((2 * kd + 1) * mu * out[k] - kd * out[k - 1]) / (kd + 1);
    }
}

namespace
{
// P_n(x) and P_n'(x) together
std::pair<double, double> legendre_with_derivative(int n, double x)
{
    double prev = 1.0;
    double cur = x;
    for (int k = 1; k < n; ++k)
    {
        double next = ((2 * k + 1) * x * cur - k * prev) / (k + 1);
        prev = cur;
        cur = next;
    }
    double deriv = n * (x * cur - prev) / (x * x - 1);
    return {cur, deriv};
}
}  // namespace

GaussLegendre gauss_legendre(int n)
{
    if (n < 1)
        fail(ErrorCode::invalid_argument,
             fmt::format("Gauss-Legendre order must be positive, got {}", n));
    GaussLegendre rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    if (n == 1)
    {
        rule.nodes[0] = 0;
        rule.weights[0] = 2;
        return rule;
    }
    for (int i = 0; i < (n + 1) / 2; ++i)
    {
        // Descending initial guess, refined by Newton
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double deriv = 0;
        for (int iter = 0; iter < 100; ++iter)
        {
            auto [p, dp] = legendre_with_derivative(n, x);
            deriv = dp;
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        deriv = legendre_with_derivative(n, x).second;
        double w = 2 / ((1 - x * x) * deriv * deriv);
        rule.nodes[n - 1 - i] = x;
        rule.nodes[i] = -x;
        rule.weights[n - 1 - i] = w;
        rule.weights[i] = w;
    }
    if (n % 2 == 1)
        rule.nodes[n / 2] = 0;
    return rule;
}

std::vector<double> legendre_roots(int n)
{
    return gauss_legendre(n).nodes;
}

double integrate_gl(std::function<double(double)> const& f, double a,
                    double b, int n, int panels)
{
    if (panels < 1)
        fail(ErrorCode::invalid_argument, "quadrature needs at least one panel");
    auto rule = gauss_legendre(n);
    double width = (b - a) / panels;
    double total = 0;
    for (int p = 0; p < panels; ++p)
    {
        double lo = a + p * width;
        double mid = lo + 0.5 * width;
        double sum = 0;
        for (int q = 0; q < n; ++q)
            sum += rule.weights[q] * f(mid + 0.5 * width * rule.nodes[q]);
        total += 0.5 * width * sum;
    }
    return total;
}

}  // namespace fpsens
