// quadrature.hpp — Gauss-Legendre panels, adaptive Simpson, and the closed-form
// bracket-power integral ∫ (1+|ξ|)^p dξ used by the H^s norms of indicator bumps.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace mblab {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// Cached Gauss-Legendre rule of order n (Newton on the Legendre recurrence).
const GaussRule& gauss_legendre(int n);

// ∫_a^b f, single Gauss-Legendre panel of order n.
template <typename F>
auto gauss_panel(F&& f, double a, double b, int n) -> decltype(f(0.0)) {
    const GaussRule& r = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    decltype(f(0.0)) acc{};
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
        acc += r.weights[i] * f(mid + half * r.nodes[i]);
    return half * acc;
}

struct AdaptiveResult {
    double value = 0.0;
    std::int64_t evals = 0;
};

// Adaptive Simpson on [a, b] with mixed relative/absolute tolerance.
AdaptiveResult adaptive_simpson(const std::function<double(double)>& f, double a,
                                double b, double rel_tol, double abs_tol,
                                int max_depth = 48);

// ∫_l^r (1+|ξ|)^p dξ in closed form (handles the p = −1 log case and 0-crossings).
double bracket_power_integral(double l, double r, double p);

// n equally spaced points including both endpoints.
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace mblab
