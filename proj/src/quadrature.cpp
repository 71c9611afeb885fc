#include "mblab/quadrature.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace mblab {

const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");

    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < n; ++i) {
        // Chebyshev-angle initial guess, then Newton on P_n.
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

namespace {

struct SimpsonCtx {
    const std::function<double(double)>* f;
    double rel_tol, abs_tol;
    std::int64_t evals = 0;
};

double simpson_rec(SimpsonCtx& ctx, double a, double b, double fa, double fm,
                   double fb, double whole, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = (*ctx.f)(lm), frm = (*ctx.f)(rm);
    ctx.evals += 2;
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 ||
        std::abs(delta) <= 15.0 * (ctx.abs_tol + ctx.rel_tol * std::abs(left + right)))
        return left + right + delta / 15.0;
    return simpson_rec(ctx, a, m, fa, flm, fm, left, depth - 1) +
           simpson_rec(ctx, m, b, fm, frm, fb, right, depth - 1);
}

}  // namespace

AdaptiveResult adaptive_simpson(const std::function<double(double)>& f, double a,
                                double b, double rel_tol, double abs_tol,
                                int max_depth) {
    if (a == b) return {0.0, 0};
    SimpsonCtx ctx{&f, rel_tol, abs_tol, 0};
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    ctx.evals = 3;
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double v = simpson_rec(ctx, a, b, fa, fm, fb, whole, max_depth);
    return {v, ctx.evals};
}

namespace {

// ∫_l^r (1+x)^p dx on l, r >= 0.
double side_integral(double l, double r, double p) {
    if (p == -1.0) return std::log1p(r) - std::log1p(l);
    const double q = p + 1.0;
    return (std::pow(1.0 + r, q) - std::pow(1.0 + l, q)) / q;
}

}  // namespace

double bracket_power_integral(double l, double r, double p) {
    if (l > r) throw std::invalid_argument("bracket_power_integral: l > r");
    if (l >= 0.0) return side_integral(l, r, p);
    if (r <= 0.0) return side_integral(-r, -l, p);
    return side_integral(0.0, -l, p) + side_integral(0.0, r, p);
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 2) throw std::invalid_argument("linspace: need at least 2 points");
    std::vector<double> out(n);
    const double h = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) out[i] = lo + h * i;
    out.back() = hi;
    return out;
}

}  // namespace mblab
