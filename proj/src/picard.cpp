#include "mblab/picard.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mblab/fitting.hpp"
#include "mblab/quadrature.hpp"

namespace mblab {

double bump_value(const BumpUnion& u, double xi) {
    for (const auto& b : u)
        if (xi >= b.lo && xi <= b.hi) return b.amplitude;
    return 0.0;
}

double bump_hs_norm(const BumpUnion& u, double s) {
    double acc = 0.0;
    for (const auto& b : u)
        acc += b.amplitude * b.amplitude * bracket_power_integral(b.lo, b.hi, 2.0 * s);
    return std::sqrt(acc);
}

std::complex<double> phase_kernel(double g, double t) {
    const double theta = g * t;
    if (std::abs(theta) < 1e-6) {
        return {t * (-0.5 * theta + theta * theta * theta / 24.0),
                t * (1.0 - theta * theta / 6.0)};
    }
    const double h = std::sin(0.5 * theta);
    return std::complex<double>(-2.0 * h * h, std::sin(theta)) / g;
}

std::string construction_name(Construction c) {
    switch (c) {
        case Construction::beta_positive: return "beta-positive";
        case Construction::beta_negative: return "beta-negative";
        case Construction::beta_zero: return "beta-zero";
        case Construction::general_alpha: return "general-alpha";
    }
    throw std::logic_error("construction_name: bad id");
}

Construction construction_from_name(const std::string& name) {
    if (name == "beta-positive") return Construction::beta_positive;
    if (name == "beta-negative") return Construction::beta_negative;
    if (name == "beta-zero") return Construction::beta_zero;
    if (name == "general-alpha") return Construction::general_alpha;
    throw std::invalid_argument("unknown construction: " + name);
}

void ConstructionParams::validate() const {
    if (!(big_n >= 64.0)) throw std::invalid_argument("construction needs N >= 64");
    switch (id) {
        case Construction::beta_positive:
            if (alpha != 4.0 || !(beta > 0.0))
                throw std::invalid_argument("beta-positive needs alpha = 4, beta > 0");
            return;
        case Construction::beta_negative:
            if (alpha != 4.0 || !(beta < 0.0))
                throw std::invalid_argument("beta-negative needs alpha = 4, beta < 0");
            return;
        case Construction::beta_zero:
            if (alpha != 4.0 || beta != 0.0)
                throw std::invalid_argument("beta-zero needs alpha = 4, beta = 0");
            return;
        case Construction::general_alpha:
            if (!(alpha > 0.0 && alpha < 4.0) || alpha == 1.0)
                throw std::invalid_argument(
                    "general-alpha needs alpha in (0,4) excluding 1");
            return;
    }
    throw std::logic_error("validate: bad id");
}

double ConstructionParams::width() const {
    switch (id) {
        case Construction::beta_positive: return 1.0 / big_n;
        case Construction::beta_negative:
        case Construction::beta_zero: return 1.0 / std::sqrt(big_n);
        case Construction::general_alpha: return 1.0 / (big_n * big_n);
    }
    throw std::logic_error("width: bad id");
}

std::pair<double, double> ConstructionParams::window() const {
    const double g = width();
    switch (id) {
        case Construction::beta_positive: {
            const double b1 = phase().beta1();
            return {big_n + b1 + 1.75 * g, big_n + b1 + 2.25 * g};
        }
        case Construction::beta_zero:
            return {big_n + 1.75 * g, big_n + 2.25 * g};
        case Construction::beta_negative:
            return {-big_n - 12.0 * g, -big_n - 11.0 * g};
        case Construction::general_alpha: {
            const double c1 = roots_of_f(alpha).c1;
            const double lo = -c1 * big_n + lambda_shift(alpha, beta) / big_n;
            return {lo, lo + g};
        }
    }
    throw std::logic_error("window: bad id");
}

int ConstructionParams::iterate_order() const {
    return id == Construction::beta_negative ? 3 : 2;
}

double ConstructionParams::predicted_exponent() const {
    switch (id) {
        case Construction::beta_positive: return 0.5 * (1.0 - 2.0 * s);
        case Construction::beta_negative: return 0.5 * (1.0 - 4.0 * s);
        case Construction::beta_zero: return 0.75 - s;
        case Construction::general_alpha: return -s;
    }
    throw std::logic_error("predicted_exponent: bad id");
}

DataPair build_data(const ConstructionParams& c) {
    c.validate();
    const double n = c.big_n, g = c.width();
    const double amp = std::pow(g, -0.5) * std::pow(n, -c.s);
    DataPair d;
    switch (c.id) {
        case Construction::beta_positive: {
            const double b1 = c.phase().beta1();
            d.phi_hat.emplace_back(amp, 2.0 * n + b1, 2.0 * n + b1 + g);
            d.psi_hat.emplace_back(amp, -n + g, -n + 2.0 * g);
            break;
        }
        case Construction::beta_zero:
            d.phi_hat.emplace_back(amp, 2.0 * n, 2.0 * n + g);
            d.psi_hat.emplace_back(amp, -n + g, -n + 2.0 * g);
            break;
        case Construction::beta_negative:
            d.psi_hat.emplace_back(amp, n, n + 4.0 * g);               // B1
            d.psi_hat.emplace_back(amp, -n - 9.0 * g, -n - 5.0 * g);   // B2
            break;
        case Construction::general_alpha: {
            const double c1 = roots_of_f(c.alpha).c1;
            const double center = -(1.0 + c1) * n + lambda_shift(c.alpha, c.beta) / n;
            // ψ̂ has width 2γ, so its amplitude carries (2γ)^{−1/2}
            d.phi_hat.emplace_back(amp, n, n + g);
            d.psi_hat.emplace_back(std::pow(2.0 * g, -0.5) * std::pow(n, -c.s),
                                   center - g, center + g);
            break;
        }
    }
    for (const BumpUnion* u : {&d.phi_hat, &d.psi_hat}) {
        if (u->empty()) continue;
        const double nn = bump_hs_norm(*u, c.s);
        if (!(nn >= 0.25 && nn <= 4.0))
            throw std::runtime_error("build_data: H^s normalization out of [1/4, 4]");
    }
    return d;
}

namespace {

struct Interval {
    double lo, hi;
};

// supp(a) ∩ (ξ − supp(b)) as explicit intervals with the product amplitude.
struct WeightedInterval {
    double lo, hi, amp;
};

std::vector<WeightedInterval> overlap_intervals(const BumpUnion& a, const BumpUnion& b,
                                                double xi) {
    std::vector<WeightedInterval> out;
    for (const auto& pa : a)
        for (const auto& pb : b) {
            const double lo = std::max(pa.lo, xi - pb.hi);
            const double hi = std::min(pa.hi, xi - pb.lo);
            if (hi > lo) out.push_back({lo, hi, pa.amplitude * pb.amplitude});
        }
    return out;
}

void check_resolution(int n_window, int nodes_per_bump) {
    if (n_window < 33 || n_window % 2 == 0)
        throw std::invalid_argument("iterate window needs an odd node count >= 33");
    if (nodes_per_bump < 64)
        throw std::invalid_argument(
            "under-resolved quadrature: nodes_per_bump must be >= 64");
}

}  // namespace

double overlap_measure(const BumpUnion& phi_hat, const BumpUnion& psi_hat, double xi) {
    double m = 0.0;
    for (const auto& iv : overlap_intervals(phi_hat, psi_hat, xi)) m += iv.hi - iv.lo;
    return m;
}

IterateField second_iterate(const BumpUnion& phi_hat, const BumpUnion& psi_hat,
                            const PhaseParams& p, double t, double win_lo,
                            double win_hi, int n_window, int nodes_per_bump) {
    if (!(t > 0.0)) throw std::invalid_argument("second_iterate: t must be positive");
    check_resolution(n_window, nodes_per_bump);
    IterateField f;
    f.order = 2;
    f.t = t;
    f.nodes_per_bump = nodes_per_bump;
    f.xi = linspace(win_lo, win_hi, n_window);
    f.values.resize(f.xi.size());
    bool any = false;
    for (std::size_t i = 0; i < f.xi.size(); ++i) {
        const double xi = f.xi[i];
        std::complex<double> acc{0.0, 0.0};
        for (const auto& iv : overlap_intervals(phi_hat, psi_hat, xi)) {
            any = true;
            acc += iv.amp * gauss_panel(
                                [&](double x1) {
                                    const double g0v = g0_resonant(p, x1, xi);
                                    f.max_abs_g0 = std::max(f.max_abs_g0, std::abs(g0v));
                                    return phase_kernel(g0v, t);
                                },
                                iv.lo, iv.hi, nodes_per_bump);
        }
        const double ph = phase(p, xi) * t;
        f.values[i] = std::complex<double>(0.0, 2.0 * xi) *
                      std::complex<double>(std::cos(ph), std::sin(ph)) * acc;
    }
    f.all_empty = !any;
    return f;
}

IterateField third_iterate(const BumpUnion& psi_hat, const PhaseParams& p, double t,
                           double win_lo, double win_hi, int n_window,
                           int nodes_per_bump) {
    if (!(t > 0.0)) throw std::invalid_argument("third_iterate: t must be positive");
    if (psi_hat.empty()) throw std::invalid_argument("third_iterate: empty psi data");
    check_resolution(n_window, nodes_per_bump);
    const std::size_t nc = psi_hat.size();

    IterateField f;
    f.order = 3;
    f.t = t;
    f.nodes_per_bump = nodes_per_bump;
    f.xi = linspace(win_lo, win_hi, n_window);
    f.values.assign(f.xi.size(), {0.0, 0.0});
    f.i1_blocks.assign(nc, std::vector<std::vector<std::complex<double>>>(
                               nc, std::vector<std::complex<double>>(f.xi.size())));
    f.i2_blocks = f.i1_blocks;

    const GaussRule& rule = gauss_legendre(nodes_per_bump);
    for (std::size_t w = 0; w < f.xi.size(); ++w) {
        const double xi = f.xi[w];
        std::complex<double> i1_total{0, 0}, i2_total{0, 0};
        for (std::size_t bi = 0; bi < nc; ++bi) {
            const BumpProfile& outer = psi_hat[bi];
            const double mid = 0.5 * (outer.lo + outer.hi);
            const double half = 0.5 * (outer.hi - outer.lo);
            for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
                const double x1 = mid + half * rule.nodes[q];
                const double w1 = half * rule.weights[q] * outer.amplitude;
                const std::complex<double> k2 = phase_kernel(g1_resonant(p, x1, xi - x1), t);
                for (std::size_t bj = 0; bj < nc; ++bj) {
                    const BumpProfile& inner = psi_hat[bj];
                    for (std::size_t bk = 0; bk < nc; ++bk) {
                        const BumpProfile& third = psi_hat[bk];
                        const double lo = std::max(inner.lo, xi - x1 - third.hi);
                        const double hi = std::min(inner.hi, xi - x1 - third.lo);
                        if (hi <= lo) continue;
                        const double ampw = inner.amplitude * third.amplitude;
                        std::complex<double> j1{0, 0}, j2{0, 0};
                        const double m2 = 0.5 * (lo + hi), h2 = 0.5 * (hi - lo);
                        for (std::size_t r = 0; r < rule.nodes.size(); ++r) {
                            const double x2 = m2 + h2 * rule.nodes[r];
                            const double w2 = h2 * rule.weights[r];
                            const double denom = g1_resonant(p, x2, x1 - xi);
                            if (std::abs(denom) < 1e-12)
                                throw std::runtime_error(
                                    "third_iterate: vanishing G1 denominator");
                            j1 += w2 * phase_kernel(g2_resonant(p, x1, x2, xi), t) / denom;
                            j2 += w2 * k2 / denom;
                        }
                        const std::complex<double> pre = w1 * (xi - x1) * ampw;
                        f.i1_blocks[bi][bj][w] += pre * j1;
                        f.i2_blocks[bi][bj][w] += pre * j2;
                    }
                }
            }
        }
        const double ph = phase(p, xi) * t;
        const std::complex<double> front =
            xi * std::complex<double>(std::cos(ph), std::sin(ph));
        for (std::size_t bi = 0; bi < nc; ++bi)
            for (std::size_t bj = 0; bj < nc; ++bj) {
                f.i1_blocks[bi][bj][w] *= front;
                f.i2_blocks[bi][bj][w] *= front;
                i1_total += f.i1_blocks[bi][bj][w];
                i2_total += f.i2_blocks[bi][bj][w];
            }
        f.values[w] = std::complex<double>(0.0, -3.0) * (i1_total - i2_total);
    }
    return f;
}

double windowed_norm(const IterateField& f, double s) {
    if (f.xi.size() < 3 || f.xi.size() % 2 == 0)
        throw std::invalid_argument("windowed_norm: need odd node count >= 3");
    const double h = (f.xi.back() - f.xi.front()) / (f.xi.size() - 1);
    double acc = 0.0;
    for (std::size_t i = 0; i < f.xi.size(); ++i) {
        const double g = std::pow(bracket(f.xi[i]), 2.0 * s) * std::norm(f.values[i]);
        const double wgt = (i == 0 || i + 1 == f.xi.size()) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += wgt * g;
    }
    return std::sqrt(acc * h / 3.0);
}

double windowed_norm(const IterateField& f, double s, double lo, double hi) {
    if (lo < f.xi.front() - 1e-12 || hi > f.xi.back() + 1e-12)
        throw std::invalid_argument("windowed_norm: window outside sampled range");
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < f.xi.size(); ++i) {
        if (f.xi[i] < lo - 1e-15 || f.xi[i + 1] > hi + 1e-15) continue;
        const double ga = std::pow(bracket(f.xi[i]), 2.0 * s) * std::norm(f.values[i]);
        const double gb =
            std::pow(bracket(f.xi[i + 1]), 2.0 * s) * std::norm(f.values[i + 1]);
        acc += 0.5 * (f.xi[i + 1] - f.xi[i]) * (ga + gb);
    }
    return std::sqrt(acc);
}

GrowthFit growth_fit(const ConstructionParams& c, double t,
                     const std::vector<double>& ladder, int n_window,
                     int nodes_per_bump) {
    c.validate();
    if (ladder.size() < 5) throw std::invalid_argument("growth_fit: ladder length >= 5");
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (ladder[i] > 262144.0)
            throw std::invalid_argument("growth_fit: ladder max is 2^18");
        if (i > 0 && std::abs(ladder[i] - 2.0 * ladder[i - 1]) > 1e-9 * ladder[i])
            throw std::invalid_argument("growth_fit: ladder must be dyadic");
    }
    if (n_window == 0) n_window = c.iterate_order() == 2 ? 129 : 65;

    GrowthFit fit;
    std::vector<double> ns, norms;
    for (double n : ladder) {
        ConstructionParams cp = c;
        cp.big_n = n;
        const DataPair data = build_data(cp);
        const auto [wlo, whi] = cp.window();
        IterateField field =
            cp.iterate_order() == 2
                ? second_iterate(data.phi_hat, data.psi_hat, cp.phase(), t, wlo, whi,
                                 n_window, nodes_per_bump)
                : third_iterate(data.psi_hat, cp.phase(), t, wlo, whi, n_window,
                                nodes_per_bump);
        const double nv = windowed_norm(field, c.s);
        fit.ladder.emplace_back(n, nv);
        fit.max_abs_g0 = std::max(fit.max_abs_g0, field.max_abs_g0);
        ns.push_back(n);
        norms.push_back(nv);
    }
    const LineFit lf = fit_loglog(ns, norms);
    fit.slope = lf.slope;
    fit.intercept = lf.intercept;
    fit.residual = lf.residual_rms;
    fit.predicted_exponent = c.predicted_exponent();
    fit.pass = std::abs(fit.slope - fit.predicted_exponent) <= 0.1;
    const LineFit tail = fit_loglog(
        std::vector<double>(ns.begin() + 2, ns.end()),
        std::vector<double>(norms.begin() + 2, norms.end()));
    fit.slope_tail = tail.slope;
    return fit;
}

}  // namespace mblab
