#include "mblab/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mblab/dispersion.hpp"
#include "mblab/quadrature.hpp"
#include "mblab/rng.hpp"

namespace mblab {

std::string lemma_name(LemmaKind k) {
    switch (k) {
        case LemmaKind::tau_pair: return "tau-pair";
        case LemmaKind::quad_rough: return "quad-rough";
        case LemmaKind::cubic_rough: return "cubic-rough";
        case LemmaKind::quad_sharp: return "quad-sharp";
        case LemmaKind::cubic_sharp: return "cubic-sharp";
    }
    throw std::logic_error("lemma_name: bad kind");
}

LemmaKind lemma_from_name(const std::string& name) {
    if (name == "tau-pair") return LemmaKind::tau_pair;
    if (name == "quad-rough") return LemmaKind::quad_rough;
    if (name == "cubic-rough") return LemmaKind::cubic_rough;
    if (name == "quad-sharp") return LemmaKind::quad_sharp;
    if (name == "cubic-sharp") return LemmaKind::cubic_sharp;
    throw std::invalid_argument("unknown lemma: " + name);
}

void WeightIntegralSpec::validate() const {
    switch (lemma) {
        case LemmaKind::tau_pair:
            if (!(rho1 > 1.0)) throw std::invalid_argument("tau-pair needs rho1 > 1");
            if (!(rho2 >= 0.0 && rho2 <= rho1))
                throw std::invalid_argument("tau-pair needs 0 <= rho2 <= rho1");
            return;
        case LemmaKind::quad_rough:
            if (!(rho1 > 0.5)) throw std::invalid_argument("quad-rough needs rho > 1/2");
            if (sigma[2] == 0.0 || std::abs(sigma[2]) < 1e-8)
                throw std::invalid_argument("quad-rough needs |sigma2| >= 1e-8");
            return;
        case LemmaKind::cubic_rough:
            if (!(rho1 > 1.0 / 3.0))
                throw std::invalid_argument("cubic-rough needs rho > 1/3");
            if (sigma[3] == 0.0 || std::abs(sigma[3]) < 1e-8)
                throw std::invalid_argument("cubic-rough needs |sigma3| >= 1e-8");
            return;
        case LemmaKind::quad_sharp:
            if (!(rho1 > 1.0)) throw std::invalid_argument("quad-sharp needs rho > 1");
            if (sigma[2] == 0.0 || std::abs(sigma[2]) < 1e-8)
                throw std::invalid_argument("quad-sharp needs |sigma2| >= 1e-8");
            return;
        case LemmaKind::cubic_sharp:
            if (!(rho1 > 1.0)) throw std::invalid_argument("cubic-sharp needs rho > 1");
            if (sigma[3] != 1.0)
                throw std::invalid_argument("cubic-sharp is monic (sigma3 == 1)");
            return;
    }
    throw std::logic_error("validate: bad kind");
}

double WeightIntegralSpec::decay_exponent() const {
    switch (lemma) {
        case LemmaKind::tau_pair: return rho1 + rho2;
        case LemmaKind::quad_rough:
        case LemmaKind::quad_sharp: return 2.0 * rho1;
        case LemmaKind::cubic_rough:
        case LemmaKind::cubic_sharp: return 3.0 * rho1;
    }
    throw std::logic_error("decay_exponent: bad kind");
}

namespace {

bool is_poly(LemmaKind k) { return k != LemmaKind::tau_pair; }

int poly_degree(LemmaKind k) {
    return (k == LemmaKind::quad_rough || k == LemmaKind::quad_sharp) ? 2 : 3;
}

double eval_integrand(const WeightIntegralSpec& s, double x) {
    if (s.lemma == LemmaKind::tau_pair) {
        const double a = s.sigma[0], b = s.sigma[1];
        return std::pow(bracket(x - a), -s.rho1) * std::pow(bracket(-x - b), -s.rho2);
    }
    const int d = poly_degree(s.lemma);
    double p = s.sigma[d];
    for (int k = d - 1; k >= 0; --k) p = p * x + s.sigma[k];
    return std::pow(bracket(p), -s.rho1);
}

// Real roots of σ2x²+σ1x+σ0 (σ2 ≠ 0), numerically stable form.
void quad_roots(double s2, double s1, double s0, std::vector<double>& out) {
    const double disc = s1 * s1 - 4.0 * s2 * s0;
    if (disc < 0.0) return;
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (s1 + (s1 >= 0.0 ? sq : -sq));
    if (q != 0.0) out.push_back(s0 / q);
    out.push_back(s2 != 0.0 ? q / s2 : 0.0);
}

// Real roots of a cubic (leading coefficient nonzero), trigonometric/Cardano.
void cubic_roots(double s3, double s2, double s1, double s0, std::vector<double>& out) {
    const double a = s2 / s3, b = s1 / s3, c = s0 / s3;
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double shift = -a / 3.0;
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    if (disc > 0.0) {
        const double sq = std::sqrt(disc);
        const double u = std::cbrt(-q / 2.0 + sq), v = std::cbrt(-q / 2.0 - sq);
        out.push_back(shift + u + v);
    } else if (p == 0.0 && q == 0.0) {
        out.push_back(shift);
    } else {
        const double r = std::sqrt(-p * p * p / 27.0);
        const double phi = std::acos(std::clamp(-q / (2.0 * r), -1.0, 1.0));
        const double m = 2.0 * std::sqrt(-p / 3.0);
        for (int k = 0; k < 3; ++k)
            out.push_back(shift + m * std::cos((phi + 2.0 * 3.14159265358979323846 * k) / 3.0));
    }
}

std::vector<double> breakpoints(const WeightIntegralSpec& s) {
    std::vector<double> b;
    if (s.lemma == LemmaKind::tau_pair) {
        b.push_back(s.sigma[0]);
        b.push_back(-s.sigma[1]);
    } else if (poly_degree(s.lemma) == 2) {
        b.push_back(-s.sigma[1] / (2.0 * s.sigma[2]));
        quad_roots(s.sigma[2], s.sigma[1], s.sigma[0], b);
    } else {
        cubic_roots(s.sigma[3], s.sigma[2], s.sigma[1], s.sigma[0], b);
        quad_roots(3.0 * s.sigma[3], 2.0 * s.sigma[2], s.sigma[1], b);  // critical pts
    }
    std::sort(b.begin(), b.end());
    return b;
}

// Truncation radius: beyond the breakpoints and far enough that the leading
// monomial dominates the rest of the weight by two orders of magnitude.
double pick_radius(const WeightIntegralSpec& s, const std::vector<double>& brk) {
    double r = 10.0;
    for (double x : brk) r = std::max(r, 2.0 * std::abs(x) + 10.0);
    if (is_poly(s.lemma)) {
        const int d = poly_degree(s.lemma);
        const double lead = std::abs(s.sigma[d]);
        double lower = 1.0;
        for (int k = 0; k < d; ++k) lower += std::abs(s.sigma[k]);
        while (lead * std::pow(r, d) < 100.0 * lower * std::pow(r, d - 1) && r < 1e90)
            r *= 2.0;
    } else {
        const double lower = std::abs(s.sigma[0]) + std::abs(s.sigma[1]) + 1.0;
        while (r < 100.0 * lower && r < 1e90) r *= 2.0;
    }
    return r;
}

// Tail integrand in the substituted variable u = 1/x (x > 0 side of the
// reflected-if-needed integrand): H(u) = f(x) x^p, written without forming x.
double tail_H(const WeightIntegralSpec& s, bool negative_side, double u) {
    if (s.lemma == LemmaKind::tau_pair) {
        const double a = negative_side ? -s.sigma[0] : s.sigma[0];
        const double b = negative_side ? -s.sigma[1] : s.sigma[1];
        // x/⟨x−a⟩ = 1/(u + |1 − a u|),  x/⟨−x−b⟩ = 1/(u + |1 + b u|)
        return std::pow(u + std::abs(1.0 - a * u), -s.rho1) *
               std::pow(u + std::abs(1.0 + b * u), -s.rho2);
    }
    const int d = poly_degree(s.lemma);
    // poly(±x)·u^d = σd(±1)^d + σ_{d−1}(±1)^{d−1} u + ... + σ0 u^d
    double acc = 0.0;
    for (int k = 0; k <= d; ++k) {
        const double sgn = (negative_side && (k % 2 == 1)) ? -1.0 : 1.0;
        acc += sgn * s.sigma[k] * std::pow(u, d - k);
    }
    return std::pow(std::pow(u, d) + std::abs(acc), -s.rho1);
}

}  // namespace

IntegralResult integrate_weight_detailed(const WeightIntegralSpec& spec,
                                         const QuadratureOptions& opt) {
    spec.validate();
    const std::vector<double> brk = breakpoints(spec);
    const double R = pick_radius(spec, brk) * opt.radius_scale;

    // Core segment knots: −R, breakpoints, R, with geometric bridging so no
    // single adaptive call spans many decades.
    std::vector<double> knots{-R};
    for (double x : brk)
        if (x > -R && x < R) knots.push_back(x);
    knots.push_back(R);
    std::vector<double> refined;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        refined.push_back(knots[i]);
        double lo = knots[i], hi = knots[i + 1];
        // bridge geometrically away from the shared origin of the pair
        double span = hi - lo;
        if (span > 64.0) {
            double step = 16.0;
            double left = lo, right = hi;
            std::vector<double> from_left, from_right;
            while (left + step < right && step < span) {
                from_left.push_back(left + step);
                left += step;
                step *= 2.0;
            }
            step = 16.0;
            std::vector<double> tmp;
            while (right - step > left && step < span) {
                tmp.push_back(right - step);
                right -= step;
                step *= 2.0;
            }
            refined.insert(refined.end(), from_left.begin(), from_left.end());
            refined.insert(refined.end(), tmp.rbegin(), tmp.rend());
        }
    }
    refined.push_back(knots.back());
    std::sort(refined.begin(), refined.end());
    refined.erase(std::unique(refined.begin(), refined.end()), refined.end());

    IntegralResult res;
    res.truncation_radius = R;
    auto f = [&](double x) { return eval_integrand(spec, x); };
    for (std::size_t i = 0; i + 1 < refined.size(); ++i) {
        AdaptiveResult ar = adaptive_simpson(f, refined[i], refined[i + 1],
                                             opt.rel_tol, 1e-300, 44);
        res.value += ar.value;
        res.node_count += ar.evals;
    }

    // Tails via t = x^{1−p}: ∫_R^∞ f dx = (1/(p−1)) ∫_0^{R^{1−p}} H(t) dt.
    const double p = spec.decay_exponent();
    const double tR = std::pow(R, 1.0 - p);
    const double inv = 1.0 / (p - 1.0);
    for (bool neg : {false, true}) {
        auto Ht = [&](double t) {
            const double u = (t <= 0.0) ? 0.0 : std::pow(t, inv);
            return tail_H(spec, neg, u);
        };
        AdaptiveResult ar = adaptive_simpson(Ht, 0.0, tR, opt.rel_tol, 1e-300, 44);
        res.value += inv * ar.value;
        res.node_count += ar.evals;
    }
    return res;
}

double integrate_weight(const WeightIntegralSpec& spec) {
    return integrate_weight_detailed(spec).value;
}

double bound_value(const WeightIntegralSpec& spec) {
    spec.validate();
    switch (spec.lemma) {
        case LemmaKind::tau_pair:
            return std::pow(bracket(spec.sigma[0] + spec.sigma[1]), -spec.rho2);
        case LemmaKind::quad_rough:
            return std::pow(std::abs(spec.sigma[2]), -0.5);
        case LemmaKind::cubic_rough:
            return std::pow(std::abs(spec.sigma[3]), -1.0 / 3.0);
        case LemmaKind::quad_sharp: {
            const double vertex =
                spec.sigma[0] - spec.sigma[1] * spec.sigma[1] / (4.0 * spec.sigma[2]);
            return std::pow(std::abs(spec.sigma[2]), -0.5) *
                   std::pow(bracket(vertex), -0.5);
        }
        case LemmaKind::cubic_sharp:
            return std::pow(bracket(3.0 * spec.sigma[1] - spec.sigma[2] * spec.sigma[2]),
                            -0.25);
    }
    throw std::logic_error("bound_value: bad kind");
}

std::vector<RatioReport> ratio_scan_all(LemmaKind lemma,
                                        const std::vector<double>& rho_grid,
                                        int n_samples, std::uint64_t seed,
                                        const QuadratureOptions& opt) {
    std::vector<RatioReport> out;
    Rng rng(seed);
    for (double rho : rho_grid) {
        for (int i = 0; i < n_samples; ++i) {
            WeightIntegralSpec s;
            s.lemma = lemma;
            s.rho1 = rho;
            switch (lemma) {
                case LemmaKind::tau_pair:
                    s.rho2 = rho * rng.uniform01();
                    s.sigma[0] = rng.signed_log_uniform(1e-2, 1e6);
                    s.sigma[1] = rng.signed_log_uniform(1e-2, 1e6);
                    break;
                case LemmaKind::quad_rough:
                case LemmaKind::quad_sharp:
                    s.sigma[0] = rng.signed_log_uniform(1e-2, 1e6);
                    s.sigma[1] = rng.signed_log_uniform(1e-2, 1e6);
                    s.sigma[2] = rng.signed_log_uniform(1e-2, 1e6);
                    break;
                case LemmaKind::cubic_rough:
                    s.sigma[0] = rng.signed_log_uniform(1e-2, 1e6);
                    s.sigma[1] = rng.signed_log_uniform(1e-2, 1e6);
                    s.sigma[2] = rng.signed_log_uniform(1e-2, 1e6);
                    s.sigma[3] = rng.signed_log_uniform(1e-2, 1e6);
                    break;
                case LemmaKind::cubic_sharp:
                    s.sigma[0] = rng.signed_log_uniform(1e-2, 1e6);
                    s.sigma[1] = rng.signed_log_uniform(1e-2, 1e6);
                    s.sigma[2] = rng.signed_log_uniform(1e-2, 1e6);
                    s.sigma[3] = 1.0;
                    break;
            }
            RatioReport rep;
            rep.spec = s;
            const IntegralResult ir = integrate_weight_detailed(s, opt);
            rep.integral = ir.value;
            rep.truncation_radius = ir.truncation_radius;
            rep.node_count = ir.node_count;
            rep.bound = bound_value(s);
            rep.ratio = rep.integral / rep.bound;
            rep.sample_index = static_cast<int>(out.size());
            out.push_back(rep);
        }
    }
    return out;
}

RatioReport ratio_scan(LemmaKind lemma, const std::vector<double>& rho_grid,
                       int n_samples, std::uint64_t seed,
                       const QuadratureOptions& opt) {
    const auto all = ratio_scan_all(lemma, rho_grid, n_samples, seed, opt);
    if (all.empty()) throw std::invalid_argument("ratio_scan: empty scan");
    const RatioReport* best = &all.front();
    for (const auto& r : all)
        if (r.ratio > best->ratio) best = &r;
    return *best;
}

}  // namespace mblab
