#include "mblab/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mblab/rng.hpp"

namespace mblab {

void RegionSpec::validate() const {
    if (!(big_n > 10.0)) throw std::invalid_argument("RegionSpec: N must exceed 10");
    if (n1 < 16 || n2 < 16)
        throw std::invalid_argument("RegionSpec: sample counts must be >= 16");
    if (!(eta1_band.resolve_hi(big_n) > eta1_band.resolve_lo(big_n)) ||
        !(eta2_band.resolve_hi(big_n) > eta2_band.resolve_lo(big_n)))
        throw std::invalid_argument("RegionSpec: empty band");
}

RegionSpec make_trichotomy_region(double big_n) {
    RegionSpec r;
    r.big_n = big_n;
    r.eta1_band = {1.0, 2.0, true};
    r.eta2_band = {-big_n - 2.0, -big_n / 2.0 + 2.0, false};
    r.n1 = 257;
    r.n2 = static_cast<int>(std::llround(32.0 * big_n)) + 257;
    return r;
}

ScanResult trichotomy_scan(const PhaseParams& p, const RegionSpec& region,
                           const std::vector<double>& thresholds) {
    if (p.alpha != 4.0)
        throw std::invalid_argument("trichotomy_scan: requires alpha = 4");
    region.validate();

    const double n = region.big_n;
    const double e1lo = region.eta1_band.resolve_lo(n), e1hi = region.eta1_band.resolve_hi(n);
    const double e2lo = region.eta2_band.resolve_lo(n), e2hi = region.eta2_band.resolve_hi(n);

    ScanResult res;
    res.n1 = region.n1;
    res.n2 = region.n2;
    res.h1 = (e1hi - e1lo) / (region.n1 - 1);
    res.h2 = (e2hi - e2lo) / (region.n2 - 1);
    std::vector<double> ks = thresholds;
    std::sort(ks.begin(), ks.end());
    std::vector<long long> counts(ks.size(), 0);

    const double b1 = p.beta > 0.0 ? p.beta1() : 0.0;
    const double bo3 = p.beta / 3.0;
    double best = std::numeric_limits<double>::infinity();
    double beste1 = 0.0, beste2 = 0.0;
    long long both_below = 0;

    for (int i = 0; i < region.n1; ++i) {
        const double e1 = (i == region.n1 - 1) ? e1hi : e1lo + res.h1 * i;
        for (int j = 0; j < region.n2; ++j) {
            const double e2 = (j == region.n2 - 1) ? e2hi : e2lo + res.h2 * j;
            const double w = 2.0 * e2 + e1;
            const double g0v = -3.0 * e1 * (w * w - bo3);
            const double bg = bracket(g0v);
            if (bg < best) {
                best = bg;
                beste1 = e1;
                beste2 = e2;
            }
            // thresholds ascending: everything from the first passing one counts
            for (std::size_t m = ks.size(); m-- > 0;) {
                if (bg <= ks[m]) ++counts[m];
                else break;
            }
            if (p.beta > 0.0 && std::abs(w + b1) < b1 && std::abs(w - b1) < b1)
                ++both_below;
        }
    }
    res.min_bracket_g0 = best;
    res.min_eta1 = beste1;
    res.min_eta2 = beste2;
    res.both_factors_below_count = both_below;
    const double cell = res.h1 * res.h2;
    for (std::size_t m = 0; m < ks.size(); ++m)
        res.measure_below.emplace_back(ks[m], counts[m] * cell);
    return res;
}

double strip_measure_beta_zero(double big_n, double k_threshold) {
    if (k_threshold <= 1.0) return 0.0;
    // ∫_N^{2N} sqrt((K−1)/(3η1)) dη1
    return 2.0 * std::sqrt((k_threshold - 1.0) / 3.0) *
           (std::sqrt(2.0 * big_n) - std::sqrt(big_n));
}

MagnitudeCheck g1_magnitude_check(const PhaseParams& p, int n_samples,
                                  std::uint64_t seed) {
    if (!(m_alpha(p.alpha) > 0.0))
        throw std::domain_error("g1_magnitude_check: requires m_alpha > 0");
    Rng rng(seed);
    MagnitudeCheck out;
    out.min_ratio = std::numeric_limits<double>::infinity();
    out.max_ratio = 0.0;
    while (out.n_samples < n_samples) {
        const double mag = rng.log_uniform(1e2, 1e6);
        const double d1 = rng.uniform(-1.0, 1.0), d2 = rng.uniform(-1.0, 1.0);
        const double d3 = -(d1 + d2);
        const double dm = std::max({std::abs(d1), std::abs(d2), std::abs(d3)});
        if (dm == 0.0) continue;
        const double e1 = d1 * mag / dm, e2 = d2 * mag / dm, e3 = d3 * mag / dm;
        if (std::abs(e3) < 1.0) continue;  // documented guard
        const double g1v = g1_resonant(p, e1, e3);
        const double comparator = std::abs(e3) * (e1 * e1 + e2 * e2 + e3 * e3);
        const double ratio = std::abs(g1v) / comparator;
        out.min_ratio = std::min(out.min_ratio, ratio);
        out.max_ratio = std::max(out.max_ratio, ratio);
        ++out.n_samples;
    }
    return out;
}

MagnitudeCheck alpha1_ratio_check(double beta, int n_samples, std::uint64_t seed) {
    Rng rng(seed);
    MagnitudeCheck out;
    out.min_ratio = std::numeric_limits<double>::infinity();
    out.max_ratio = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const double n = rng.log_uniform(1e2, 1e6);
        const double e1 = rng.sign() * rng.log_uniform(0.5, 2.0) * n;
        const double e2 = rng.sign() * rng.log_uniform(0.5, 2.0) * n;
        // G1(e1, e2, e3) = e3 (3 e1 e2 + β) at α = 1, so N²|e3|/|G1| factors.
        const double ratio = n * n / std::abs(3.0 * e1 * e2 + beta);
        out.min_ratio = std::min(out.min_ratio, ratio);
        out.max_ratio = std::max(out.max_ratio, ratio);
        ++out.n_samples;
    }
    return out;
}

void ConvolutionProbeSpec::validate() const {
    const double cells = static_cast<double>(n_xi1) * n_tau1 * n_xi2 * n_tau2;
    if (cells > 1e8) throw std::invalid_argument("convolution probe: grid cell guard");
    if (!(b > 0.5 && b < 1.0))
        throw std::invalid_argument("convolution probe: b must lie in (1/2, 1)");
    if (n_xi1 < 2 || n_tau1 < 2 || n_xi2 < 2 || n_tau2 < 2)
        throw std::invalid_argument("convolution probe: need >= 2 nodes per axis");
    for (const auto& sl : slots) {
        if (sl.bump.empty()) throw std::invalid_argument("convolution probe: empty bump");
        if (!(sl.thickness > 0.0))
            throw std::invalid_argument("convolution probe: thickness must be positive");
    }
}

namespace {

double slot_l2_norm(const ProbeSlot& sl) {
    double acc = 0.0;
    for (const auto& b : sl.bump)
        acc += b.amplitude * b.amplitude * (b.hi - b.lo) * sl.thickness;
    return std::sqrt(acc);
}

}  // namespace

double weighted_convolution_ratio(const ConvolutionProbeSpec& spec) {
    spec.validate();
    const ProbeSlot& s1 = spec.slots[0];
    const ProbeSlot& s2 = spec.slots[1];
    const ProbeSlot& s3 = spec.slots[2];
    const double csum = s1.offset + s2.offset + s3.offset;

    double acc = 0.0;
    for (const auto& b1 : s1.bump) {
        const double dxi1 = (b1.hi - b1.lo) / spec.n_xi1;
        const double dtau1 = s1.thickness / spec.n_tau1;
        for (int i1 = 0; i1 < spec.n_xi1; ++i1) {
            const double x1 = b1.lo + (i1 + 0.5) * dxi1;
            const double ph1 = phase(s1.phase, x1);
            for (const auto& b2 : s2.bump) {
                const double dxi2 = (b2.hi - b2.lo) / spec.n_xi2;
                const double dtau2 = s2.thickness / spec.n_tau2;
                for (int i2 = 0; i2 < spec.n_xi2; ++i2) {
                    const double x2 = b2.lo + (i2 + 0.5) * dxi2;
                    const double x3 = -(x1 + x2);
                    const double a3 = bump_value(s3.bump, x3);
                    if (a3 == 0.0) continue;
                    const double h = -(ph1 + phase(s2.phase, x2) + phase(s3.phase, x3));
                    const double heff = h - csum;
                    const double geom = x3 * std::pow(bracket(x3), spec.s) /
                                        (std::pow(bracket(x1), spec.s) *
                                         std::pow(bracket(x2), spec.s));
                    const double wvol = b1.amplitude * b2.amplitude * a3 * dxi1 *
                                        dtau1 * dxi2 * dtau2;
                    for (int j1 = 0; j1 < spec.n_tau1; ++j1) {
                        const double r1 = ((j1 + 0.5) / spec.n_tau1 - 0.5) * s1.thickness;
                        const double w1 = std::pow(bracket(r1), -spec.b);
                        for (int j2 = 0; j2 < spec.n_tau2; ++j2) {
                            const double r2 =
                                ((j2 + 0.5) / spec.n_tau2 - 0.5) * s2.thickness;
                            const double l3 = heff - r1 - r2;
                            if (std::abs(l3) > 0.5 * s3.thickness) continue;
                            acc += geom * wvol * w1 *
                                   std::pow(bracket(r2), -spec.b) *
                                   std::pow(bracket(l3), spec.b - 1.0);
                        }
                    }
                }
            }
        }
    }
    return acc / (slot_l2_norm(s1) * slot_l2_norm(s2) * slot_l2_norm(s3));
}

ConvolutionProbeSpec make_extremizer_probe(double big_n, double s, double b,
                                           double alpha, double beta) {
    if (alpha != 4.0 || !(beta > 0.0))
        throw std::invalid_argument("extremizer probe: needs alpha = 4, beta > 0");
    const double g = 1.0 / big_n;
    const double b1 = std::sqrt(beta / 3.0);
    ConvolutionProbeSpec spec;
    spec.s = s;
    spec.b = b;
    spec.slots[0] = {{BumpProfile(1.0, 2.0 * big_n + b1, 2.0 * big_n + b1 + g)},
                     1.0,
                     PhaseParams(1.0, 0.0),
                     0.0};
    spec.slots[1] = {{BumpProfile(1.0, -big_n + g, -big_n + 2.0 * g)},
                     1.0,
                     PhaseParams(alpha, beta),
                     0.0};
    // resonance magnitude on the supports: |H| <= 3(2N+b1+γ)·5γ·(2b1+5γ)
    const double hmax = 3.0 * (2.0 * big_n + b1 + g) * 5.0 * g * (2.0 * b1 + 5.0 * g);
    spec.slots[2] = {{BumpProfile(1.0, -big_n - b1 - 3.0 * g, -big_n - b1 - g)},
                     2.0 * (1.05 * hmax + 1.5),
                     PhaseParams(alpha, beta),
                     0.0};
    return spec;
}

}  // namespace mblab
