#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mblab/frozen.hpp"
#include "mblab/oscillatory.hpp"

using namespace mblab;

namespace {

WeightIntegralSpec quad(double rho, double s0, double s1, double s2, bool sharp) {
    WeightIntegralSpec s;
    s.lemma = sharp ? LemmaKind::quad_sharp : LemmaKind::quad_rough;
    s.rho1 = rho;
    s.sigma = {s0, s1, s2, 0.0};
    return s;
}

}  // namespace

TEST_CASE("closed-form integral oracles") {
    // ∫ (1+x²)^{-2} dx = π/2
    CHECK(integrate_weight(quad(2.0, 0, 0, 1, true)) ==
          doctest::Approx(3.14159265358979323846 / 2).epsilon(1e-8));
    // tau-pair with rho2 = 0: ∫ (1+|x|)^{-2} dx = 2
    WeightIntegralSpec tp;
    tp.lemma = LemmaKind::tau_pair;
    tp.rho1 = 2.0;
    tp.rho2 = 0.0;
    tp.sigma = {0.0, 0.0, 0.0, 0.0};
    CHECK(integrate_weight(tp) == doctest::Approx(2.0).epsilon(1e-8));
    // near-divergent rough case against the closed form
    // ∫ (1+x²)^{-ρ} dx = sqrt(π) Γ(ρ-1/2) / Γ(ρ)
    for (double rho : {0.51, 0.75, 1.25}) {
        const double direct = integrate_weight(quad(rho, 0, 0, 1, false));
        const double oracle = std::sqrt(3.14159265358979323846) *
                              std::tgamma(rho - 0.5) / std::tgamma(rho);
        CHECK(direct == doctest::Approx(oracle).epsilon(1e-7));
    }
}

TEST_CASE("bound values") {
    CHECK(bound_value(quad(1.5, 0, 0, 1, true)) == doctest::Approx(1.0));
    WeightIntegralSpec cs;
    cs.lemma = LemmaKind::cubic_sharp;
    cs.rho1 = 1.5;
    cs.sigma = {0.0, 1.0, 0.0, 1.0};
    CHECK(bound_value(cs) == doctest::Approx(std::pow(4.0, -0.25)));
    WeightIntegralSpec tp;
    tp.lemma = LemmaKind::tau_pair;
    tp.rho1 = 1.5;
    tp.rho2 = 1.0;
    tp.sigma = {2.5, -2.5, 0.0, 0.0};  // a + b = 0
    CHECK(bound_value(tp) == doctest::Approx(1.0));
}

TEST_CASE("hypothesis violations are rejected before any computation") {
    CHECK_THROWS_AS(integrate_weight(quad(0.5, 0, 0, 1, false)), std::invalid_argument);
    CHECK_THROWS_AS(integrate_weight(quad(1.0, 0, 0, 1, true)), std::invalid_argument);
    CHECK_THROWS_AS(integrate_weight(quad(2.0, 0, 0, 0, true)), std::invalid_argument);
    WeightIntegralSpec tp;
    tp.lemma = LemmaKind::tau_pair;
    tp.rho1 = 2.0;
    tp.rho2 = 3.0;  // rho2 > rho1
    CHECK_THROWS_AS(integrate_weight(tp), std::invalid_argument);
    WeightIntegralSpec cs;
    cs.lemma = LemmaKind::cubic_sharp;
    cs.rho1 = 2.0;
    cs.sigma = {0, 0, 0, 2.0};  // not monic
    CHECK_THROWS_AS(integrate_weight(cs), std::invalid_argument);
}

TEST_CASE("pure-square scaling: sigma2 -> 4 sigma2 halves the integral") {
    const double base = integrate_weight(quad(0.7, 0, 0, 3.0, false));
    const double scaled = integrate_weight(quad(0.7, 0, 0, 12.0, false));
    CHECK(scaled == doctest::Approx(0.5 * base).epsilon(1e-6));
    // invariance of integral * sqrt(sigma2) across six decades
    const double ref = integrate_weight(quad(0.7, 0, 0, 1e-2, false)) * std::sqrt(1e-2);
    for (double s2 : {1.0, 1e2, 1e4}) {
        const double v = integrate_weight(quad(0.7, 0, 0, s2, false)) * std::sqrt(s2);
        CHECK(v == doctest::Approx(ref).epsilon(0.01));
    }
}

TEST_CASE("tau-pair ratio invariant under (a, b) -> (a + c, b - c)") {
    WeightIntegralSpec tp;
    tp.lemma = LemmaKind::tau_pair;
    tp.rho1 = 1.4;
    tp.rho2 = 1.4;
    tp.sigma = {3.0, 7.0, 0.0, 0.0};
    const double r0 = integrate_weight(tp) / bound_value(tp);
    for (double c : {11.0, -40.0}) {
        WeightIntegralSpec sh = tp;
        sh.sigma[0] = tp.sigma[0] + c;
        sh.sigma[1] = tp.sigma[1] - c;
        CHECK(integrate_weight(sh) / bound_value(sh) ==
              doctest::Approx(r0).epsilon(1e-6));
    }
}

TEST_CASE("integrand monotone in rho: max ratio at 1.01 dominates rho = 2") {
    const auto lo = ratio_scan_all(LemmaKind::cubic_sharp, {1.01}, 40, 321);
    const auto hi = ratio_scan_all(LemmaKind::cubic_sharp, {2.0}, 40, 321);
    REQUIRE(lo.size() == hi.size());
    for (std::size_t i = 0; i < lo.size(); ++i) CHECK(lo[i].ratio >= hi[i].ratio);
}

TEST_CASE("truncation soundness: doubling the radius moves integrals < 1e-5") {
    const auto reports = ratio_scan_all(LemmaKind::quad_sharp, {1.01}, 24, 99);
    QuadratureOptions wide;
    wide.radius_scale = 2.0;
    for (const auto& r : reports) {
        const double again = integrate_weight_detailed(r.spec, wide).value;
        CHECK(std::abs(again - r.integral) <= 1e-5 * r.integral);
    }
}

TEST_CASE("scan determinism and resolution stability") {
    const auto a = ratio_scan_all(LemmaKind::quad_sharp, {2.0}, 50, 42);
    const auto b = ratio_scan_all(LemmaKind::quad_sharp, {2.0}, 50, 42);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].ratio == b[i].ratio);
    // sharper quadrature moves the max by < 5%
    QuadratureOptions fine;
    fine.rel_tol = 1e-12;
    const auto c = ratio_scan(LemmaKind::quad_sharp, {2.0}, 50, 42, fine);
    const auto m = ratio_scan(LemmaKind::quad_sharp, {2.0}, 50, 42);
    CHECK(std::abs(c.ratio - m.ratio) <= 0.05 * m.ratio);
}

TEST_CASE("sampled ratios stay under the frozen empirical ceilings") {
    struct Row {
        LemmaKind kind;
        std::vector<double> grid;
        double ceiling;
    };
    const Row rows[] = {
        {LemmaKind::tau_pair, {1.01, 1.5, 2.0}, frozen::kTauPairCeiling},
        {LemmaKind::quad_rough, {0.51, 1.01, 2.0}, frozen::kQuadRoughCeiling},
        {LemmaKind::cubic_rough, {0.35, 1.01, 2.0}, frozen::kCubicRoughCeiling},
        {LemmaKind::quad_sharp, {1.01, 1.5, 2.0}, frozen::kQuadSharpCeiling},
        {LemmaKind::cubic_sharp, {1.01, 1.5, 2.0}, frozen::kCubicSharpCeiling},
    };
    for (const auto& row : rows) {
        const auto best = ratio_scan(row.kind, row.grid, 60, 58123);
        CHECK(best.ratio > 0.0);
        CHECK(best.ratio <= 1.2 * row.ceiling);
    }
}
