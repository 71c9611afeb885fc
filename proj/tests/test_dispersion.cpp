#include <doctest.h>

#include <cmath>

#include "mblab/dispersion.hpp"
#include "mblab/rng.hpp"

using namespace mblab;

namespace {

// tolerance scaled by the non-cancelled term magnitude: η ~ 1e5 cubes to 1e15,
// so the absolute floating error of either route is ~ulp of that scale even
// when the value itself is O(1).
double triple_scale(const PhaseParams& p, const FreqTriple& t) {
    auto c = [](double x) { return std::abs(x * x * x); };
    return 1.0 + c(t.eta1()) +
           std::abs(p.alpha) * (c(t.eta2()) + c(t.eta3())) +
           std::abs(p.beta) * (std::abs(t.eta2()) + std::abs(t.eta3()));
}

void check_scaled(double a, double b, double scale) {
    CHECK(std::abs(a - b) <= 1e-10 * (1.0 + std::abs(a) + scale));
}

const PhaseParams kParamSet[] = {{4.0, 3.0}, {4.0, 0.0},  {4.0, -3.0}, {1.0, 5.0},
                                 {2.0, 1.0}, {8.0, -2.0}, {-2.0, 1.0}, {0.5, -1.0}};

}  // namespace

TEST_CASE("phase polynomial values") {
    CHECK(phase(PhaseParams(1, 0), 2.0) == 8.0);
    CHECK(phase(PhaseParams(4, 3), 1.0) == 1.0);
    CHECK(phase(PhaseParams(4, 0), -1.0) == -4.0);
    CHECK_THROWS_AS(PhaseParams(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("beta1/beta2 sign domains") {
    CHECK(PhaseParams(4, 3).beta1() == doctest::Approx(1.0));
    CHECK(PhaseParams(4, -3).beta2() == doctest::Approx(1.0));
    CHECK_THROWS_AS(PhaseParams(4, -1).beta1(), std::domain_error);
    CHECK_THROWS_AS(PhaseParams(4, 1).beta2(), std::domain_error);
}

TEST_CASE("zero-sum closure by construction") {
    FreqTriple t(0.1, -1.7);
    CHECK(t.eta1() + t.eta2() + t.eta3() == 0.0);
    FreqQuad q(3.0, 1.0, -1.0);
    CHECK(q.eta1() + q.eta2() + q.eta3() + q.eta4() == 0.0);
}

TEST_CASE("g0 examples") {
    CHECK(g0(PhaseParams(4, 0), FreqTriple(1.0, -0.5)) == doctest::Approx(0.0));
    CHECK(g0(PhaseParams(4, 3), FreqTriple(1.0, 0.0)) == doctest::Approx(0.0));
    const FreqTriple t(2.0, 1.0);
    CHECK(g0(PhaseParams(4, 0), t) == doctest::Approx(-96.0));
    CHECK(g0_closed(PhaseParams(4, 0), t) == doctest::Approx(-96.0));
}

TEST_CASE("g0 sum form agrees with closed form on random zero-sum triples") {
    Rng rng(7001);
    for (const auto& p : kParamSet) {
        for (int i = 0; i < 10000; ++i) {
            const double e1 = rng.signed_log_uniform(1e-2, 1e5);
            const double e2 = rng.signed_log_uniform(1e-2, 1e5);
            const FreqTriple t(e1, e2);
            check_scaled(g0(p, t), g0_closed(p, t), triple_scale(p, t));
        }
    }
}

TEST_CASE("alpha=4 factorizations of g0") {
    Rng rng(7002);
    for (double beta : {3.0, 0.0, -3.0, 0.7}) {
        const PhaseParams p(4.0, beta);
        for (int i = 0; i < 10000; ++i) {
            const double e1 = rng.signed_log_uniform(1e-2, 1e5);
            const double e2 = rng.signed_log_uniform(1e-2, 1e5);
            const FreqTriple t(e1, e2);
            const double w = 2.0 * e2 + e1;
            const double factored = -3.0 * e1 * (w * w - beta / 3.0);
            check_scaled(g0(p, t), factored, triple_scale(p, t));
            if (beta > 0.0) {
                const double b1 = p.beta1();
                check_scaled(g0(p, t), -3.0 * e1 * (w + b1) * (w - b1),
                             triple_scale(p, t));
            }
        }
    }
}

TEST_CASE("g1 examples and exchange identity") {
    CHECK(g1(PhaseParams(1, 5), FreqTriple(1.0, 1.0)) == doctest::Approx(-16.0));
    CHECK(g1(PhaseParams(4, 0), FreqTriple(1.0, -1.0)) == doctest::Approx(0.0));
    Rng rng(7003);
    for (const auto& p : kParamSet) {
        for (int i = 0; i < 2000; ++i) {
            const double e1 = rng.signed_log_uniform(1e-2, 1e5);
            const double e2 = rng.signed_log_uniform(1e-2, 1e5);
            const FreqTriple t(e1, e2);
            const FreqTriple rev(t.eta3(), t.eta2());
            check_scaled(g1(p, t), g0(p, rev), triple_scale(p, t));
        }
    }
}

TEST_CASE("g2 product form, beta invariance, sum cross-check") {
    CHECK(g2(PhaseParams(4, 9), FreqQuad(1, 1, -1)) == 0.0);
    CHECK(g2(PhaseParams(4, 0), FreqQuad(2, 1, -1)) == 0.0);
    CHECK(g2(PhaseParams(4, 7), FreqQuad(3, 1, -1)) == 0.0);
    CHECK(g2(PhaseParams(4, 7), FreqQuad(3, 1, -2)) == doctest::Approx(48.0));
    Rng rng(7004);
    for (const auto& p : kParamSet) {
        const PhaseParams p0(p.alpha, 0.0);
        for (int i = 0; i < 2000; ++i) {
            const FreqQuad q(rng.signed_log_uniform(1e-2, 1e5),
                             rng.signed_log_uniform(1e-2, 1e5),
                             rng.signed_log_uniform(1e-2, 1e5));
            CHECK(g2(p, q) == g2(p0, q));  // exactly beta-free
            const double scale =
                1.0 + std::abs(p.alpha) * (std::pow(std::abs(q.eta1()), 3) +
                                           std::pow(std::abs(q.eta2()), 3) +
                                           std::pow(std::abs(q.eta3()), 3) +
                                           std::pow(std::abs(q.eta4()), 3));
            check_scaled(g2(p, q), g2_phase_sum(p, q), scale);
        }
    }
}

TEST_CASE("f quadratic: roots and reflection symmetry") {
    CHECK(f_quadratic(1.0, 0.0) == doctest::Approx(0.0));
    CHECK(f_quadratic(1.0, -1.0) == doctest::Approx(0.0));
    CHECK(f_quadratic(4.0, -0.5) == doctest::Approx(0.0));
    CHECK(f_quadratic(8.0, -0.5) == doctest::Approx(1.0 / 24.0));
    CHECK(m_alpha(8.0) == doctest::Approx(1.0 / 24.0));
    Rng rng(7005);
    for (const auto& p : kParamSet) {
        for (int i = 0; i < 2000; ++i) {
            const double x = rng.signed_log_uniform(1e-3, 1e4);
            const double a = f_quadratic(p.alpha, x);
            const double b = f_quadratic(p.alpha, -1.0 - x);
            CHECK(std::abs(a - b) <= 1e-10 * (1.0 + x * x));
        }
    }
}

TEST_CASE("roots_of_f kinds and values") {
    const RootInfo r4 = roots_of_f(4.0);
    CHECK(r4.kind == RootKind::double_root);
    CHECK(r4.c1 == doctest::Approx(-0.5));
    const RootInfo r1 = roots_of_f(1.0);
    CHECK(r1.kind == RootKind::two_real);
    CHECK(r1.c1 == doctest::Approx(-1.0));
    CHECK(r1.c2 == doctest::Approx(0.0));
    const RootInfo r2 = roots_of_f(2.0);
    CHECK(r2.kind == RootKind::two_real);
    CHECK(r2.c1 == doctest::Approx(-0.5 - 0.5 * std::sqrt(1.0 / 3.0)));
    CHECK(r2.c2 == doctest::Approx(-0.5 + 0.5 * std::sqrt(1.0 / 3.0)));
    CHECK(roots_of_f(5.0).kind == RootKind::complex_pair);
    CHECK(roots_of_f(-1.0).kind == RootKind::complex_pair);
}

TEST_CASE("Vieta relations for real-root alphas") {
    Rng rng(7006);
    for (int i = 0; i < 10000; ++i) {
        const double alpha = rng.uniform(1e-3, 4.0);
        const RootInfo r = roots_of_f(alpha);
        REQUIRE(r.kind != RootKind::complex_pair);
        CHECK(std::abs(r.c1 + r.c2 + 1.0) <= 1e-12);
        CHECK(std::abs(r.c1 * r.c2 - (alpha - 1.0) / (3.0 * alpha)) <=
              1e-10 * (1.0 + std::abs((alpha - 1.0) / (3.0 * alpha))));
        CHECK(std::abs(f_quadratic(alpha, r.c1)) <= 1e-10 * (1.0 + r.c1 * r.c1));
        CHECK(std::abs(f_quadratic(alpha, r.c2)) <= 1e-10 * (1.0 + r.c2 * r.c2));
    }
}

TEST_CASE("lambda_shift values and cancellation identity") {
    CHECK(lambda_shift(1.0, 3.0) == doctest::Approx(1.0));
    CHECK(lambda_shift(3.0, 0.0) == 0.0);
    CHECK(lambda_shift(2.0, 2.0) == doctest::Approx(2.0 / std::sqrt(12.0)));
    CHECK_THROWS_AS(lambda_shift(4.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(lambda_shift(-1.0, 1.0), std::domain_error);
    Rng rng(7007);
    for (int i = 0; i < 10000; ++i) {
        const double alpha = rng.uniform(1e-2, 3.99);
        const double beta = rng.signed_log_uniform(1e-3, 1e3);
        const double lam = lambda_shift(alpha, beta);
        const RootInfo r = roots_of_f(alpha);
        const double resid = -3.0 * alpha * lam * (r.c2 - r.c1) + beta;
        CHECK(std::abs(resid) <= 1e-12 * (1.0 + std::abs(beta)));
    }
}

TEST_CASE("scale_system") {
    const PhaseParams p(4.0, 3.0);
    const PhaseParams s1 = scale_system(p, 1.0);
    CHECK(s1.alpha == 4.0);
    CHECK(s1.beta == 3.0);
    const PhaseParams s10 = scale_system(PhaseParams(4.0, -3.0), 10.0);
    CHECK(s10.beta == doctest::Approx(-0.03));
    CHECK_THROWS_AS(scale_system(p, 0.5), std::domain_error);
    Rng rng(7008);
    for (int i = 0; i < 1000; ++i) {
        const double l1 = rng.uniform(1.0, 10.0), l2 = rng.uniform(1.0, 10.0);
        const PhaseParams a = scale_system(scale_system(p, l1), l2);
        const PhaseParams b = scale_system(p, l1 * l2);
        CHECK(a.beta == doctest::Approx(b.beta).epsilon(1e-14));
    }
}

TEST_CASE("resonant slice evaluators agree with the sum forms") {
    Rng rng(7009);
    for (const auto& p : kParamSet) {
        for (int i = 0; i < 2000; ++i) {
            const double x1 = rng.signed_log_uniform(1e-2, 1e3);
            const double xi = rng.signed_log_uniform(1e-2, 1e3);
            const FreqTriple t0(x1, xi - x1);
            check_scaled(g0_resonant(p, x1, xi), g0(p, t0), triple_scale(p, t0));
            const double e1 = rng.signed_log_uniform(1e-2, 1e3);
            const double e3 = rng.signed_log_uniform(1e-2, 1e3);
            const FreqTriple t1(e1, -(e1 + e3));
            check_scaled(g1_resonant(p, e1, e3), g1(p, t1), triple_scale(p, t1));
            const double x2 = rng.signed_log_uniform(1e-2, 1e3);
            const FreqQuad q(x1, x2, xi - x1 - x2);
            const double scale = 1.0 + std::abs(p.alpha) *
                                           (std::pow(std::abs(x1), 3) +
                                            std::pow(std::abs(x2), 3) +
                                            std::pow(std::abs(xi), 3));
            check_scaled(g2_resonant(p, x1, x2, xi), g2(p, q), scale);
        }
    }
}
