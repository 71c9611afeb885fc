#include "mblab/dispersion.hpp"

namespace mblab {

double phase(const PhaseParams& p, double xi) {
    return p.alpha * xi * xi * xi - p.beta * xi;
}

double g0(const PhaseParams& p, const FreqTriple& t) {
    const double e1 = t.eta1();
    return e1 * e1 * e1 + phase(p, t.eta2()) + phase(p, t.eta3());
}

double g0_closed(const PhaseParams& p, const FreqTriple& t) {
    const double e1 = t.eta1();
    if (e1 == 0.0) throw std::domain_error("g0_closed: eta1 must be nonzero");
    const double x = t.eta3() / e1;
    return -3.0 * p.alpha * e1 * e1 * e1 * f_quadratic(p.alpha, x) + p.beta * e1;
}

double g1(const PhaseParams& p, const FreqTriple& t) {
    const double e3 = t.eta3();
    return phase(p, t.eta1()) + phase(p, t.eta2()) + e3 * e3 * e3;
}

double g2(const PhaseParams& p, const FreqQuad& q) {
    return -3.0 * p.alpha * (q.eta1() + q.eta2()) * (q.eta1() + q.eta3()) *
           (q.eta2() + q.eta3());
}

double g2_phase_sum(const PhaseParams& p, const FreqQuad& q) {
    return phase(p, q.eta1()) + phase(p, q.eta2()) + phase(p, q.eta3()) +
           phase(p, q.eta4());
}

double f_quadratic(double alpha, double x) {
    if (alpha == 0.0) throw std::invalid_argument("f_quadratic: alpha must be nonzero");
    return x * x + x + (alpha - 1.0) / (3.0 * alpha);
}

double m_alpha(double alpha) {
    if (alpha == 0.0) throw std::invalid_argument("m_alpha: alpha must be nonzero");
    return (alpha - 1.0) / (3.0 * alpha) - 0.25;
}

RootInfo roots_of_f(double alpha) {
    if (alpha == 0.0) throw std::invalid_argument("roots_of_f: alpha must be nonzero");
    const double radicand = (4.0 - alpha) / (3.0 * alpha);
    if (radicand < 0.0) return {RootKind::complex_pair};
    const double r = std::sqrt(radicand);
    if (alpha == 4.0) return {RootKind::double_root, -0.5, -0.5};
    return {RootKind::two_real, -0.5 - 0.5 * r, -0.5 + 0.5 * r};
}

double lambda_shift(double alpha, double beta) {
    if (!(alpha > 0.0 && alpha < 4.0))
        throw std::domain_error("lambda_shift: alpha must lie in (0,4)");
    return beta / std::sqrt(3.0 * alpha * (4.0 - alpha));
}

PhaseParams scale_system(const PhaseParams& p, double lambda) {
    if (lambda < 1.0) throw std::domain_error("scale_system: lambda must be >= 1");
    return PhaseParams(p.alpha, p.beta / (lambda * lambda));
}

double g0_resonant(const PhaseParams& p, double xi1, double xi) {
    const double a = p.alpha;
    if (a == 4.0) {
        const double w = 2.0 * xi - xi1;  // = 2η2 + η1 for (η1,η2) = (ξ1, ξ−ξ1)
        if (p.beta > 0.0) {
            const double b1 = p.beta1();
            return -3.0 * xi1 * (w - b1) * (w + b1);
        }
        return -3.0 * xi1 * (w * w - p.beta / 3.0);
    }
    const RootInfo ri = roots_of_f(a);
    if (ri.kind == RootKind::two_real) {
        // ξ1 [ −3α (ξ + C1 ξ1)(ξ + C2 ξ1) + β ]
        return xi1 * (-3.0 * a * (xi + ri.c1 * xi1) * (xi + ri.c2 * xi1) + p.beta);
    }
    // no real roots: −3α ξ1 [(ξ − ξ1/2)² + m_alpha ξ1²] + β ξ1
    const double u = xi - 0.5 * xi1;
    return -3.0 * a * xi1 * (u * u + m_alpha(a) * xi1 * xi1) + p.beta * xi1;
}

double g1_resonant(const PhaseParams& p, double eta1, double eta3) {
    const double a = p.alpha;
    if (a == 4.0) {
        const double w = 2.0 * eta1 + eta3;  // = η1 − η2 on the constraint
        if (p.beta > 0.0) {
            const double b1 = p.beta1();
            return -3.0 * eta3 * (w - b1) * (w + b1);
        }
        return -3.0 * eta3 * (w * w - p.beta / 3.0);
    }
    const RootInfo ri = roots_of_f(a);
    if (ri.kind == RootKind::two_real) {
        return eta3 * (-3.0 * a * (eta1 - ri.c1 * eta3) * (eta1 - ri.c2 * eta3) + p.beta);
    }
    const double u = eta1 + 0.5 * eta3;
    return -3.0 * a * eta3 * (u * u + m_alpha(a) * eta3 * eta3) + p.beta * eta3;
}

double g2_resonant(const PhaseParams& p, double xi1, double xi2, double xi) {
    return -3.0 * p.alpha * (xi1 + xi2) * (xi - xi2) * (xi - xi1);
}

}  // namespace mblab
