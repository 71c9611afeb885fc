// dispersion.hpp — phase and resonance polynomials of the coupled KdV pair.
//
// The linearized symbol is phi(ξ) = α ξ³ − β ξ.  Resonance functions over
// zero-sum frequency tuples:
//
//   G0(η1,η2,η3) = η1³ + phi(η2) + phi(η3)
//   G1(η1,η2,η3) = phi(η1) + phi(η2) + η3³          (= G0 with slots 1,3 swapped)
//   G2(η1..η4)   = phi(η1)+phi(η2)+phi(η3)+phi(η4)  (β-free on the constraint)
//
// Closed forms used throughout (all on the zero-sum surface):
//
//   G0 = −3α η1³ f(η3/η1) + β η1,     f(x) = x² + x + (α−1)/(3α)
//   G2 = −3α (η1+η2)(η1+η3)(η2+η3)
//   α=4: G0 = −3 η1 [(2η2+η1)² − β/3]
//
// f has real roots C1 = −1/2 − r/2, C2 = −1/2 + r/2 with r = sqrt((4−α)/(3α))
// for α ∈ (0,4], a double root −1/2 at α = 4, and no real roots otherwise
// (f = (x+1/2)² + m_alpha with m_alpha = (α−1)/(3α) − 1/4 > 0).
//
// The *_resonant evaluators compute the near-cancelling slices
// G0(ξ1, ξ−ξ1, −ξ) and G1(η1, −η1−η3, η3) in factored form: the plain sums
// lose all significant digits when the tuple is resonant (terms ~ N³ ~ 1e15,
// value ~ 1).

#pragma once

#include <cmath>
#include <stdexcept>

namespace mblab {

// Japanese bracket, the convention fixed to 1 + |x|.
inline double bracket(double x) { return 1.0 + std::abs(x); }

struct PhaseParams {
    double alpha;
    double beta;

    PhaseParams(double a, double b) : alpha(a), beta(b) {
        if (a == 0.0) throw std::invalid_argument("PhaseParams: alpha must be nonzero");
    }

    // beta1² = β/3 (β > 0), beta2² = −β/3 (β < 0); valid only on the sign domain.
    double beta1() const {
        if (beta < 0.0) throw std::domain_error("beta1 requires beta >= 0");
        return std::sqrt(beta / 3.0);
    }
    double beta2() const {
        if (beta > 0.0) throw std::domain_error("beta2 requires beta <= 0");
        return std::sqrt(-beta / 3.0);
    }
};

// Zero-sum triple; the third component is derived, never stored.
class FreqTriple {
  public:
    FreqTriple(double e1, double e2) : e1_(e1), e2_(e2) {}
    double eta1() const { return e1_; }
    double eta2() const { return e2_; }
    double eta3() const { return -(e1_ + e2_); }

  private:
    double e1_, e2_;
};

// Zero-sum quadruple; fourth component derived.
class FreqQuad {
  public:
    FreqQuad(double e1, double e2, double e3) : e1_(e1), e2_(e2), e3_(e3) {}
    double eta1() const { return e1_; }
    double eta2() const { return e2_; }
    double eta3() const { return e3_; }
    double eta4() const { return -(e1_ + e2_ + e3_); }

  private:
    double e1_, e2_, e3_;
};

enum class RootKind { two_real, double_root, complex_pair };

struct RootInfo {
    RootKind kind;
    double c1 = 0.0;  // valid only when kind != complex_pair
    double c2 = 0.0;
};

double phase(const PhaseParams& p, double xi);

double g0(const PhaseParams& p, const FreqTriple& t);
// Closed form −3α η1³ f(η3/η1) + β η1; requires η1 ≠ 0.
double g0_closed(const PhaseParams& p, const FreqTriple& t);

double g1(const PhaseParams& p, const FreqTriple& t);

// Product form; exactly β-free.
double g2(const PhaseParams& p, const FreqQuad& q);
// Sum of the four phases, for cross-checking the product form.
double g2_phase_sum(const PhaseParams& p, const FreqQuad& q);

double f_quadratic(double alpha, double x);
double m_alpha(double alpha);
RootInfo roots_of_f(double alpha);

// λ = β / sqrt(3α(4−α)), the shift cancelling −3αλ(C2−C1) + β. Requires α ∈ (0,4).
double lambda_shift(double alpha, double beta);

// (α, β) → (α, λ⁻²β); λ ≥ 1.
PhaseParams scale_system(const PhaseParams& p, double lambda);

// Cancellation-free evaluations of the iterate-formula slices.
// g0_resonant: G0(ξ1, ξ−ξ1, −ξ).
double g0_resonant(const PhaseParams& p, double xi1, double xi);
// g1_resonant: G1(η1, −(η1+η3), η3).
double g1_resonant(const PhaseParams& p, double eta1, double eta3);
// g2_resonant: G2(ξ1, ξ2, ξ−ξ1−ξ2, −ξ) = −3α(ξ1+ξ2)(ξ−ξ2)(ξ−ξ1).
double g2_resonant(const PhaseParams& p, double xi1, double xi2, double xi);

}  // namespace mblab
