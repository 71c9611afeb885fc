// oscillatory.hpp — numerical certification of the weighted-integral bounds
//
//   tau-pair    ∫ dx / (⟨x−a⟩^ρ1 ⟨−x−b⟩^ρ2)            ≤ C ⟨a+b⟩^{−ρ2}     (ρ1>1, 0≤ρ2≤ρ1)
//   quad-rough  ∫ dx / ⟨σ2x²+σ1x+σ0⟩^ρ                 ≤ C |σ2|^{−1/2}     (ρ>1/2)
//   cubic-rough ∫ dx / ⟨σ3x³+σ2x²+σ1x+σ0⟩^ρ            ≤ C |σ3|^{−1/3}     (ρ>1/3)
//   quad-sharp  same integrand                          ≤ C |σ2|^{−1/2} ⟨σ0−σ1²/(4σ2)⟩^{−1/2}  (ρ>1)
//   cubic-sharp monic cubic                             ≤ C ⟨3σ1−σ2²⟩^{−1/4}                   (ρ>1)
//
// The constants are never stated, so bound_value uses C = 1 and ratio_scan
// measures the empirical constant over randomized admissible draws.
//
// Improper integrals: adaptive Simpson on a breakpoint-split core interval
// [−R, R] (breakpoints at the real roots of the weight polynomial and of its
// derivative, where the integrand mass concentrates), plus tails mapped to a
// finite interval by t = x^{−(p−1)} with p the decay exponent.  Exponents can
// sit barely above 1 (quad-rough at ρ = 0.51 decays like x^{−1.02}), where any
// fixed cutoff is hopeless; the substitution integrates the tail exactly down
// to t = 0.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace mblab {

enum class LemmaKind { tau_pair, quad_rough, cubic_rough, quad_sharp, cubic_sharp };

std::string lemma_name(LemmaKind k);
LemmaKind lemma_from_name(const std::string& name);

struct WeightIntegralSpec {
    LemmaKind lemma = LemmaKind::quad_sharp;
    double rho1 = 0.0;
    double rho2 = 0.0;                 // tau_pair only
    std::array<double, 4> sigma{0, 0, 0, 0};  // σ0..σ3; tau_pair stores (a, b) in σ0, σ1

    void validate() const;  // throws on hypothesis violation
    double decay_exponent() const;
};

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double radius_scale = 1.0;  // multiplies the automatic truncation radius
};

struct IntegralResult {
    double value = 0.0;
    double truncation_radius = 0.0;
    std::int64_t node_count = 0;
};

IntegralResult integrate_weight_detailed(const WeightIntegralSpec& spec,
                                         const QuadratureOptions& opt = {});
double integrate_weight(const WeightIntegralSpec& spec);

double bound_value(const WeightIntegralSpec& spec);

struct RatioReport {
    WeightIntegralSpec spec;
    double integral = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
    double truncation_radius = 0.0;
    std::int64_t node_count = 0;
    int sample_index = -1;
};

// All sampled reports, n_samples per rho value, deterministic in seed.
std::vector<RatioReport> ratio_scan_all(LemmaKind lemma,
                                        const std::vector<double>& rho_grid,
                                        int n_samples, std::uint64_t seed,
                                        const QuadratureOptions& opt = {});

// Maximal report, ties broken by lower sample index.
RatioReport ratio_scan(LemmaKind lemma, const std::vector<double>& rho_grid,
                       int n_samples, std::uint64_t seed,
                       const QuadratureOptions& opt = {});

}  // namespace mblab
