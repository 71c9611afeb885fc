// picard.hpp — explicit Fourier-side evaluation of the second and third
// Picard iterates for the four indicator-bump data families, windowed H^s
// norms, and growth-exponent fits over dyadic N-ladders.
//
// Second iterate (data φ, ψ; output on the v-component):
//
//   F ψ2(ξ,t) = 2iξ e^{i phi(ξ) t} ∫_{A_ξ} φ̂(ξ1) ψ̂(ξ−ξ1) K(G0(ξ1, ξ−ξ1, −ξ), t) dξ1
//
// with K(G,t) = (e^{iGt} − 1)/G and A_ξ the exact support intersection.
//
// Third iterate (φ = 0 family):
//
//   F ψ3(ξ,t) = −3i [I1(ξ,t) − I2(ξ,t)],
//   I1 = ξ e^{i phi(ξ) t} ∬ (ξ−ξ1) ψ̂(ξ1)ψ̂(ξ2)ψ̂(ξ−ξ1−ξ2)
//          / G1(ξ2, ξ−ξ1−ξ2, ξ1−ξ) · K(G2(ξ1, ξ2, ξ−ξ1−ξ2, −ξ), t)
//   I2 = same with K(G1(ξ1, −ξ, ξ−ξ1), t).
//
// I1/I2 are kept per support-block (outer component i × inner component j of
// the ψ̂ union), which is what the block-structure checks consume.
//
// Data families (N the ladder frequency, s the Sobolev index):
//   beta-positive  α=4, β>0:  γ = N⁻¹,    φ̂ on [2N+β1, 2N+β1+γ], ψ̂ on [−N+γ, −N+2γ]
//   beta-zero      α=4, β=0:  γ = N^{−1/2}, same shape with β1 = 0
//   beta-negative  α=4, β<0:  γ2 = N^{−1/2}, φ = 0, ψ̂ on B1 ∪ B2
//   general-alpha  α∈(0,4)\{1}: γ = N⁻², φ̂ on [N, N+γ], ψ̂ centered at
//                  −(1+C1α)N + λN⁻¹ with λ = β/sqrt(3α(4−α))
// All amplitudes are width^{−1/2}-normalized times N^{−s} so the H^s data
// norms stay O(1) along the ladder.

#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "mblab/dispersion.hpp"

namespace mblab {

struct BumpProfile {
    double amplitude;
    double lo, hi;

    BumpProfile(double a, double l, double h) : amplitude(a), lo(l), hi(h) {
        if (!(l < h)) throw std::invalid_argument("BumpProfile: need lo < hi");
        if (!(a > 0.0)) throw std::invalid_argument("BumpProfile: need amplitude > 0");
    }
};

using BumpUnion = std::vector<BumpProfile>;

double bump_value(const BumpUnion& u, double xi);
// Closed-form H^s norm of the indicator union.
double bump_hs_norm(const BumpUnion& u, double s);

// (e^{iGt} − 1)/G, series branch below |Gt| = 1e-6.
std::complex<double> phase_kernel(double g, double t);

enum class Construction { beta_positive, beta_negative, beta_zero, general_alpha };

std::string construction_name(Construction c);
Construction construction_from_name(const std::string& name);

struct ConstructionParams {
    Construction id;
    double alpha;
    double beta;
    double s;
    double big_n;

    void validate() const;
    PhaseParams phase() const { return PhaseParams(alpha, beta); }
    double width() const;                        // γ (or γ2) for this family
    std::pair<double, double> window() const;    // E1 / E2 / the λ-shifted interval
    int iterate_order() const;                   // 2 or 3
    double predicted_exponent() const;           // d log(norm) / d log N
};

struct DataPair {
    BumpUnion phi_hat;
    BumpUnion psi_hat;
};

// Builds the family's data and checks the H^s normalization lands in [1/4, 4].
DataPair build_data(const ConstructionParams& c);

struct IterateField {
    int order = 2;
    double t = 0.0;
    std::vector<double> xi;                        // uniform, odd count
    std::vector<std::complex<double>> values;
    int nodes_per_bump = 0;
    bool all_empty = false;   // no window node saw a nonempty A_ξ
    double max_abs_g0 = 0.0;  // max |G0| over second-iterate quadrature nodes

    // third iterate only: per (outer i, inner j) block values at window nodes
    std::vector<std::vector<std::vector<std::complex<double>>>> i1_blocks, i2_blocks;
};

IterateField second_iterate(const BumpUnion& phi_hat, const BumpUnion& psi_hat,
                            const PhaseParams& p, double t, double win_lo,
                            double win_hi, int n_window = 129,
                            int nodes_per_bump = 96);

IterateField third_iterate(const BumpUnion& psi_hat, const PhaseParams& p, double t,
                           double win_lo, double win_hi, int n_window = 65,
                           int nodes_per_bump = 96);

// Exact measure of A_ξ = supp φ̂ ∩ (ξ − supp ψ̂).
double overlap_measure(const BumpUnion& phi_hat, const BumpUnion& psi_hat, double xi);

// sqrt(∫ ⟨ξ⟩^{2s} |F|² dξ) over the sampled window (Simpson).
double windowed_norm(const IterateField& f, double s);
// Same over a sub-range of the sampled window (trapezoid on covered nodes).
double windowed_norm(const IterateField& f, double s, double lo, double hi);

struct GrowthFit {
    std::vector<std::pair<double, double>> ladder;  // (N, windowed norm)
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
    double slope_tail = 0.0;  // fit excluding the two smallest N
    double predicted_exponent = 0.0;
    bool pass = false;
    double max_abs_g0 = 0.0;  // ladder-wide
};

GrowthFit growth_fit(const ConstructionParams& c, double t,
                     const std::vector<double>& ladder, int n_window = 0,
                     int nodes_per_bump = 96);

}  // namespace mblab
