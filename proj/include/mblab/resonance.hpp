// resonance.hpp — quantifying the near-resonant sets behind the thresholds:
// the β-trichotomy of ⟨G0⟩ at α = 4 over the region {η1 ∈ [N,2N]}, the
// |G1| ~ |η3| Ση² magnitude law away from [0,4], the α = 1 ratio law, and a
// direct 4-D discrete probe of the weighted convolution functional
//
//   ∫_{Σξ=Στ=0} ξ3 ⟨ξ3⟩^s ∏ f_i / (⟨ξ1⟩^s ⟨ξ2⟩^s ⟨L1⟩^b ⟨L2⟩^b ⟨L3⟩^{1−b}),
//
// with f_i a frequency bump times a modulation shell of given thickness
// around the slot's characteristic surface τ = phi_i(ξ) + offset_i and
// L_i measured from that surface.  Offsets with zero sum translate the
// τ-supports without changing the value.

#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "mblab/dispersion.hpp"
#include "mblab/picard.hpp"

namespace mblab {

struct Band {
    double lo = 0.0, hi = 0.0;
    bool relative = false;  // multiples of N

    double resolve_lo(double n) const { return relative ? lo * n : lo; }
    double resolve_hi(double n) const { return relative ? hi * n : hi; }
};

struct RegionSpec {
    double big_n = 0.0;
    Band eta1_band;
    Band eta2_band;
    int n1 = 0, n2 = 0;  // inclusive sample counts per axis

    void validate() const;
};

// Default region for the α=4 scans: η1 ∈ [N, 2N] (257 samples), η2 sampled at
// spacing 1/64 on [−N−2, −N/2+2] so that the strip center −η1/2 lands exactly
// on the grid for η1 = N.
RegionSpec make_trichotomy_region(double big_n);

struct ScanResult {
    double min_bracket_g0 = 0.0;
    double min_eta1 = 0.0, min_eta2 = 0.0;
    std::vector<std::pair<double, double>> measure_below;  // (K, cell-count measure)
    long long both_factors_below_count = 0;  // β>0: cells with both |2η2+η1±β1| < β1
    int n1 = 0, n2 = 0;
    double h1 = 0.0, h2 = 0.0;
};

ScanResult trichotomy_scan(const PhaseParams& p, const RegionSpec& region,
                           const std::vector<double>& thresholds);

// Closed-form measure of {(η1,η2): η1 ∈ [N,2N], ⟨G0⟩ ≤ K} at α = 4, β = 0.
double strip_measure_beta_zero(double big_n, double k_threshold);

struct MagnitudeCheck {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    long long n_samples = 0;
};

// |G1| / (|η3| Ση²) over random zero-sum triples with max|η| in [1e2, 1e6],
// skipping |η3| < 1.  Requires m_alpha > 0 (α > 4 or α < 0).
MagnitudeCheck g1_magnitude_check(const PhaseParams& p, int n_samples,
                                  std::uint64_t seed);

// α = 1: N² |ξ1−ξ| / |G1| over the |ξ2| ~ |ξ−ξ1−ξ2| ~ N configurations.
MagnitudeCheck alpha1_ratio_check(double beta, int n_samples, std::uint64_t seed);

struct ProbeSlot {
    BumpUnion bump;
    double thickness = 1.0;
    PhaseParams phase{1.0, 0.0};
    double offset = 0.0;
};

struct ConvolutionProbeSpec {
    std::array<ProbeSlot, 3> slots;
    double s = 0.0;
    double b = 0.6;
    int n_xi1 = 32, n_tau1 = 16, n_xi2 = 32, n_tau2 = 16;

    void validate() const;  // cell guard <= 1e8, b in (1/2, 1), thickness > 0
};

double weighted_convolution_ratio(const ConvolutionProbeSpec& spec);

// The α=4, β>0 second-iterate data pair as a probe configuration: φ̂ in the
// u-slot, ψ̂ in slot 2, slot 3 on the negated sumset, unit shells in slots 1-2
// and a shell thick enough to span the O(1) resonance offset in slot 3.
ConvolutionProbeSpec make_extremizer_probe(double big_n, double s, double b,
                                           double alpha, double beta);

}  // namespace mblab
