// norms.hpp — discrete Sobolev and X^{s,b}-type norms over sampled spectra.
// Weight convention: bracket(x) = 1 + |x| throughout.

#pragma once

#include <complex>
#include <vector>

#include "mblab/dispersion.hpp"

namespace mblab {

enum class QuadRule { trapezoid, simpson };

struct SampledSpectrum {
    std::vector<double> xi;                  // strictly increasing
    std::vector<std::complex<double>> values;
    QuadRule rule = QuadRule::simpson;

    void validate() const;
};

struct NormSpec {
    double s = 0.0;
    double b = 0.0;
};

// (∫ ⟨ξ⟩^{2s} |g(ξ)|² dξ)^{1/2} by the declared rule (simpson needs uniform
// spacing and an odd node count; trapezoid is unrestricted).
double sobolev_norm(const SampledSpectrum& spec, double s);

// Space-time grid ŵ(ξ_i, τ_j); values indexed [i][j].
struct ModulationGrid {
    std::vector<double> xi;
    std::vector<double> tau;
    std::vector<std::vector<std::complex<double>>> w;

    void validate() const;
};

// Discrete ‖⟨ξ⟩^s ⟨τ − phi(ξ)⟩^b ŵ‖_{L²}, trapezoid in both axes.
double xsb_norm(const ModulationGrid& grid, const NormSpec& spec, const PhaseParams& p);

}  // namespace mblab
