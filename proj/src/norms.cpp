#include "mblab/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace mblab {

void SampledSpectrum::validate() const {
    if (xi.empty()) throw std::invalid_argument("SampledSpectrum: empty spectrum");
    if (xi.size() != values.size())
        throw std::invalid_argument("SampledSpectrum: node/value size mismatch");
    for (std::size_t i = 1; i < xi.size(); ++i)
        if (!(xi[i] > xi[i - 1]))
            throw std::invalid_argument("SampledSpectrum: nodes must be strictly increasing");
    for (const auto& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("SampledSpectrum: non-finite value");
}

namespace {

double integrate_samples(const std::vector<double>& x, const std::vector<double>& f,
                         QuadRule rule) {
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("integrate_samples: need >= 2 nodes");
    if (rule == QuadRule::simpson) {
        if (n % 2 == 0)
            throw std::invalid_argument("simpson rule needs an odd node count");
        const double h = (x.back() - x.front()) / (n - 1);
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs((x[i] - x[i - 1]) - h) > 1e-9 * (std::abs(h) + 1.0))
                throw std::invalid_argument("simpson rule needs uniform spacing");
        double acc = f.front() + f.back();
        for (std::size_t i = 1; i + 1 < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f[i];
        return acc * h / 3.0;
    }
    double acc = 0.0;
    for (std::size_t i = 1; i < n; ++i)
        acc += 0.5 * (x[i] - x[i - 1]) * (f[i] + f[i - 1]);
    return acc;
}

}  // namespace

double sobolev_norm(const SampledSpectrum& spec, double s) {
    spec.validate();
    std::vector<double> integrand(spec.xi.size());
    for (std::size_t i = 0; i < spec.xi.size(); ++i)
        integrand[i] = std::pow(bracket(spec.xi[i]), 2.0 * s) * std::norm(spec.values[i]);
    return std::sqrt(integrate_samples(spec.xi, integrand, spec.rule));
}

void ModulationGrid::validate() const {
    if (xi.empty() || tau.empty() || w.empty())
        throw std::invalid_argument("ModulationGrid: empty grid");
    if (w.size() != xi.size())
        throw std::invalid_argument("ModulationGrid: row count mismatch");
    for (const auto& row : w)
        if (row.size() != tau.size())
            throw std::invalid_argument("ModulationGrid: column count mismatch");
}

double xsb_norm(const ModulationGrid& grid, const NormSpec& spec, const PhaseParams& p) {
    grid.validate();
    const std::size_t nx = grid.xi.size(), nt = grid.tau.size();
    auto wx = [&](std::size_t i) {
        if (nx == 1) return 1.0;
        if (i == 0) return 0.5 * (grid.xi[1] - grid.xi[0]);
        if (i == nx - 1) return 0.5 * (grid.xi[nx - 1] - grid.xi[nx - 2]);
        return 0.5 * (grid.xi[i + 1] - grid.xi[i - 1]);
    };
    auto wt = [&](std::size_t j) {
        if (nt == 1) return 1.0;
        if (j == 0) return 0.5 * (grid.tau[1] - grid.tau[0]);
        if (j == nt - 1) return 0.5 * (grid.tau[nt - 1] - grid.tau[nt - 2]);
        return 0.5 * (grid.tau[j + 1] - grid.tau[j - 1]);
    };
    double acc = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
        const double xw = std::pow(bracket(grid.xi[i]), 2.0 * spec.s);
        const double ph = phase(p, grid.xi[i]);
        for (std::size_t j = 0; j < nt; ++j) {
            const double mw = std::pow(bracket(grid.tau[j] - ph), 2.0 * spec.b);
            acc += wx(i) * wt(j) * xw * mw * std::norm(grid.w[i][j]);
        }
    }
    return std::sqrt(acc);
}

}  // namespace mblab
