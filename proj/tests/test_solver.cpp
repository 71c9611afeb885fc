#include <doctest.h>

#include <cmath>
#include <array>
#include <stdexcept>
#include <complex>

#include "mblab/fft.hpp"
#include "mblab/solver.hpp"

using namespace mblab;

namespace {

const double kPi = 3.14159265358979323846;

GridSpec test_grid() { return {64.0 * kPi, 256}; }

SolverParams std_params(double beta2 = 3.0) {
    SolverParams p;
    p.p1 = PhaseParams(1.0, 0.0);
    p.p2 = PhaseParams(4.0, beta2);
    p.dt = 1e-3;
    return p;
}

double spectral_linf_diff(const Spectrum& a, const Spectrum& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("fft roundtrip and analytic mode") {
    GridSpec g = test_grid();
    Spectrum hat(g.modes, {0, 0});
    hat[3] = {0.5, 0.0};
    hat[g.modes - 3] = {0.5, 0.0};  // cos(3 * 2pi x / L)
    const auto phys = to_physical(g, hat);
    const auto x = g.grid_x();
    for (int j = 0; j < g.modes; j += 17)
        CHECK(phys[j] == doctest::Approx(std::cos(3.0 * 2.0 * kPi * x[j] / g.box_l))
                             .epsilon(1e-12));
    const auto back = to_spectral(g, phys);
    CHECK(spectral_linf_diff(hat, back) <= 1e-14);
}

TEST_CASE("grid validation") {
    GridSpec bad{10.0, 100};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    GridSpec small{10.0, 32};
    CHECK_THROWS_AS(small.validate(), std::invalid_argument);
}

TEST_CASE("linear propagate: dt = 0 identity, unimodular, single mode phase") {
    GridSpec g = test_grid();
    SpectralState st = make_state(g);
    st.u_hat[5] = {0.3, -0.1};
    st.v_hat[7] = {0.0, 0.2};
    SpectralState ref = st;
    linear_propagate(g, st, PhaseParams(1, 0), PhaseParams(4, 3), 0.0);
    CHECK(spectral_linf_diff(st.u_hat, ref.u_hat) == 0.0);

    // single u-mode advances by e^{i xi^3 dt}
    const double dt = 0.37;
    linear_propagate(g, st, PhaseParams(1, 0), PhaseParams(4, 3), dt);
    const double xi5 = g.xi(5);
    const std::complex<double> expect =
        ref.u_hat[5] * std::complex<double>(std::cos(xi5 * xi5 * xi5 * dt),
                                            std::sin(xi5 * xi5 * xi5 * dt));
    CHECK(std::abs(st.u_hat[5] - expect) <= 1e-14);

    // norm preserved to 1 ulp per mode, and reversible
    CHECK(std::abs(std::abs(st.u_hat[5]) - std::abs(ref.u_hat[5])) <= 1e-15);
    linear_propagate(g, st, PhaseParams(1, 0), PhaseParams(4, 3), -dt);
    CHECK(spectral_linf_diff(st.u_hat, ref.u_hat) <= 1e-15);
    CHECK(spectral_linf_diff(st.v_hat, ref.v_hat) <= 1e-15);
}

TEST_CASE("zero state stays zero; v = 0 keeps u linear") {
    GridSpec g = test_grid();
    SolverParams prm = std_params();
    SpectralState st = make_state(g);
    step(g, st, prm);
    CHECK(l2_energy(g, st) == 0.0);

    SpectralState su = make_state(g);
    su.u_hat = gaussian_packet(g, 1.0, g.box_l / 2, 8.0, 0.5);
    SpectralState lin = su;
    const auto traj = integrate(g, su, prm, {0.25});
    linear_propagate(g, lin, prm.p1, prm.p2, 0.25);
    CHECK(spectral_linf_diff(traj[0].u_hat, lin.u_hat) <= 1e-13);
    for (const auto& c : traj[0].v_hat) CHECK(std::abs(c) == 0.0);
}

TEST_CASE("u = 0: after one step u is sourced at second order in v") {
    GridSpec g = test_grid();
    SolverParams prm = std_params();
    auto sourced = [&](double amp) {
        SpectralState st = make_state(g);
        st.v_hat = gaussian_packet(g, amp, g.box_l / 2, 8.0, 0.75);
        step(g, st, prm);
        double unorm = 0.0;
        for (const auto& c : st.u_hat) unorm += std::norm(c);
        return unorm;
    };
    const double small = sourced(1e-3), doubled = sourced(2e-3);
    CHECK(small > 0.0);
    // quadratic sourcing: amp -> 2 amp multiplies ||u||^2 by 16
    CHECK(doubled / small == doctest::Approx(16.0).epsilon(1e-3));
}

TEST_CASE("masses are conserved bit-for-bit; energies drift below tolerance") {
    GridSpec g = test_grid();
    SolverParams prm = std_params();
    SpectralState st = make_state(g);
    st.u_hat = gaussian_packet(g, 1.0, g.box_l * 0.45, 8.0, 0.5);
    st.v_hat = gaussian_packet(g, 1.0, g.box_l * 0.55, 8.0, 0.75);
    Diagnostics d;
    d.times.push_back(0);
    d.mass_u.push_back(mass(g, st.u_hat));
    d.mass_v.push_back(mass(g, st.v_hat));
    d.l2_energy.push_back(l2_energy(g, st));
    d.hamiltonian.push_back(hamiltonian(g, st, prm.p1, prm.p2));
    integrate(g, st, prm, {0.5, 1.0}, &d);
    for (double m : d.mass_u) CHECK(m == d.mass_u.front());
    for (double m : d.mass_v) CHECK(m == d.mass_v.front());
    auto drift = [](const std::vector<double>& q) {
        double lo = q.front(), hi = q.front();
        for (double v : q) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        return (hi - lo) / std::abs(q.front());
    };
    CHECK(drift(d.l2_energy) <= 1e-6);
    CHECK(drift(d.hamiltonian) <= 1e-5);
}

TEST_CASE("conservation oracle: time-difference quotients sit at scheme error") {
    // independent check of the conserved quantities: central difference of each
    // along the trajectory must vanish to discretization accuracy
    GridSpec g = test_grid();
    SolverParams prm = std_params();
    SpectralState st = make_state(g);
    st.u_hat = gaussian_packet(g, 1.0, g.box_l * 0.45, 8.0, 0.5);
    st.v_hat = gaussian_packet(g, 1.0, g.box_l * 0.55, 8.0, 0.75);
    const double h = 0.05;
    const auto tr = integrate(g, st, prm, {h, 2 * h, 3 * h});
    auto quantities = [&](const SpectralState& s) {
        return std::array<double, 4>{mass(g, s.u_hat), mass(g, s.v_hat),
                                     l2_energy(g, s),
                                     hamiltonian(g, s, prm.p1, prm.p2)};
    };
    const auto a = quantities(tr[0]), b = quantities(tr[2]);
    for (int q = 0; q < 4; ++q) {
        const double dqdt = (b[q] - a[q]) / (2 * h);
        CHECK(std::abs(dqdt) <= 1e-9 * (1.0 + std::abs(a[q])));
    }
}

TEST_CASE("hermitian symmetry is preserved exactly through steps") {
    GridSpec g = test_grid();
    SolverParams prm = std_params();
    SpectralState st = make_state(g);
    st.u_hat = gaussian_packet(g, 1.0, g.box_l * 0.5, 6.0, 1.0);
    st.v_hat = gaussian_packet(g, 0.8, g.box_l * 0.4, 7.0, 0.9);
    for (int k = 0; k < 25; ++k) step(g, st, prm);
    for (int k = 1; k < g.modes / 2; ++k) {
        CHECK(st.u_hat[k] == std::conj(st.u_hat[g.modes - k]));
        CHECK(st.v_hat[k] == std::conj(st.v_hat[g.modes - k]));
    }
    CHECK(st.u_hat[0].imag() == 0.0);
    CHECK(st.u_hat[g.modes / 2] == std::complex<double>(0.0, 0.0));
}

TEST_CASE("linear-regime agreement at amplitude 1e-8") {
    GridSpec g = test_grid();
    SolverParams prm = std_params();
    SpectralState st = make_state(g);
    st.u_hat = gaussian_packet(g, 1e-8, g.box_l * 0.45, 8.0, 0.5);
    st.v_hat = gaussian_packet(g, 1e-8, g.box_l * 0.55, 8.0, 0.75);
    SpectralState lin = st;
    const auto tr = integrate(g, st, prm, {1.0});
    linear_propagate(g, lin, prm.p1, prm.p2, 1.0);
    CHECK(spectral_linf_diff(tr[0].u_hat, lin.u_hat) <= 1e-12);
    CHECK(spectral_linf_diff(tr[0].v_hat, lin.v_hat) <= 1e-12);
}

TEST_CASE("duhamel crosscheck: delta residual slopes are cubic") {
    GridSpec g = test_grid();
    SolverParams prm = std_params();
    prm.dt = 2e-3;
    Spectrum u0 = gaussian_packet(g, 1.0, g.box_l * 0.45, 8.0, 0.5);
    Spectrum v0 = gaussian_packet(g, 1.0, g.box_l * 0.55, 8.0, 0.75);
    const auto rep = picard_crosscheck(g, u0, v0, prm, {1e-1, 1e-2, 1e-3}, 0.25, 128);
    CHECK(rep.pass);
    CHECK(rep.slope_u == doctest::Approx(3.0).epsilon(0.1));
    CHECK(rep.slope_v == doctest::Approx(3.0).epsilon(0.1));

    // phi = 0: psi2 vanishes identically on the grid
    Spectrum zero(g.modes, {0.0, 0.0});
    const auto rep0 = picard_crosscheck(g, zero, v0, prm, {1e-1, 1e-2, 1e-3}, 0.25, 128);
    CHECK(rep0.psi2_linf <= 1e-12);
    CHECK(std::abs(rep0.slope_v - 3.0) <= 0.3);
}

TEST_CASE("delta = 0 gives the zero solution exactly") {
    GridSpec g = test_grid();
    SolverParams prm = std_params();
    SpectralState st = make_state(g);
    const auto tr = integrate(g, st, prm, {0.1});
    CHECK(l2_energy(g, tr[0]) == 0.0);
}

TEST_CASE("scaling covariance") {
    GridSpec g = test_grid();
    SolverParams prm = std_params(-3.0);
    Spectrum u0 = gaussian_packet(g, 0.5, g.box_l * 0.5, 8.0, 0.3);
    Spectrum v0 = gaussian_packet(g, 0.5, g.box_l * 0.5, 9.0, 0.35);
    // identical runs at lambda = 1
    const auto same = scaling_covariance_check(g, u0, v0, prm, 1.0, 0.25, 1);
    CHECK(same.max_dev_u <= 1e-12);
    CHECK(same.max_dev_v <= 1e-12);
    // lambda = 2 with doubled modes: bounded by discretization error
    const auto two = scaling_covariance_check(g, u0, v0, prm, 2.0, 0.25, 2);
    CHECK(two.max_dev_u <= 1e-6);
    CHECK(two.max_dev_v <= 1e-6);
    // pure linear problem: exact covariance
    Spectrum zero(g.modes, {0.0, 0.0});
    const auto lin = scaling_covariance_check(g, u0, zero, prm, 2.0, 0.25, 2);
    CHECK(lin.max_dev_u <= 1e-10);
    CHECK(lin.max_dev_v <= 1e-10);
    CHECK_THROWS_AS(scaling_covariance_check(g, u0, v0, prm, 0.5, 0.25, 2),
                    std::domain_error);
}

TEST_CASE("integrate validates sample times") {
    GridSpec g = test_grid();
    SolverParams prm = std_params();
    SpectralState st = make_state(g);
    CHECK_THROWS_AS(integrate(g, st, prm, {0.00123456}), std::invalid_argument);
}

TEST_CASE("the nonlinear CFL guard rejects oversized steps") {
    GridSpec g = test_grid();
    SolverParams prm = std_params();
    SpectralState st = make_state(g);
    st.u_hat = gaussian_packet(g, 2000.0, g.box_l * 0.5, 8.0, 0.5);
    CHECK_THROWS_AS(integrate(g, st, prm, {0.1}), std::runtime_error);
}
