#include "mblab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mblab/fft.hpp"
#include "mblab/fitting.hpp"

namespace mblab {

void GridSpec::validate() const {
    if (modes < 64 || (modes & (modes - 1)) != 0)
        throw std::invalid_argument("GridSpec: modes must be a power of two >= 64");
    if (!(box_l > 0.0)) throw std::invalid_argument("GridSpec: box length must be positive");
}

double GridSpec::xi(int i) const {
    const int k = (i <= modes / 2 - 1) ? i : i - modes;
    return 2.0 * 3.14159265358979323846 * k / box_l;
}

std::vector<double> GridSpec::grid_x() const {
    std::vector<double> x(modes);
    for (int j = 0; j < modes; ++j) x[j] = box_l * j / modes;
    return x;
}

SpectralState make_state(const GridSpec& g) {
    g.validate();
    SpectralState st;
    st.u_hat.assign(g.modes, {0.0, 0.0});
    st.v_hat.assign(g.modes, {0.0, 0.0});
    return st;
}

std::vector<double> to_physical(const GridSpec& g, const Spectrum& hat) {
    Spectrum work = hat;
    fft_inplace(work, +1);
    std::vector<double> out(g.modes);
    for (int j = 0; j < g.modes; ++j) out[j] = work[j].real();
    return out;
}

Spectrum to_spectral(const GridSpec& g, const std::vector<double>& phys) {
    Spectrum work(g.modes);
    for (int j = 0; j < g.modes; ++j) work[j] = {phys[j], 0.0};
    fft_inplace(work, -1);
    const double inv = 1.0 / g.modes;
    for (auto& c : work) c *= inv;
    return work;
}

void dealias(const GridSpec& g, Spectrum& hat) {
    const int kc = g.dealias_limit();
    for (int i = 0; i < g.modes; ++i) {
        const int k = (i <= g.modes / 2 - 1) ? i : i - g.modes;
        if (std::abs(k) > kc) hat[i] = {0.0, 0.0};
    }
}

void symmetrize(const GridSpec& g, Spectrum& hat) {
    hat[0] = {hat[0].real(), 0.0};
    hat[g.modes / 2] = {0.0, 0.0};
    for (int k = 1; k < g.modes / 2; ++k) {
        const std::complex<double> avg =
            0.5 * (hat[k] + std::conj(hat[g.modes - k]));
        hat[k] = avg;
        hat[g.modes - k] = std::conj(avg);
    }
}

void linear_propagate(const GridSpec& g, SpectralState& st, const PhaseParams& p1,
                      const PhaseParams& p2, double dt) {
    for (int i = 0; i < g.modes; ++i) {
        const double x = g.xi(i);
        const double a1 = phase(p1, x) * dt, a2 = phase(p2, x) * dt;
        st.u_hat[i] *= std::complex<double>(std::cos(a1), std::sin(a1));
        st.v_hat[i] *= std::complex<double>(std::cos(a2), std::sin(a2));
    }
    st.time += dt;
}

namespace {

struct Rhs {
    Spectrum fu, fv;
};

// N_u = −iξ F[v²/2], N_v = −iξ F[uv], dealiased and symmetrized.
Rhs nonlinear_rhs(const GridSpec& g, const Spectrum& u_hat, const Spectrum& v_hat) {
    const std::vector<double> u = to_physical(g, u_hat);
    const std::vector<double> v = to_physical(g, v_hat);
    std::vector<double> vv(g.modes), uv(g.modes);
    for (int j = 0; j < g.modes; ++j) {
        vv[j] = 0.5 * v[j] * v[j];
        uv[j] = u[j] * v[j];
    }
    Rhs r;
    r.fu = to_spectral(g, vv);
    r.fv = to_spectral(g, uv);
    for (int i = 0; i < g.modes; ++i) {
        const std::complex<double> mik(0.0, -g.xi(i));
        r.fu[i] *= mik;
        r.fv[i] *= mik;
    }
    dealias(g, r.fu);
    dealias(g, r.fv);
    symmetrize(g, r.fu);
    symmetrize(g, r.fv);
    return r;
}

void apply_phase(const GridSpec& g, const PhaseParams& p1, const PhaseParams& p2,
                 double dt, Spectrum& a, Spectrum& b) {
    for (int i = 0; i < g.modes; ++i) {
        const double x = g.xi(i);
        const double t1 = phase(p1, x) * dt, t2 = phase(p2, x) * dt;
        a[i] *= std::complex<double>(std::cos(t1), std::sin(t1));
        b[i] *= std::complex<double>(std::cos(t2), std::sin(t2));
    }
}

Spectrum axpy(const Spectrum& x, double h, const Spectrum& y) {
    Spectrum out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + h * y[i];
    return out;
}

void check_finite(const SpectralState& st, long long step_index) {
    for (const auto& c : st.u_hat)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw std::runtime_error("solver: non-finite state at step " +
                                     std::to_string(step_index));
    for (const auto& c : st.v_hat)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw std::runtime_error("solver: non-finite state at step " +
                                     std::to_string(step_index));
}

// advective CFL for the RK4 nonlinear substep (the linear flow is exact):
// dt * xi_max * max(|u|, |v|) must sit inside the RK4 imaginary-axis limit
void check_stability(const GridSpec& g, const SpectralState& st,
                     const SolverParams& prm, long long step_index) {
    const std::vector<double> u = to_physical(g, st.u_hat);
    const std::vector<double> v = to_physical(g, st.v_hat);
    double amax = 0.0;
    for (int j = 0; j < g.modes; ++j)
        amax = std::max(amax, std::max(std::abs(u[j]), std::abs(v[j])));
    const double xi_max =
        2.0 * 3.14159265358979323846 * g.dealias_limit() / g.box_l;
    if (prm.dt * xi_max * amax > 2.8)
        throw std::runtime_error("solver: nonlinear CFL bound violated at step " +
                                 std::to_string(step_index));
}

}  // namespace

void step(const GridSpec& g, SpectralState& st, const SolverParams& prm) {
    const double h = prm.dt;
    // Lawson RK4 with relative integrating factors only.
    const Rhs k1 = nonlinear_rhs(g, st.u_hat, st.v_hat);

    Spectrum eu = st.u_hat, ev = st.v_hat;  // E_{h/2} u0
    apply_phase(g, prm.p1, prm.p2, 0.5 * h, eu, ev);
    Spectrum k1u = k1.fu, k1v = k1.fv;
    apply_phase(g, prm.p1, prm.p2, 0.5 * h, k1u, k1v);  // E_{h/2} k1

    const Rhs k2 = nonlinear_rhs(g, axpy(eu, 0.5 * h, k1u), axpy(ev, 0.5 * h, k1v));
    const Rhs k3 = nonlinear_rhs(g, axpy(eu, 0.5 * h, k2.fu), axpy(ev, 0.5 * h, k2.fv));

    Spectrum fu = st.u_hat, fv = st.v_hat;  // E_h u0
    apply_phase(g, prm.p1, prm.p2, h, fu, fv);
    Spectrum k3u = k3.fu, k3v = k3.fv;
    apply_phase(g, prm.p1, prm.p2, 0.5 * h, k3u, k3v);  // E_{h/2} k3

    const Rhs k4 = nonlinear_rhs(g, axpy(fu, h, k3u), axpy(fv, h, k3v));

    Spectrum e1u = k1.fu, e1v = k1.fv;
    apply_phase(g, prm.p1, prm.p2, h, e1u, e1v);  // E_h k1
    Spectrum k2u = k2.fu, k2v = k2.fv;
    apply_phase(g, prm.p1, prm.p2, 0.5 * h, k2u, k2v);  // E_{h/2} k2

    for (int i = 0; i < g.modes; ++i) {
        st.u_hat[i] = fu[i] + h / 6.0 * (e1u[i] + 2.0 * k2u[i] + 2.0 * k3u[i] + k4.fu[i]);
        st.v_hat[i] = fv[i] + h / 6.0 * (e1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4.fv[i]);
    }
    st.time += h;
}

double mass(const GridSpec& g, const Spectrum& hat) {
    return g.box_l * hat[0].real();
}

double l2_energy(const GridSpec& g, const SpectralState& st) {
    double acc = 0.0;
    for (int i = 0; i < g.modes; ++i)
        acc += std::norm(st.u_hat[i]) + std::norm(st.v_hat[i]);
    return g.box_l * acc;
}

double hamiltonian(const GridSpec& g, const SpectralState& st, const PhaseParams& p1,
                   const PhaseParams& p2) {
    double acc = 0.0;
    for (int i = 0; i < g.modes; ++i) {
        const double x2 = g.xi(i) * g.xi(i);
        acc += (x2 - p1.beta) * std::norm(st.u_hat[i]) +
               (p2.alpha * x2 - p2.beta) * std::norm(st.v_hat[i]);
    }
    double cubic = 0.0;
    const std::vector<double> u = to_physical(g, st.u_hat);
    const std::vector<double> v = to_physical(g, st.v_hat);
    for (int j = 0; j < g.modes; ++j) cubic += u[j] * v[j] * v[j];
    return g.box_l * acc - cubic * g.box_l / g.modes;
}

std::vector<SpectralState> integrate(const GridSpec& g, const SpectralState& st0,
                                     const SolverParams& prm,
                                     const std::vector<double>& sample_times,
                                     Diagnostics* diag) {
    g.validate();
    SpectralState st = st0;
    std::vector<SpectralState> out;
    long long step_count = 0;
    auto record = [&](const SpectralState& s) {
        out.push_back(s);
        if (diag) {
            diag->times.push_back(s.time);
            diag->mass_u.push_back(mass(g, s.u_hat));
            diag->mass_v.push_back(mass(g, s.v_hat));
            diag->l2_energy.push_back(l2_energy(g, s));
            diag->hamiltonian.push_back(hamiltonian(g, s, prm.p1, prm.p2));
        }
    };
    check_stability(g, st, prm, 0);
    for (double target : sample_times) {
        const double span = target - st.time;
        if (span < -1e-12) throw std::invalid_argument("integrate: sample times must ascend");
        const long long n = std::llround(span / prm.dt);
        if (std::abs(n * prm.dt - span) > 1e-9 * std::max(1.0, std::abs(target)))
            throw std::invalid_argument("integrate: sample times must be multiples of dt");
        for (long long k = 0; k < n; ++k) {
            step(g, st, prm);
            ++step_count;
            if (step_count % 64 == 0) {
                check_finite(st, step_count);
                check_stability(g, st, prm, step_count);
            }
        }
        st.time = target;  // suppress accumulated rounding in the time stamp
        check_finite(st, step_count);
        record(st);
    }
    return out;
}

Spectrum gaussian_packet(const GridSpec& g, double amp, double x0, double width,
                         double k0) {
    g.validate();
    std::vector<double> phys(g.modes);
    const std::vector<double> x = g.grid_x();
    for (int j = 0; j < g.modes; ++j) {
        const double d = x[j] - x0;
        phys[j] = amp * std::exp(-d * d / (width * width)) * std::cos(k0 * d);
    }
    Spectrum hat = to_spectral(g, phys);
    dealias(g, hat);
    symmetrize(g, hat);
    return hat;
}

namespace {

double spectral_l2(const GridSpec& g, const Spectrum& a) {
    double acc = 0.0;
    for (const auto& c : a) acc += std::norm(c);
    return std::sqrt(g.box_l * acc);
}

}  // namespace

CrosscheckReport picard_crosscheck(const GridSpec& g, const Spectrum& phi_hat,
                                   const Spectrum& psi_hat, const SolverParams& prm,
                                   const std::vector<double>& delta_ladder, double t,
                                   int n_tau) {
    g.validate();
    if (n_tau % 2 != 0) throw std::invalid_argument("picard_crosscheck: n_tau must be even");

    auto propagated = [&](const Spectrum& hat, const PhaseParams& p, double span) {
        Spectrum out = hat;
        for (int i = 0; i < g.modes; ++i) {
            const double a = phase(p, g.xi(i)) * span;
            out[i] *= std::complex<double>(std::cos(a), std::sin(a));
        }
        return out;
    };

    // Simpson in τ of e^{i phi (t−τ)} (iξ) F[a(τ) b(τ)](ξ)
    auto duhamel = [&](const PhaseParams& pa, const Spectrum& a0, const PhaseParams& pb,
                       const Spectrum& b0, const PhaseParams& pout, double coeff) {
        Spectrum acc(g.modes, {0.0, 0.0});
        const double h = t / n_tau;
        for (int m = 0; m <= n_tau; ++m) {
            const double tau = h * m;
            const double w = (m == 0 || m == n_tau) ? 1.0 : (m % 2 ? 4.0 : 2.0);
            const Spectrum a = propagated(a0, pa, tau);
            const Spectrum b = propagated(b0, pb, tau);
            const std::vector<double> ap = to_physical(g, a);
            const std::vector<double> bp = to_physical(g, b);
            std::vector<double> prod(g.modes);
            for (int j = 0; j < g.modes; ++j) prod[j] = ap[j] * bp[j];
            Spectrum ph = to_spectral(g, prod);
            dealias(g, ph);
            symmetrize(g, ph);
            for (int i = 0; i < g.modes; ++i) {
                const double ang = phase(pout, g.xi(i)) * (t - tau);
                acc[i] += w * std::complex<double>(std::cos(ang), std::sin(ang)) *
                          std::complex<double>(0.0, g.xi(i)) * ph[i];
            }
        }
        for (auto& c : acc) c *= coeff * h / 3.0;
        return acc;
    };

    const Spectrum phi1 = propagated(phi_hat, prm.p1, t);
    const Spectrum psi1 = propagated(psi_hat, prm.p2, t);
    // ψ2 = −2 ∫ S_{p2}(t−τ) ∂x(φ1 ψ1), φ2 = −∫ S_{p1}(t−τ) ∂x(ψ1²)
    const Spectrum psi2 = duhamel(prm.p1, phi_hat, prm.p2, psi_hat, prm.p2, -2.0);
    const Spectrum phi2 = duhamel(prm.p2, psi_hat, prm.p2, psi_hat, prm.p1, -1.0);

    CrosscheckReport rep;
    for (const auto& c : psi2) rep.psi2_linf = std::max(rep.psi2_linf, std::abs(c));

    for (double delta : delta_ladder) {
        SpectralState st = make_state(g);
        for (int i = 0; i < g.modes; ++i) {
            st.u_hat[i] = delta * phi_hat[i];
            st.v_hat[i] = delta * psi_hat[i];
        }
        const std::vector<SpectralState> tr = integrate(g, st, prm, {t});
        Spectrum du(g.modes), dv(g.modes);
        for (int i = 0; i < g.modes; ++i) {
            du[i] = tr[0].u_hat[i] - delta * phi1[i] - 0.5 * delta * delta * phi2[i];
            dv[i] = tr[0].v_hat[i] - delta * psi1[i] - 0.5 * delta * delta * psi2[i];
        }
        rep.deltas.push_back(delta);
        rep.residual_u.push_back(spectral_l2(g, du));
        rep.residual_v.push_back(spectral_l2(g, dv));
    }
    rep.slope_u = fit_loglog(rep.deltas, rep.residual_u).slope;
    rep.slope_v = fit_loglog(rep.deltas, rep.residual_v).slope;
    rep.pass = std::abs(rep.slope_u - 3.0) <= 0.3 && std::abs(rep.slope_v - 3.0) <= 0.3;
    return rep;
}

Spectrum rescale_data(const GridSpec& g, const Spectrum& hat, double lambda,
                      int refine_factor) {
    g.validate();
    if (refine_factor < 1) throw std::invalid_argument("refine_factor must be >= 1");
    GridSpec g2{g.box_l * lambda, g.modes * refine_factor};
    Spectrum out(g2.modes, {0.0, 0.0});
    const double l2 = 1.0 / (lambda * lambda);
    for (int i = 0; i < g.modes; ++i) {
        const int k = (i <= g.modes / 2 - 1) ? i : i - g.modes;
        const int i2 = k >= 0 ? k : g2.modes + k;
        out[i2] = l2 * hat[i];
    }
    symmetrize(g2, out);
    return out;
}

ScalingReport scaling_covariance_check(const GridSpec& g, const Spectrum& u0,
                                       const Spectrum& v0, const SolverParams& prm,
                                       double lambda, double t_end,
                                       int refine_factor) {
    g.validate();
    if (lambda < 1.0)
        throw std::domain_error("scaling_covariance_check: lambda must be >= 1");

    SpectralState st1 = make_state(g);
    st1.u_hat = u0;
    st1.v_hat = v0;
    const SpectralState end1 = integrate(g, st1, prm, {t_end})[0];

    GridSpec g2{g.box_l * lambda, g.modes * refine_factor};
    SolverParams prm2;
    prm2.p1 = scale_system(prm.p1, lambda);
    prm2.p2 = scale_system(prm.p2, lambda);
    prm2.dt = prm.dt * lambda * lambda * lambda;
    SpectralState st2 = make_state(g2);
    st2.u_hat = rescale_data(g, u0, lambda, refine_factor);
    st2.v_hat = rescale_data(g, v0, lambda, refine_factor);
    const SpectralState end2 =
        integrate(g2, st2, prm2, {t_end * lambda * lambda * lambda})[0];

    // compare λ⁻² u1(x_j, T) with u2(λ x_j, λ³T): grid2's point j·refine_factor
    // sits at λ x_j exactly, for any λ.
    const std::vector<double> u1 = to_physical(g, end1.u_hat);
    const std::vector<double> v1 = to_physical(g, end1.v_hat);
    const std::vector<double> u2 = to_physical(g2, end2.u_hat);
    const std::vector<double> v2 = to_physical(g2, end2.v_hat);
    const double l2 = 1.0 / (lambda * lambda);
    ScalingReport rep;
    for (int j = 0; j < g.modes; ++j) {
        const long long j2 = static_cast<long long>(j) * refine_factor;
        rep.max_dev_u = std::max(rep.max_dev_u, std::abs(u2[j2] - l2 * u1[j]));
        rep.max_dev_v = std::max(rep.max_dev_v, std::abs(v2[j2] - l2 * v1[j]));
    }
    return rep;
}

}  // namespace mblab
