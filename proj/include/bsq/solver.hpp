#pragma once

// Time integration of the vorticity-temperature system
//   d/dt omega + u.grad omega + Lambda^alpha omega = d/dx theta
//   d/dt theta + u.grad theta + Lambda^beta theta = 0,   u = biot_savart(omega)
// with integrating-factor RK4: the stiff dissipation multipliers are
// integrated exactly per mode, the nonlinear terms by the classical
// 4-stage scheme in integrating-factor variables.

#include "bsq/diagnostics.hpp"
#include "bsq/operators.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>

namespace bsq {

struct SimConfig {
    double alpha = 1.0;
    double beta = 1.0;
    int n = 64;
    double dt = 1e-3;
    double t_end = 1.0;
    std::string ic = "taylor-green"; // random-bandlimited | taylor-green | bubble
    std::uint64_t seed = 0;
    int diag_every = 10;
    std::vector<double> lp_exponents = {4.0, 8.0};
    double m = 3.0; // exponent for the L^m(G) diagnostic

    void validate() const {
        if (!(alpha > 0 && alpha <= 2)) throw std::invalid_argument("alpha must be in (0,2]");
        if (!(beta > 0 && beta <= 2)) throw std::invalid_argument("beta must be in (0,2]");
        if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
        if (!(t_end >= 0)) throw std::invalid_argument("t_end must be >= 0");
        if (n < 8 || (n & (n - 1)) != 0) throw std::invalid_argument("n must be a power of two >= 8");
        if (diag_every < 1) throw std::invalid_argument("diag_every must be >= 1");
    }
};

struct SimState {
    SpectralField omega;
    SpectralField theta;
    double t = 0.0;

    explicit SimState(Grid g) : omega(g), theta(g) {}
};

struct NanAbort : std::runtime_error {
    long step;
    explicit NanAbort(long s) : std::runtime_error("NaN/Inf at step " + std::to_string(s)), step(s) {}
};

namespace detail {
inline void hermitize(SpectralField& f) {
    const Grid& g = f.grid();
    for (int k1 = 0; k1 < g.n; ++k1)
        for (int k2 = 0; k2 < g.n; ++k2) {
            int m1 = (g.n - k1) % g.n, m2 = (g.n - k2) % g.n;
            Complex avg = 0.5 * (f.at(k1, k2) + std::conj(f.at(m1, m2)));
            f.at(k1, k2) = avg;
            f.at(m1, m2) = std::conj(avg);
        }
}
} // namespace detail

inline SimState initial_condition(const std::string& preset, std::uint64_t seed, Grid g) {
    SimState st(g);
    if (preset == "taylor-green") {
        // omega = 2 sin x sin y: modes (+-1, +-1); theta = cos x
        st.omega.mode(1, 1) = Complex{-0.5, 0.0};
        st.omega.mode(1, -1) = Complex{0.5, 0.0};
        st.omega.mode(-1, 1) = Complex{0.5, 0.0};
        st.omega.mode(-1, -1) = Complex{-0.5, 0.0};
        st.theta.mode(1, 0) = Complex{0.5, 0.0};
        st.theta.mode(-1, 0) = Complex{0.5, 0.0};
    } else if (preset == "bubble") {
        // smooth temperature bump centered at (pi, pi), width pi/4; omega = 0
        std::vector<double> s(static_cast<std::size_t>(g.size()));
        double w = M_PI / 4.0;
        for (int i1 = 0; i1 < g.n; ++i1)
            for (int i2 = 0; i2 < g.n; ++i2) {
                double x = i1 * g.spacing() - M_PI, y = i2 * g.spacing() - M_PI;
                s[static_cast<std::size_t>(i1) * g.n + i2] = std::exp(-(x * x + y * y) / (2.0 * w * w));
            }
        st.theta = dealias(forward_transform(s, g));
    } else if (preset == "random-bandlimited") {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> amp(-1.0, 1.0);
        auto fill = [&](SpectralField& f) {
            for (int xi1 = -8; xi1 <= 8; ++xi1)
                for (int xi2 = -8; xi2 <= 8; ++xi2) {
                    double k = std::sqrt(double(xi1) * xi1 + double(xi2) * xi2);
                    if (k < 1.0 || k > 8.0) continue;
                    f.mode(xi1, xi2) = Complex{amp(rng), amp(rng)};
                }
            detail::hermitize(f);
            f.mode(0, 0) = Complex{0.0, 0.0};
            double nrm = l2_norm(f);
            if (nrm > 0) f *= 1.0 / nrm;
        };
        fill(st.omega);
        fill(st.theta);
    } else {
        throw std::invalid_argument("unknown initial-condition preset: " + preset);
    }
    return st;
}

// Nonlinear tendencies only; dissipation is handled by the integrating
// factor in step().
inline std::pair<SpectralField, SpectralField> rhs(const SpectralField& omega_in, const SpectralField& theta) {
    // advection products leave a rounding-level mean in omega; keep the
    // mean-zero invariant exact so biot_savart's precondition holds at
    // any field amplitude
    SpectralField omega = omega_in;
    omega.mode(0, 0) = Complex{0.0, 0.0};
    VectorField u = biot_savart(omega);
    SpectralField domega = derivative_x(theta) - advect(u, omega);
    SpectralField dtheta = SpectralField(theta.grid()) - advect(u, theta);
    return {std::move(domega), std::move(dtheta)};
}

inline std::pair<SpectralField, SpectralField> rhs(const SimState& st, const SimConfig&) {
    return rhs(st.omega, st.theta);
}

namespace detail {

// exp(-|xi|^gamma * tau) per mode
inline std::vector<double> dissipation_factor(Grid g, double gamma, double tau) {
    std::vector<double> e(static_cast<std::size_t>(g.size()));
    for (int k1 = 0; k1 < g.n; ++k1) {
        int xi1 = g.wave(k1);
        for (int k2 = 0; k2 < g.n; ++k2) {
            int xi2 = g.wave(k2);
            double kk = std::sqrt(double(xi1) * xi1 + double(xi2) * xi2);
            e[static_cast<std::size_t>(k1) * g.n + k2] = std::exp(-std::pow(kk, gamma) * tau);
        }
    }
    return e;
}

inline void scale_by(SpectralField& f, const std::vector<double>& e) {
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) f.coeffs()[i] *= e[i];
}

inline SpectralField scaled(const SpectralField& f, const std::vector<double>& e) {
    SpectralField out = f;
    scale_by(out, e);
    return out;
}

} // namespace detail

// Per-grid cache of the four integrating factors a step needs.
struct StepFactors {
    std::vector<double> ew_h, ew_h2, et_h, et_h2;
    StepFactors(Grid g, double alpha, double beta, double dt)
        : ew_h(detail::dissipation_factor(g, alpha, dt)),
          ew_h2(detail::dissipation_factor(g, alpha, dt / 2.0)),
          et_h(detail::dissipation_factor(g, beta, dt)),
          et_h2(detail::dissipation_factor(g, beta, dt / 2.0)) {}
};

inline double max_speed(const SpectralField& omega) {
    VectorField u = biot_savart(omega);
    std::vector<double> u1 = inverse_transform(u.u1), u2 = inverse_transform(u.u2);
    double m = 0.0;
    for (std::size_t i = 0; i < u1.size(); ++i)
        m = std::max(m, std::sqrt(u1[i] * u1[i] + u2[i] * u2[i]));
    return m;
}

// One integrating-factor RK4 step. cfl_warn, if set, receives max|u|*dt
// when the advective CFL bound 0.5*(2pi/n) is exceeded.
inline SimState step(const SimState& st, const SimConfig& cfg, const StepFactors& F,
                     const std::function<void(double)>* cfl_warn = nullptr) {
    using detail::scale_by;
    using detail::scaled;
    const double h = cfg.dt;

    if (cfl_warn) {
        double travel = max_speed(st.omega) * h;
        if (travel > 0.5 * st.omega.grid().spacing()) (*cfl_warn)(travel);
    }

    auto [k1w, k1t] = rhs(st.omega, st.theta);

    SpectralField wa = scaled(st.omega + (h / 2.0) * k1w, F.ew_h2);
    SpectralField ta = scaled(st.theta + (h / 2.0) * k1t, F.et_h2);
    auto [k2w, k2t] = rhs(wa, ta);

    SpectralField wb = scaled(st.omega, F.ew_h2) + (h / 2.0) * k2w;
    SpectralField tb = scaled(st.theta, F.et_h2) + (h / 2.0) * k2t;
    auto [k3w, k3t] = rhs(wb, tb);

    SpectralField wc = scaled(st.omega, F.ew_h) + h * scaled(k3w, F.ew_h2);
    SpectralField tc = scaled(st.theta, F.et_h) + h * scaled(k3t, F.et_h2);
    auto [k4w, k4t] = rhs(wc, tc);

    SimState out(st.omega.grid());
    out.omega = scaled(st.omega, F.ew_h) +
                (h / 6.0) * (scaled(k1w, F.ew_h) + 2.0 * scaled(k2w + k3w, F.ew_h2) + k4w);
    out.theta = scaled(st.theta, F.et_h) +
                (h / 6.0) * (scaled(k1t, F.et_h) + 2.0 * scaled(k2t + k3t, F.et_h2) + k4t);
    out.omega = dealias(out.omega);
    out.theta = dealias(out.theta);
    out.omega.mode(0, 0) = Complex{0.0, 0.0};
    out.t = st.t + h;
    return out;
}

inline SimState step(const SimState& st, const SimConfig& cfg) {
    StepFactors F(st.omega.grid(), cfg.alpha, cfg.beta, cfg.dt);
    return step(st, cfg, F);
}

// G = omega - R_alpha theta, the combined quantity whose evolution removes
// the d/dx theta forcing.
inline SpectralField compute_G(const SimState& st, double alpha) {
    return st.omega - riesz_r_alpha(st.theta, alpha);
}

// L^2 norm of the residual of the G evolution equation at the middle of
// three consecutive states (central difference in time). Second order in
// dt plus spectral truncation.
inline double g_residual(const std::vector<SimState>& hist, const SimConfig& cfg) {
    if (hist.size() < 3) throw std::invalid_argument("g_residual: need >= 3 states");
    double dt1 = hist[1].t - hist[0].t;
    for (std::size_t i = 1; i + 1 < hist.size(); ++i)
        if (std::abs((hist[i + 1].t - hist[i].t) - dt1) > 1e-12 * std::max(1.0, std::abs(dt1)))
            throw std::invalid_argument("g_residual: non-uniform spacing");
    std::size_t mid = hist.size() / 2;
    const SimState& sm = hist[mid];
    SpectralField Gm = compute_G(sm, cfg.alpha);
    SpectralField Gp = compute_G(hist[mid + 1], cfg.alpha);
    SpectralField Gq = compute_G(hist[mid - 1], cfg.alpha);
    SpectralField dGdt = (1.0 / (2.0 * dt1)) * (Gp - Gq);
    VectorField u = biot_savart(sm.omega);
    SpectralField resid = dGdt + advect(u, Gm) + fractional_laplacian(Gm, cfg.alpha) -
                          commutator_r_alpha(u, sm.theta, cfg.alpha) -
                          fractional_laplacian(derivative_x(sm.theta), cfg.beta - cfg.alpha);
    return l2_norm(resid);
}

// --- run() with diagnostics --------------------------------------------

struct DiagnosticsRow {
    long step = 0;
    double t = 0.0;
    double l2_u = 0.0, l2_theta = 0.0, linf_theta = 0.0;
    std::vector<double> lp_theta; // per cfg.lp_exponents
    double l2_G = 0.0, lm_G = 0.0;
    double diss_u_cum = 0.0, diss_theta_cum = 0.0, diss_theta_delta_cum = 0.0;
    double resid_theta = 0.0, resid_u = 0.0;
    double besov_inf1_omega = 0.0;
};

struct RunResult {
    SimState final_state;
    std::vector<DiagnosticsRow> diagnostics;
    bool nan_abort = false;
    long nan_step = -1;
    bool cfl_warned = false;
};

inline RunResult run(const SimConfig& cfg) {
    cfg.validate();
    Grid g(cfg.n);
    SimState st = initial_condition(cfg.ic, cfg.seed, g);
    st.omega = dealias(st.omega);
    st.theta = dealias(st.theta);
    StepFactors F(g, cfg.alpha, cfg.beta, cfg.dt);

    RunResult res{st, {}, false, -1, false};
    const double delta = default_delta(cfg.alpha, cfg.beta);

    double e_theta0 = 0.0, e_u0 = 0.0, nu0 = 0.0, nth0 = 0.0;
    double cum_dth = 0.0, cum_dthd = 0.0, cum_du = 0.0, cum_frc = 0.0;
    double prev_dth = 0.0, prev_dthd = 0.0, prev_du = 0.0, prev_frc = 0.0, prev_t = 0.0;
    bool first_row = true;

    auto emit = [&](long stp, const SimState& s) {
        VectorField u = biot_savart(s.omega);
        DiagnosticsRow row;
        row.step = stp;
        row.t = s.t;
        row.l2_u = l2_norm(u);
        row.l2_theta = l2_norm(s.theta);
        row.linf_theta = linf_norm(s.theta);
        for (double p : cfg.lp_exponents) row.lp_theta.push_back(lp_norm(s.theta, p));
        SpectralField G = compute_G(s, cfg.alpha);
        row.l2_G = l2_norm(G);
        row.lm_G = lp_norm(G, cfg.m);
        double dth = std::pow(l2_norm(fractional_laplacian(s.theta, cfg.beta / 2.0)), 2);
        double dthd = std::pow(l2_norm(fractional_laplacian(s.theta, delta + cfg.beta / 2.0)), 2);
        double du = std::pow(l2_norm(fractional_laplacian(u.u1, cfg.alpha / 2.0)), 2) +
                    std::pow(l2_norm(fractional_laplacian(u.u2, cfg.alpha / 2.0)), 2);
        double frc = inner_product(s.theta, u.u2);
        if (first_row) {
            e_theta0 = row.l2_theta * row.l2_theta;
            e_u0 = row.l2_u * row.l2_u;
            nu0 = row.l2_u;
            nth0 = row.l2_theta;
            first_row = false;
        } else {
            double dtr = s.t - prev_t;
            cum_dth += 0.5 * (prev_dth + dth) * dtr;
            cum_dthd += 0.5 * (prev_dthd + dthd) * dtr;
            cum_du += 0.5 * (prev_du + du) * dtr;
            cum_frc += 0.5 * (prev_frc + frc) * dtr;
        }
        prev_dth = dth;
        prev_dthd = dthd;
        prev_du = du;
        prev_frc = frc;
        prev_t = s.t;
        row.diss_u_cum = cum_du;
        row.diss_theta_cum = cum_dth;
        row.diss_theta_delta_cum = cum_dthd;
        row.resid_theta = row.l2_theta * row.l2_theta + 2.0 * cum_dth - e_theta0;
        row.resid_u = row.l2_u * row.l2_u + 2.0 * cum_du - 2.0 * cum_frc - e_u0;
        row.besov_inf1_omega = besov_proxy(s.omega, 0.0, std::numeric_limits<double>::infinity(), 1.0);
        res.diagnostics.push_back(std::move(row));
        (void)nu0;
        (void)nth0;
    };

    std::function<void(double)> on_cfl = [&](double) { res.cfl_warned = true; };

    long nsteps = std::lround(cfg.t_end / cfg.dt);
    emit(0, st);
    for (long i = 1; i <= nsteps; ++i) {
        st = step(st, cfg, F, &on_cfl);
        if (!st.omega.finite() || !st.theta.finite()) {
            res.nan_abort = true;
            res.nan_step = i;
            res.final_state = st;
            return res;
        }
        if (i % cfg.diag_every == 0 || i == nsteps) emit(i, st);
    }
    res.final_state = st;
    return res;
}

} // namespace bsq
