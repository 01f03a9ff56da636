#pragma once

// Norms, dyadic shell spectra and energy budgets mirroring the quantities
// the regularity argument controls: L^p norms of theta, the L^2 energy
// balance of theta and u, dissipation integrals, and sharp-shell Besov
// proxies for the vorticity.

#include "bsq/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace bsq {

// Equal-weight quadrature of |f|^p over grid points, measure (2pi/n)^2.
// p = infinity is represented by p <= 0 via lp_inf.
inline double lp_norm(const SpectralField& f, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
    std::vector<double> s = inverse_transform(f);
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : s) m = std::max(m, std::abs(v));
        return m;
    }
    double acc = 0.0;
    for (double v : s) acc += std::pow(std::abs(v), p);
    return std::pow(acc * f.grid().cell_area(), 1.0 / p);
}

inline double linf_norm(const SpectralField& f) {
    return lp_norm(f, std::numeric_limits<double>::infinity());
}

// L^2 via Parseval; exact for band-limited fields and cheaper than
// quadrature (no inverse transform).
inline double l2_norm(const SpectralField& f) {
    double acc = 0.0;
    for (const Complex& z : f.coeffs()) acc += std::norm(z);
    return 2.0 * M_PI * std::sqrt(acc);
}

inline double l2_norm(const VectorField& u) {
    double a = l2_norm(u.u1), b = l2_norm(u.u2);
    return std::sqrt(a * a + b * b);
}

// (2pi)^2 * sum f_hat conj(g_hat) = integral of f*g for real fields.
inline double inner_product(const SpectralField& f, const SpectralField& g) {
    f.check_grid(g);
    double acc = 0.0;
    for (std::size_t i = 0; i < f.coeffs().size(); ++i)
        acc += (f.coeffs()[i] * std::conj(g.coeffs()[i])).real();
    return 4.0 * M_PI * M_PI * acc;
}

// --- Littlewood-Paley style sharp shells -------------------------------

// Shell index of a lattice point: -1 for |xi| < 1 (the mean), else
// j with 2^j <= |xi| < 2^{j+1}. Shells partition the lattice exactly.
inline int shell_index(int xi1, int xi2) {
    double k2 = double(xi1) * xi1 + double(xi2) * xi2;
    if (k2 < 1.0) return -1;
    int j = 0;
    // 4^{j+1} > |xi|^2 >= 4^j
    double lo = 1.0;
    while (k2 >= 4.0 * lo) { lo *= 4.0; ++j; }
    return j;
}

inline int max_shell(const Grid& g) {
    int m = g.n / 2; // largest |xi| component magnitude
    double k2 = 2.0 * double(m) * m;
    int j = 0;
    double lo = 1.0;
    while (k2 >= 4.0 * lo) { lo *= 4.0; ++j; }
    return j;
}

// Restriction of f to shell j.
inline SpectralField shell_restrict(const SpectralField& f, int j) {
    return apply_multiplier(f, [j](int xi1, int xi2) -> Complex {
        return shell_index(xi1, xi2) == j ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
    });
}

struct ShellSpectrum {
    int j_min = -1;
    std::vector<double> l2;   // per shell, starting at j_min
    std::vector<double> linf;
    const char* convention = "sharp shells: j=-1 |xi|<1, j>=0 2^j<=|xi|<2^{j+1}";

    double l2_at(int j) const { return l2[static_cast<std::size_t>(j - j_min)]; }
    double linf_at(int j) const { return linf[static_cast<std::size_t>(j - j_min)]; }
    int j_max() const { return j_min + static_cast<int>(l2.size()) - 1; }
};

inline ShellSpectrum dyadic_shells(const SpectralField& f) {
    ShellSpectrum s;
    int J = max_shell(f.grid());
    for (int j = -1; j <= J; ++j) {
        SpectralField fj = shell_restrict(f, j);
        s.l2.push_back(l2_norm(fj));
        s.linf.push_back(linf_norm(fj));
    }
    return s;
}

// (sum_j 2^{jrs} ||Delta_j f||_{L^p}^r)^{1/r}; sup over j for r = inf.
inline double besov_proxy(const SpectralField& f, double smooth, double p, double r) {
    if (p < 1.0 || r < 1.0) throw std::invalid_argument("besov_proxy: p, r must be >= 1");
    int J = max_shell(f.grid());
    double acc = 0.0, sup = 0.0;
    for (int j = -1; j <= J; ++j) {
        SpectralField fj = shell_restrict(f, j);
        double term = std::pow(2.0, j * smooth) * lp_norm(fj, p);
        if (std::isinf(r)) sup = std::max(sup, term);
        else acc += std::pow(term, r);
    }
    return std::isinf(r) ? sup : std::pow(acc, 1.0 / r);
}

// Ratio ||Lambda^k f||_{L^b} / (2^{jk + 2j(1/a - 1/b)} ||f||_{L^a}) for a
// field supported in a single shell j. Bernstein says this stays within
// fixed constants across j; we report the ratio only.
inline double bernstein_ratio(const SpectralField& f, double k, double a, double b) {
    if (!(a >= 1.0 && b >= a)) throw std::invalid_argument("bernstein_ratio: need 1 <= a <= b");
    int j = -2;
    const Grid& g = f.grid();
    for (int k1 = 0; k1 < g.n; ++k1)
        for (int k2 = 0; k2 < g.n; ++k2) {
            if (std::abs(f.at(k1, k2)) == 0.0) continue;
            int jj = shell_index(g.wave(k1), g.wave(k2));
            if (j == -2) j = jj;
            else if (j != jj) throw std::invalid_argument("bernstein_ratio: multi-shell input");
        }
    if (j == -2) throw std::invalid_argument("bernstein_ratio: zero field");
    double num = lp_norm(fractional_laplacian(f, k), b);
    double den = std::pow(2.0, j * k + 2.0 * j * (1.0 / a - 1.0 / b)) * lp_norm(f, a);
    return num / den;
}

// --- Energy budgets -----------------------------------------------------

// residual(t_i) = ||th_i||^2 + 2 * trapezoid(||Lambda^{b/2} th||^2) - ||th_0||^2
// over a uniformly spaced series of theta fields.
inline std::vector<double> energy_budget_theta(const std::vector<SpectralField>& thetas,
                                               double beta, double dt) {
    std::vector<double> out;
    if (thetas.empty()) return out;
    double e0 = std::pow(l2_norm(thetas[0]), 2);
    double cum = 0.0, prev = 0.0;
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        double diss = std::pow(l2_norm(fractional_laplacian(thetas[i], beta / 2.0)), 2);
        if (i > 0) cum += 0.5 * (prev + diss) * dt;
        prev = diss;
        out.push_back(std::pow(l2_norm(thetas[i]), 2) + 2.0 * cum - e0);
    }
    return out;
}

struct UBudget {
    std::vector<double> residual; // ||u||^2 + 2*int diss - 2*int forcing - ||u0||^2
    std::vector<double> margin;   // (||u0|| + t ||th0||) - ||u(t)||
};

inline UBudget energy_budget_u(const std::vector<SpectralField>& omegas,
                               const std::vector<SpectralField>& thetas,
                               double alpha, double dt) {
    UBudget out;
    if (omegas.empty()) return out;
    VectorField u0 = biot_savart(omegas[0]);
    double nu0 = l2_norm(u0);
    double nth0 = l2_norm(thetas[0]);
    double cum_d = 0.0, cum_f = 0.0, prev_d = 0.0, prev_f = 0.0;
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        VectorField u = biot_savart(omegas[i]);
        double d = std::pow(l2_norm(fractional_laplacian(u.u1, alpha / 2.0)), 2) +
                   std::pow(l2_norm(fractional_laplacian(u.u2, alpha / 2.0)), 2);
        double frc = inner_product(thetas[i], u.u2);
        if (i > 0) {
            cum_d += 0.5 * (prev_d + d) * dt;
            cum_f += 0.5 * (prev_f + frc) * dt;
        }
        prev_d = d;
        prev_f = frc;
        double nu = l2_norm(u);
        out.residual.push_back(nu * nu + 2.0 * cum_d - 2.0 * cum_f - nu0 * nu0);
        out.margin.push_back(nu0 + double(i) * dt * nth0 - nu);
    }
    return out;
}

// Midpoint of the clamped delta-window (max{0,(2-2a-b)/2,(2+b-3a)/2}, b/2),
// used for the Lambda^{delta+beta/2} dissipation diagnostic. Falls back to
// beta/4 when the window is degenerate.
inline double default_delta(double alpha, double beta) {
    double lo = std::max({0.0, (2.0 - 2.0 * alpha - beta) / 2.0, (2.0 + beta - 3.0 * alpha) / 2.0});
    double hi = beta / 2.0;
    if (lo >= hi) return beta / 4.0;
    return 0.5 * (lo + hi);
}

} // namespace bsq
