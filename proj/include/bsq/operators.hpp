#pragma once

// Fourier-multiplier operators: fractional Laplacian, the Riesz-type
// coupling operator d/dx Lambda^{-alpha}, Biot-Savart velocity recovery,
// pseudo-spectral advection with 2/3-rule dealiasing, and the commutator
// of the Riesz operator with transport.

#include "bsq/field.hpp"

#include <functional>

namespace bsq {

// Applies a scalar multiplier M(xi1, xi2) coefficientwise.
inline SpectralField apply_multiplier(const SpectralField& f,
                                      const std::function<Complex(int, int)>& mult) {
    const Grid& g = f.grid();
    SpectralField out(g);
    for (int k1 = 0; k1 < g.n; ++k1) {
        int xi1 = g.wave(k1);
        for (int k2 = 0; k2 < g.n; ++k2) {
            int xi2 = g.wave(k2);
            out.at(k1, k2) = mult(xi1, xi2) * f.at(k1, k2);
        }
    }
    return out;
}

// Lambda^gamma: multiplier |xi|^gamma. Zero mode is set to 0 for any
// gamma != 0 (mean-zero convention; for gamma < 0 the multiplier is
// undefined there).
inline SpectralField fractional_laplacian(const SpectralField& f, double gamma) {
    if (gamma == 0.0) return f;
    return apply_multiplier(f, [gamma](int xi1, int xi2) -> Complex {
        double k2 = double(xi1) * xi1 + double(xi2) * xi2;
        if (k2 == 0.0) return {0.0, 0.0};
        return {std::pow(k2, gamma / 2.0), 0.0};
    });
}

inline SpectralField derivative_x(const SpectralField& f) {
    return apply_multiplier(f, [](int xi1, int) -> Complex { return {0.0, double(xi1)}; });
}

// R_alpha = d/dx Lambda^{-alpha}: multiplier i*xi1*|xi|^{-alpha}. Built as
// the literal composition so the identity with derivative_x holds bitwise.
inline SpectralField riesz_r_alpha(const SpectralField& f, double alpha) {
    return derivative_x(fractional_laplacian(f, -alpha));
}

inline SpectralField derivative_y(const SpectralField& f) {
    return apply_multiplier(f, [](int, int xi2) -> Complex { return {0.0, double(xi2)}; });
}

// 2/3-rule: zero every coefficient with max(|xi1|, |xi2|) > n/3.
inline SpectralField dealias(const SpectralField& f) {
    int cut = f.grid().n / 3;
    return apply_multiplier(f, [cut](int xi1, int xi2) -> Complex {
        return (std::abs(xi1) > cut || std::abs(xi2) > cut) ? Complex{0.0, 0.0} : Complex{1.0, 0.0};
    });
}

// u = grad^perp Laplacian^{-1} omega. Requires mean-zero vorticity.
inline VectorField biot_savart(const SpectralField& omega) {
    if (std::abs(omega.mean()) > 1e-13)
        throw std::invalid_argument("biot_savart: vorticity has nonzero mean");
    const Grid& g = omega.grid();
    VectorField u(g);
    for (int k1 = 0; k1 < g.n; ++k1) {
        int xi1 = g.wave(k1);
        for (int k2 = 0; k2 < g.n; ++k2) {
            int xi2 = g.wave(k2);
            double k2n = double(xi1) * xi1 + double(xi2) * xi2;
            if (k2n == 0.0) continue;
            Complex w = omega.at(k1, k2);
            // (i xi)^perp psi_hat with psi_hat = -omega_hat/|xi|^2
            u.u1.at(k1, k2) = Complex{0.0, xi2 / k2n} * w;
            u.u2.at(k1, k2) = Complex{0.0, -xi1 / k2n} * w;
        }
    }
    return u;
}

inline SpectralField curl(const VectorField& u) {
    return derivative_x(u.u2) - derivative_y(u.u1);
}

// u . grad f, computed pseudo-spectrally: gradients in spectral space,
// products on the grid, one dealias of inputs and one of the result.
inline SpectralField advect(const VectorField& u, const SpectralField& f) {
    u.u1.check_grid(f);
    const Grid& g = f.grid();
    std::vector<double> u1 = inverse_transform(dealias(u.u1));
    std::vector<double> u2 = inverse_transform(dealias(u.u2));
    std::vector<double> fx = inverse_transform(dealias(derivative_x(f)));
    std::vector<double> fy = inverse_transform(dealias(derivative_y(f)));
    std::vector<double> prod(u1.size());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = u1[i] * fx[i] + u2[i] * fy[i];
    return dealias(forward_transform(prod, g));
}

// [R_alpha, u.grad] theta = R_alpha(u.grad theta) - u.grad(R_alpha theta).
inline SpectralField commutator_r_alpha(const VectorField& u, const SpectralField& theta, double alpha) {
    return riesz_r_alpha(advect(u, theta), alpha) - advect(u, riesz_r_alpha(theta, alpha));
}

} // namespace bsq
