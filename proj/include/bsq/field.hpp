#pragma once

// Spectral fields on the 2*pi-periodic square. Coefficients follow the
// unit-amplitude convention: coeff(xi) multiplies e^{i xi.x}, so a pure
// mode has coefficient exactly 1 at its wavenumber. Transforms go through
// FFTW complex-to-complex plans cached per grid size.

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace bsq {

struct Grid {
    int n; // modes per dimension, power of two >= 8

    explicit Grid(int n_) : n(n_) {
        if (n < 8 || (n & (n - 1)) != 0)
            throw std::invalid_argument("Grid: n must be a power of two >= 8");
    }
    bool operator==(const Grid& o) const { return n == o.n; }

    int size() const { return n * n; }
    // wavenumber component for storage index k in [0, n): values in [-n/2, n/2)
    int wave(int k) const { return k < n / 2 ? k : k - n; }
    int index_of_wave(int xi) const { return xi >= 0 ? xi : xi + n; }
    double spacing() const { return 2.0 * M_PI / n; }
    double cell_area() const { return spacing() * spacing(); }
};

using Complex = std::complex<double>;

namespace detail {

// One cached pair of FFTW plans per grid size. Plans are created with
// FFTW_ESTIMATE on a scratch buffer and executed via the new-array
// interface, so fields never alias plan storage.
class FftCache {
public:
    static FftCache& instance() {
        static FftCache c;
        return c;
    }

    void forward(int n, Complex* data) { run(n, data, /*fwd=*/true); }
    void backward(int n, Complex* data) { run(n, data, /*fwd=*/false); }

private:
    struct Plans {
        fftw_plan fwd = nullptr, bwd = nullptr;
        std::vector<Complex> scratch;
    };
    std::map<int, Plans> plans_;
    std::mutex mu_;

    Plans& get(int n) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = plans_.find(n);
        if (it != plans_.end()) return it->second;
        Plans p;
        p.scratch.resize(static_cast<std::size_t>(n) * n);
        auto* buf = reinterpret_cast<fftw_complex*>(p.scratch.data());
        p.fwd = fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        p.bwd = fftw_plan_dft_2d(n, n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
        return plans_.emplace(n, std::move(p)).first->second;
    }

    void run(int n, Complex* data, bool fwd) {
        Plans& p = get(n);
        auto* buf = reinterpret_cast<fftw_complex*>(data);
        fftw_execute_dft(fwd ? p.fwd : p.bwd, buf, buf);
    }
};

} // namespace detail

class SpectralField {
public:
    explicit SpectralField(Grid g) : grid_(g), c_(static_cast<std::size_t>(g.size()), Complex{0.0, 0.0}) {}

    const Grid& grid() const { return grid_; }
    Complex& at(int k1, int k2) { return c_[static_cast<std::size_t>(k1) * grid_.n + k2]; }
    const Complex& at(int k1, int k2) const { return c_[static_cast<std::size_t>(k1) * grid_.n + k2]; }
    // access by signed wavenumber
    Complex& mode(int xi1, int xi2) { return at(grid_.index_of_wave(xi1), grid_.index_of_wave(xi2)); }
    const Complex& mode(int xi1, int xi2) const { return at(grid_.index_of_wave(xi1), grid_.index_of_wave(xi2)); }
    std::vector<Complex>& coeffs() { return c_; }
    const std::vector<Complex>& coeffs() const { return c_; }

    Complex mean() const { return c_[0]; }

    bool finite() const {
        for (const Complex& z : c_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

    SpectralField& operator+=(const SpectralField& o) {
        check_grid(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    SpectralField& operator-=(const SpectralField& o) {
        check_grid(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    SpectralField& operator*=(double s) {
        for (Complex& z : c_) z *= s;
        return *this;
    }
    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double s, SpectralField f) { return f *= s; }

    void check_grid(const SpectralField& o) const {
        if (!(grid_ == o.grid_)) throw std::invalid_argument("grid mismatch");
    }

private:
    Grid grid_;
    std::vector<Complex> c_;
};

struct VectorField {
    SpectralField u1, u2;
    explicit VectorField(Grid g) : u1(g), u2(g) {}
    const Grid& grid() const { return u1.grid(); }
};

// Physical samples at x_j = 2*pi*j/n, row-major in (j1, j2).
inline SpectralField forward_transform(const std::vector<double>& samples, Grid g) {
    if (samples.size() != static_cast<std::size_t>(g.size()))
        throw std::invalid_argument("forward_transform: size mismatch");
    SpectralField f(g);
    for (std::size_t i = 0; i < samples.size(); ++i) f.coeffs()[i] = Complex{samples[i], 0.0};
    detail::FftCache::instance().forward(g.n, f.coeffs().data());
    double scale = 1.0 / g.size();
    for (Complex& z : f.coeffs()) z *= scale;
    return f;
}

inline std::vector<double> inverse_transform(const SpectralField& f) {
    std::vector<Complex> buf = f.coeffs();
    detail::FftCache::instance().backward(f.grid().n, buf.data());
    std::vector<double> out(buf.size());
    for (std::size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real();
    return out;
}

} // namespace bsq
