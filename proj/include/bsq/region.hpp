#pragma once

// Admissible parameter region for the fractionally dissipated 2D Boussinesq
// system: the velocity exponent alpha and thermal exponent beta admit a
// global regularity argument when 1-alpha < beta < f(alpha) and alpha lies
// above the algebraic threshold (10-2*sqrt(10))/5. This header computes
// f(alpha), the threshold sign test, and the exact rational interval for
// every exponent in the supporting chain (delta, m, delta_tilde, q, eta,
// s, p, r, rho). All arithmetic is exact.

#include "bsq/interval.hpp"
#include "bsq/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace bsq {

// f(alpha) = min{3-3a, a/2, (3a^2+4a-4)/(8(1-a))}, defined for 0 < a < 1.
inline Rat f_alpha(const Rat& a) {
    if (!(a > 0 && a < 1)) throw std::domain_error("f_alpha: alpha must be in (0,1)");
    Rat t1 = 3 - 3 * a;
    Rat t2 = a / 2;
    Rat t3 = (3 * a * a + 4 * a - 4) / (8 * (1 - a));
    return std::min({t1, t2, t3});
}

// The threshold alpha* = (10-2*sqrt(10))/5 is the root in (0,1) of
// 5a^2 - 20a + 12. The polynomial is positive below the root and negative
// above it on (0,2), which gives an exact sign test for rational alpha.
struct AlphaThreshold {
    static Rat defining_polynomial(const Rat& a) { return 5 * a * a - 20 * a + 12; }
    static bool is_above(const Rat& a) { return defining_polynomial(a) < 0; }
    static double value() { return (10.0 - 2.0 * std::sqrt(10.0)) / 5.0; }
};

inline double alpha_threshold() { return AlphaThreshold::value(); }

// True iff the beta-window (1-alpha, f(alpha)) is nonempty.
inline bool is_region_nonempty(const Rat& a) {
    if (!(a > 0 && a < 1)) throw std::domain_error("is_region_nonempty: alpha must be in (0,1)");
    return 1 - a < f_alpha(a);
}

// (3a-2)/(2(2-a)(1-a)) > (3a^2+4a-4)/(8(1-a)) for 2/3 < a < 1; this is why
// the third entry of the m = 2/alpha reduction never binds.
inline bool verify_fact_inequality(const Rat& a) {
    if (!(a > Rat(2, 3) && a < 1)) throw std::domain_error("verify_fact_inequality: alpha must be in (2/3,1)");
    Rat lhs = (3 * a - 2) / (2 * (2 - a) * (1 - a));
    Rat rhs = (3 * a * a + 4 * a - 4) / (8 * (1 - a));
    return lhs > rhs;
}

// delta-window (max{(2-2a-b)/2, (2+b-3a)/2, 0}, b/2), lower bound clamped
// at 0 since the L^2 level estimate extends down to delta = 0.
inline QInterval delta_range(const Rat& a, const Rat& b) {
    Rat lo = std::max({(2 - 2 * a - b) / 2, (2 + b - 3 * a) / 2, Rat(0)});
    return QInterval::open(lo, b / 2);
}

namespace detail {
// Applies the linear constraint c*m < d to an m-interval, flipping or
// discharging it by the exact sign of c.
inline void apply_linear_upper(QInterval& iv, const Rat& c, const Rat& d) {
    if (c > 0) iv.require_below(d / c);
    else if (c < 0) iv.require_above(d / c);
    else if (d <= 0) iv = QInterval::open(1, 0); // 0 < d fails: empty
}
} // namespace detail

// m-window: 4/(3-a-b) < m < min{4, 1/(1-a)}, the two linear side
// constraints, and m > 2/a from the dyadic-exponent step.
inline QInterval m_range(const Rat& a, const Rat& b) {
    QInterval iv = QInterval::open(Rat(4) / (3 - a - b), std::min(Rat(4), 1 / (1 - a)));
    iv.require_above(2 / a);
    detail::apply_linear_upper(iv, 2 * (2 - a) * b - 3 * a + 2, 4 * (2 - a) * b);
    detail::apply_linear_upper(iv, 4 + 8 * b - 4 * a - 3 * a * a, 16 * b);
    return iv;
}

// Thrown when a side condition of a range (as opposed to plain emptiness)
// is violated, so callers can report the two outcomes distinctly.
struct SideConditionError : std::domain_error {
    using std::domain_error::domain_error;
};

// q-window given m and the small parameter delta_tilde:
//   max{m-1, 4(m-1)/(3a-2dt), m} < q < min{2(m-1), 2(m-1)/(a-dt), 2m/(2-a)}
// subject to 0 < dt <= (3a-2)/8 and m <= 2/(2-2a+dt).
inline QInterval q_range(const Rat& a, const Rat& m, const Rat& dt) {
    if (!(dt > 0 && dt <= (3 * a - 2) / 8))
        throw SideConditionError("q_range: delta_tilde outside (0, (3a-2)/8]");
    if (!(m <= 2 / (2 - 2 * a + dt)))
        throw SideConditionError("q_range: m exceeds 2/(2-2a+delta_tilde)");
    Rat lo = std::max({m - 1, 4 * (m - 1) / (3 * a - 2 * dt), m});
    Rat hi = std::min({2 * (m - 1), 2 * (m - 1) / (a - dt), 2 * m / (2 - a)});
    return QInterval::open(lo, hi);
}

// eta-window: beta and the two appendix lower bounds against
// min{1+b-a, a/2, 3-a-4/m}.
inline QInterval eta_range(const Rat& a, const Rat& b, const Rat& m) {
    Rat lo1 = b;
    Rat lo2 = ((1 + b - a) * m - (2 * (2 - a) - (1 - a) * m) * b) / m;
    Rat lo3 = (2 * (1 + b - a) + a * (1 - a) - (Rat(8) / m - 2) * b) / (2 + a);
    Rat hi = std::min({1 + b - a, a / 2, 3 - a - Rat(4) / m});
    return QInterval::open(std::max({lo1, lo2, lo3}), hi);
}

// s-window given m and eta. Denominators of the interior bounds must be
// positive; a nonpositive one is a degenerate configuration reported apart
// from emptiness.
inline QInterval s_range(const Rat& a, const Rat& b, const Rat& m, const Rat& eta) {
    Rat c = 1 + b - a - eta;
    Rat den_lo1 = m - (2 - a) * (m - 2);
    Rat den_lo2 = a * (a + eta - 1) + (Rat(8) / m - 2) * b;
    Rat den_hi = (a + eta - 2) * m + 4;
    if (den_lo1 <= 0 || den_lo2 <= 0 || den_hi <= 0)
        throw SideConditionError("s_range: degenerate denominator");
    Rat lo = std::max({c * m / den_lo1, 2 * c * b / den_lo2, c});
    Rat hi = std::min({b, ((3 + b - a - eta) * m - 4) / m, b * m / den_hi});
    return QInterval::open(lo, hi);
}

// p-window given m, eta, s.
inline QInterval p_range(const Rat& a, const Rat& b, const Rat& m, const Rat& eta, const Rat& s) {
    Rat lo = std::max(2 * m / (3 * m - 4), 2 * s / (2 * s + a + eta - b - 1));
    Rat hi4_num = 4 * (1 - s) * b + 2 * a * s;
    Rat hi4_den = (6 - a - Rat(8) / m) * (1 - s) * b + a * s * (1 + a + eta - b);
    if (hi4_den <= 0) throw SideConditionError("p_range: degenerate denominator");
    Rat hi = std::min({Rat(2), 2 * m / ((2 - a) * (m - 2) + m), 2 / (a + eta - b + s), hi4_num / hi4_den});
    return QInterval::open(lo, hi);
}

// Window for 2/r: max{2/m + a - 1, (2-a)/m} <= 2/r < 2a - 1.
inline QInterval two_over_r_range(const Rat& a, const Rat& m) {
    Rat lo = std::max(Rat(2) / m + a - 1, (2 - a) / m);
    return QInterval::half_open(lo, 2 * a - 1);
}

// r itself, converted from the 2/r window (order of endpoints flips).
inline QInterval r_range(const Rat& a, const Rat& m) {
    QInterval inv = two_over_r_range(a, m);
    if (inv.empty() || inv.lo <= 0) return QInterval::open(1, 0);
    return QInterval{2 / inv.hi, 2 / inv.lo, inv.hi_open, inv.lo_open};
}

// rho-window (1, b/(1-a)); empty when beta <= 1-alpha.
inline QInterval rho_range(const Rat& a, const Rat& b) {
    return QInterval::open(1, b / (1 - a));
}

} // namespace bsq
