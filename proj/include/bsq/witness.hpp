#pragma once

// Exponent witnesses for the admissible region: a tuple
// (delta, m, delta_tilde, q, eta, s, p, r, rho) satisfying every
// inequality of the regularity chain, all checked in exact rational
// arithmetic. verify_witness is the single source of truth; find_witness
// is a deterministic dyadic-refinement search whose output always passes
// verify_witness.

#include "bsq/region.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bsq {

struct FeasibilityInput {
    Rat alpha, beta;
};

struct DerivedExponents {
    Rat mu;       // interpolation index from the q-level estimate
    Rat varsigma; // Lebesgue interpolation index between L^m and L^{2m/(2-a)}
    Rat lambda;   // same interpolation applied at the p-level
    Rat l;        // Gagliardo-Nirenberg index for the theta factor
    Rat s1;       // nonzero commutator smoothness offset, 1+b-a-eta
    Rat s2;       // 1 - alpha + delta_tilde
};

struct FeasibilityWitness {
    Rat delta, m, delta_tilde, q, eta, s, p, r, rho;
    DerivedExponents derived;
};

inline DerivedExponents derived_exponents_raw(const FeasibilityInput& in, const FeasibilityWitness& w) {
    const Rat &a = in.alpha, &b = in.beta;
    DerivedExponents d;
    d.mu = (-2 * a + 2 * w.delta_tilde + 4 * (w.m - 1) / w.q) / a;
    d.varsigma = (2 - 2 * w.m / w.q) / a;
    d.lambda = 2 / a - (2 - w.p) * w.m / ((w.m - 2) * a * w.p);
    d.l = (2 * (w.p - 1) - (1 + b - a - w.eta) * w.p) / ((1 - w.s) * w.p);
    d.s1 = 1 + b - a - w.eta;
    d.s2 = 1 - a + w.delta_tilde;
    return d;
}

// Full exact checklist. An empty violation list means the witness is valid.
inline std::vector<std::string> verify_witness(const FeasibilityInput& in, FeasibilityWitness& w) {
    std::vector<std::string> v;
    const Rat &a = in.alpha, &b = in.beta;

    if (!(a > 0 && a < 1)) { v.push_back("alpha outside (0,1)"); return v; }
    if (!(b > 0 && b < 1)) { v.push_back("beta outside (0,1)"); return v; }
    if (!AlphaThreshold::is_above(a)) v.push_back("alpha > (10-2*sqrt(10))/5");
    if (!(b > 1 - a)) v.push_back("beta > 1-alpha");
    else if (!(b < f_alpha(a))) v.push_back("beta < f(alpha)");

    auto in_range = [&v](const char* name, const QInterval& iv, const Rat& x) {
        if (!iv.contains(x)) v.push_back(std::string(name) + " not in " + iv.str());
    };

    in_range("delta", delta_range(a, b), w.delta);
    in_range("m", m_range(a, b), w.m);
    if (!(w.delta_tilde > 0 && w.delta_tilde <= (3 * a - 2) / 8))
        v.push_back("delta_tilde not in (0, (3*alpha-2)/8]");
    try {
        in_range("q", q_range(a, w.m, w.delta_tilde), w.q);
    } catch (const SideConditionError& e) {
        v.push_back(e.what());
    }
    in_range("eta", eta_range(a, b, w.m), w.eta);
    try {
        in_range("s", s_range(a, b, w.m, w.eta), w.s);
    } catch (const SideConditionError& e) {
        v.push_back(e.what());
    }
    try {
        in_range("p", p_range(a, b, w.m, w.eta, w.s), w.p);
    } catch (const SideConditionError& e) {
        v.push_back(e.what());
    }
    if (w.r == 0) v.push_back("r is zero");
    else in_range("2/r", two_over_r_range(a, w.m), 2 / w.r);
    in_range("rho", rho_range(a, b), w.rho);

    if (!v.empty()) return v; // derived exponents need a sane tuple

    w.derived = derived_exponents_raw(in, w);
    const DerivedExponents& d = w.derived;
    auto unit = [&v](const char* name, const Rat& x) {
        if (!(x > 0 && x < 1)) v.push_back(std::string(name) + " not in (0,1)");
    };
    unit("mu", d.mu);
    unit("varsigma", d.varsigma);
    unit("lambda", d.lambda);
    unit("l", d.l);

    if (!(1 + b - a - w.eta < w.s * d.l)) v.push_back("1+beta-alpha-eta < s*l");
    if (!(1 + b - a - w.eta < w.s && w.s < b)) v.push_back("1+beta-alpha-eta < s < beta");

    // Product-closure requirement, in both its delta-dependent form (<= 2)
    // and its binding beta-limit strict form (< 2).
    Rat gain = w.m / (w.m - (w.m - 2) * d.lambda);
    if (!((2 * w.s * d.l / (2 * w.delta + b) + 1) * gain <= 2))
        v.push_back("(2sl/(2delta+beta)+1)*m/(m-(m-2)lambda) <= 2");
    if (!((w.s * d.l / b + 1) * gain < 2))
        v.push_back("(sl/beta+1)*m/(m-(m-2)lambda) < 2");

    return v;
}

namespace detail {

// Dyadic interior candidates of an interval: lo + (hi-lo)*k/2^d for
// d = 1..max_depth and odd k, ordered by a caller-chosen policy. Points
// equal to a closed endpoint are never produced (k strictly interior).
enum class CandidateOrder { center_out, descending, ascending };

inline std::vector<Rat> dyadic_candidates(const QInterval& iv, int max_depth, CandidateOrder order) {
    std::vector<Rat> out;
    if (iv.empty()) return out;
    if (iv.lo == iv.hi) {
        if (!iv.lo_open && !iv.hi_open) out.push_back(iv.lo);
        return out;
    }
    Rat w = iv.hi - iv.lo;
    struct Cand { long num, den; };
    std::vector<Cand> cands;
    long den = 1;
    for (int d = 1; d <= max_depth; ++d) {
        den *= 2;
        for (long k = 1; k < den; k += 2) cands.push_back({k, den});
    }
    switch (order) {
    case CandidateOrder::center_out:
        // depth-major, centered first within each depth
        std::stable_sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
            if (x.den != y.den) return x.den < y.den;
            auto dist = [](const Cand& c) { return std::abs(2 * c.num - c.den); };
            return dist(x) < dist(y);
        });
        break;
    case CandidateOrder::descending:
        std::stable_sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
            return Rat(x.num, x.den) > Rat(y.num, y.den);
        });
        break;
    case CandidateOrder::ascending:
        std::stable_sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
            return Rat(x.num, x.den) < Rat(y.num, y.den);
        });
        break;
    }
    out.reserve(cands.size());
    for (const Cand& c : cands) out.push_back(iv.lo + w * Rat(c.num, c.den));
    return out;
}

} // namespace detail

// Deterministic witness search. Parameters are chosen in the fixed order
// delta, m, delta_tilde, q, r, rho, eta, s, p; each ranges over the dyadic
// refinement grid of its live interval (denominators up to 2^10) with
// chronological backtracking. delta is tried from the top of its window
// (the product-closure requirement relaxes as delta approaches beta/2) and
// delta_tilde from the bottom; everything else center-out.
inline std::optional<FeasibilityWitness> find_witness(const FeasibilityInput& in, int max_depth = 10) {
    using detail::CandidateOrder;
    using detail::dyadic_candidates;
    const Rat &a = in.alpha, &b = in.beta;
    if (!(a > 0 && a < 1 && b > 0 && b < 1)) return std::nullopt;
    if (!(b > 1 - a && b < f_alpha(a))) return std::nullopt;
    if (!AlphaThreshold::is_above(a)) return std::nullopt;

    FeasibilityWitness w;
    std::function<bool(int)> assign = [&](int level) -> bool {
        switch (level) {
        case 0:
            for (const Rat& x : dyadic_candidates(delta_range(a, b), max_depth, CandidateOrder::descending)) {
                w.delta = x;
                if (assign(1)) return true;
            }
            return false;
        case 1:
            for (const Rat& x : dyadic_candidates(m_range(a, b), max_depth, CandidateOrder::center_out)) {
                w.m = x;
                if (assign(2)) return true;
            }
            return false;
        case 2:
            for (const Rat& x : dyadic_candidates(QInterval::open(0, (3 * a - 2) / 8), max_depth,
                                                  CandidateOrder::ascending)) {
                w.delta_tilde = x;
                if (assign(3)) return true;
            }
            return false;
        case 3: {
            QInterval iv;
            try { iv = q_range(a, w.m, w.delta_tilde); }
            catch (const SideConditionError&) { return false; }
            for (const Rat& x : dyadic_candidates(iv, max_depth, CandidateOrder::center_out)) {
                w.q = x;
                if (assign(4)) return true;
            }
            return false;
        }
        case 4:
            for (const Rat& x : dyadic_candidates(two_over_r_range(a, w.m), max_depth, CandidateOrder::center_out)) {
                w.r = 2 / x;
                if (assign(5)) return true;
            }
            return false;
        case 5:
            for (const Rat& x : dyadic_candidates(rho_range(a, b), max_depth, CandidateOrder::center_out)) {
                w.rho = x;
                if (assign(6)) return true;
            }
            return false;
        case 6:
            for (const Rat& x : dyadic_candidates(eta_range(a, b, w.m), max_depth, CandidateOrder::center_out)) {
                w.eta = x;
                if (assign(7)) return true;
            }
            return false;
        case 7: {
            QInterval iv;
            try { iv = s_range(a, b, w.m, w.eta); }
            catch (const SideConditionError&) { return false; }
            for (const Rat& x : dyadic_candidates(iv, max_depth, CandidateOrder::center_out)) {
                w.s = x;
                if (assign(8)) return true;
            }
            return false;
        }
        case 8: {
            QInterval iv;
            try { iv = p_range(a, b, w.m, w.eta, w.s); }
            catch (const SideConditionError&) { return false; }
            for (const Rat& x : dyadic_candidates(iv, max_depth, CandidateOrder::center_out)) {
                w.p = x;
                if (verify_witness(in, w).empty()) return true;
            }
            return false;
        }
        }
        return false;
    };
    if (assign(0)) return w;
    return std::nullopt;
}

struct RegionCell {
    Rat alpha, beta;
    bool feasible = false;
    std::optional<FeasibilityWitness> witness;
};

struct RegionMap {
    std::vector<RegionCell> cells;
    // Smallest feasible alpha in the sweep, if any.
    std::optional<Rat> boundary_alpha() const {
        std::optional<Rat> best;
        for (const auto& c : cells)
            if (c.feasible && (!best || c.alpha < *best)) best = c.alpha;
        return best;
    }
};

// Midpoint of the admissible beta-window, defined for any alpha in (0,1)
// (for infeasible alpha the window is empty and the cell stays infeasible).
inline Rat beta_midpoint(const Rat& a) { return (1 - a + f_alpha(a)) / 2; }

inline RegionMap sweep_region(const Rat& a_min, const Rat& a_max, const Rat& a_step,
                              const std::vector<Rat>& betas = {}, bool with_witnesses = false) {
    if (a_step <= 0 || a_min > a_max) throw std::invalid_argument("sweep_region: bad alpha grid");
    RegionMap map;
    for (Rat a = a_min; a <= a_max; a += a_step) {
        if (!(a > 0 && a < 1)) continue;
        std::vector<Rat> bs = betas.empty() ? std::vector<Rat>{beta_midpoint(a)} : betas;
        for (const Rat& b : bs) {
            RegionCell cell{a, b};
            if (b > 0 && b < 1) {
                auto wit = find_witness({a, b});
                cell.feasible = wit.has_value();
                if (with_witnesses && wit) cell.witness = std::move(wit);
            }
            map.cells.push_back(std::move(cell));
        }
    }
    return map;
}

} // namespace bsq
