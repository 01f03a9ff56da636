#pragma once

// Rational interval with independently open/closed endpoints. Endpoint
// openness is significant: every admissibility inequality in the region
// checker is strict or non-strict exactly as stated, and membership tests
// must honor that distinction.

#include "bsq/rational.hpp"

#include <algorithm>
#include <string>

namespace bsq {

struct QInterval {
    Rat lo{0}, hi{0};
    bool lo_open = true, hi_open = true;

    static QInterval open(Rat a, Rat b) { return {std::move(a), std::move(b), true, true}; }
    static QInterval closed(Rat a, Rat b) { return {std::move(a), std::move(b), false, false}; }
    // [a, b)
    static QInterval half_open(Rat a, Rat b) { return {std::move(a), std::move(b), false, true}; }

    bool empty() const {
        if (lo > hi) return true;
        if (lo == hi) return lo_open || hi_open;
        return false;
    }

    bool contains(const Rat& x) const {
        if (x < lo || (x == lo && lo_open)) return false;
        if (x > hi || (x == hi && hi_open)) return false;
        return true;
    }

    // Intersection; openness wins at a shared endpoint.
    QInterval intersect(const QInterval& o) const {
        QInterval r;
        if (lo > o.lo) { r.lo = lo; r.lo_open = lo_open; }
        else if (lo < o.lo) { r.lo = o.lo; r.lo_open = o.lo_open; }
        else { r.lo = lo; r.lo_open = lo_open || o.lo_open; }
        if (hi < o.hi) { r.hi = hi; r.hi_open = hi_open; }
        else if (hi > o.hi) { r.hi = o.hi; r.hi_open = o.hi_open; }
        else { r.hi = hi; r.hi_open = hi_open || o.hi_open; }
        return r;
    }

    // Tightens the lower bound with a strict constraint x > b.
    void require_above(const Rat& b) {
        if (b > lo || (b == lo && !lo_open)) { lo = b; lo_open = true; }
    }
    // Tightens the upper bound with a strict constraint x < b.
    void require_below(const Rat& b) {
        if (b < hi || (b == hi && !hi_open)) { hi = b; hi_open = true; }
    }

    std::string str() const {
        return std::string(lo_open ? "(" : "[") + to_string(lo) + ", " +
               to_string(hi) + (hi_open ? ")" : "]");
    }
};

} // namespace bsq
