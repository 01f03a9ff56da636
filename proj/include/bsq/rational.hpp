#pragma once

// Exact rational scalar used by the feasibility engine. All region
// inequalities are strict, so comparisons must be exact; this wraps
// boost::multiprecision::cpp_rational and adds parsing for the two
// accepted flag forms ("0.7351" and "4/5").

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bsq {

// et_off so mixed arithmetic yields plain values (initializer-list min/max
// over compound expressions would otherwise fail to deduce).
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::cpp_int;

inline BigInt rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

// Parses "n/d", "-3/7", "0.7351", "2", "1e-4". Decimal strings convert
// exactly (0.7351 -> 7351/10000), never through a double.
namespace detail {
// cpp_int's string constructor treats a leading 0 as an octal prefix;
// canonicalize to a bare decimal first.
inline std::optional<BigInt> parse_int(std::string_view s) {
    bool neg = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) { neg = s[i] == '-'; ++i; }
    while (i + 1 < s.size() && s[i] == '0') ++i;
    if (i >= s.size()) return std::nullopt;
    for (std::size_t k = i; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9') return std::nullopt;
    BigInt v(std::string(s.substr(i)));
    return neg ? -v : v;
}
} // namespace detail

inline std::optional<Rat> try_parse_rational(std::string_view s) {
    if (s.empty()) return std::nullopt;
    auto slash = s.find('/');
    try {
        if (slash != std::string_view::npos) {
            auto n = detail::parse_int(s.substr(0, slash));
            auto d = detail::parse_int(s.substr(slash + 1));
            if (!n || !d || *d == 0) return std::nullopt;
            return Rat(*n, *d);
        }
        std::string t(s);
        bool neg = false;
        std::size_t i = 0;
        if (t[i] == '+' || t[i] == '-') { neg = t[i] == '-'; ++i; }
        std::string digits;
        long frac_len = 0;
        long exp10 = 0;
        bool seen_digit = false, seen_dot = false;
        for (; i < t.size(); ++i) {
            char c = t[i];
            if (c >= '0' && c <= '9') {
                digits += c;
                if (seen_dot) ++frac_len;
                seen_digit = true;
            } else if (c == '.' && !seen_dot) {
                seen_dot = true;
            } else if ((c == 'e' || c == 'E') && seen_digit) {
                exp10 = std::stol(t.substr(i + 1));
                break;
            } else {
                return std::nullopt;
            }
        }
        if (!seen_digit) return std::nullopt;
        auto parsed = detail::parse_int(digits.empty() ? "0" : digits);
        if (!parsed) return std::nullopt;
        BigInt n = *parsed;
        if (neg) n = -n;
        Rat r(n, 1);
        long shift = exp10 - frac_len;
        BigInt p10 = 1;
        for (long k = 0; k < (shift < 0 ? -shift : shift); ++k) p10 *= 10;
        if (shift >= 0) r *= Rat(p10, 1); else r /= Rat(p10, 1);
        return r;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline Rat parse_rational(std::string_view s) {
    auto r = try_parse_rational(s);
    if (!r) throw std::invalid_argument("not a rational: " + std::string(s));
    return *r;
}

inline std::string to_string(const Rat& r) {
    std::string s = rat_num(r).str();
    if (rat_den(r) != 1) s += "/" + rat_den(r).str();
    return s;
}

} // namespace bsq
