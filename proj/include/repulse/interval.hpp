#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include "repulse/detail/rounding.hpp"

namespace repulse {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Closed interval [lo, hi] with outward-rounded binary64 endpoints.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    constexpr Interval() = default;
    constexpr Interval(double v) : lo(v), hi(v) {}  // NOLINT: exact point
    Interval(double l, double h) : lo(l), hi(h) {
        if (!(l <= h) || l == detail::kInf || h == -detail::kInf)
            throw DomainError("malformed interval");
    }

    static Interval ratio(double p, double q);  // enclosure of p/q
    static Interval entire() { return {-detail::kInf, detail::kInf}; }

    double width() const { return detail::sub_up(hi, lo); }
    double mid() const;
    double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }
    double mig() const {
        if (lo <= 0.0 && hi >= 0.0) return 0.0;
        return std::min(std::fabs(lo), std::fabs(hi));
    }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool contains_zero() const { return lo <= 0.0 && hi >= 0.0; }
    bool is_point() const { return lo == hi; }
    bool is_finite() const { return std::isfinite(lo) && std::isfinite(hi); }
    bool operator==(const Interval&) const = default;

    Interval& operator+=(const Interval& b);
    Interval& operator-=(const Interval& b);
    Interval& operator*=(const Interval& b);
    Interval& operator/=(const Interval& b);
};

inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

inline Interval operator+(const Interval& a, const Interval& b) {
    return {detail::add_dn(a.lo, b.lo), detail::add_up(a.hi, b.hi)};
}

inline Interval operator-(const Interval& a, const Interval& b) {
    return {detail::sub_dn(a.lo, b.hi), detail::sub_up(a.hi, b.lo)};
}

inline Interval operator*(const Interval& a, const Interval& b) {
    using namespace detail;
    if (a.lo >= 0.0 && b.lo >= 0.0) return {mul_dn(a.lo, b.lo), mul_up(a.hi, b.hi)};
    if (a.hi <= 0.0 && b.hi <= 0.0) return {mul_dn(a.hi, b.hi), mul_up(a.lo, b.lo)};
    if (a.lo >= 0.0 && b.hi <= 0.0) return {mul_dn(a.hi, b.lo), mul_up(a.lo, b.hi)};
    if (a.hi <= 0.0 && b.lo >= 0.0) return {mul_dn(a.lo, b.hi), mul_up(a.hi, b.lo)};
    double l = std::min({mul_dn(a.lo, b.lo), mul_dn(a.lo, b.hi), mul_dn(a.hi, b.lo), mul_dn(a.hi, b.hi)});
    double h = std::max({mul_up(a.lo, b.lo), mul_up(a.lo, b.hi), mul_up(a.hi, b.lo), mul_up(a.hi, b.hi)});
    return {l, h};
}

inline Interval operator/(const Interval& a, const Interval& b) {
    using namespace detail;
    if (b.contains_zero()) throw DomainError("interval division by a range containing zero");
    if (b.lo > 0.0) {
        if (a.lo >= 0.0) return {div_dn(a.lo, b.hi), div_up(a.hi, b.lo)};
        if (a.hi <= 0.0) return {div_dn(a.lo, b.lo), div_up(a.hi, b.hi)};
        return {div_dn(a.lo, b.lo), div_up(a.hi, b.lo)};
    }
    if (a.lo >= 0.0) return {div_dn(a.hi, b.hi), div_up(a.lo, b.lo)};
    if (a.hi <= 0.0) return {div_dn(a.hi, b.lo), div_up(a.lo, b.hi)};
    return {div_dn(a.hi, b.hi), div_up(a.lo, b.hi)};
}

inline Interval& Interval::operator+=(const Interval& b) { return *this = *this + b; }
inline Interval& Interval::operator-=(const Interval& b) { return *this = *this - b; }
inline Interval& Interval::operator*=(const Interval& b) { return *this = *this * b; }
inline Interval& Interval::operator/=(const Interval& b) { return *this = *this / b; }

inline Interval hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

inline bool overlaps(const Interval& a, const Interval& b) { return a.lo <= b.hi && b.lo <= a.hi; }

// throws when the two enclosures are disjoint: that would mean a bug upstream
Interval intersect(const Interval& a, const Interval& b);

inline bool subset(const Interval& a, const Interval& b) { return b.contains(a); }

inline Interval abs(const Interval& a) {
    if (a.lo >= 0.0) return a;
    if (a.hi <= 0.0) return -a;
    return {0.0, std::max(-a.lo, a.hi)};
}

inline Interval sqr(const Interval& a) {
    double l = a.mig(), h = a.mag();
    return {detail::mul_dn(l, l), detail::mul_up(h, h)};
}

inline Interval min(const Interval& a, const Interval& b) {
    return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)};
}
inline Interval max(const Interval& a, const Interval& b) {
    return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Interval pow_int(const Interval& a, unsigned k);
Interval sqrt(const Interval& a);
Interval exp(const Interval& a);
Interval log(const Interval& a);
Interval sin(const Interval& a);
Interval cos(const Interval& a);

// sin(x)/x, 1 at 0
Interval sinc(const Interval& a);
// (sin x - x + x^3/6)/x^3, 0 at 0
Interval remainder_R(const Interval& a);
// (u - sin u)/u^3, 1/6 at 0
Interval s3_kernel(const Interval& a);

// enclosure of a decimal literal such as "0.94"
Interval decimal(std::string_view s);

Interval pi_interval();
Interval ln2_interval();

// shortest round-trip decimal
std::string fmt_double(double x);
std::string to_string(const Interval& a);

}  // namespace repulse
