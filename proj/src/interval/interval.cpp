#include <charconv>
#include <cfloat>

#include "repulse/interval.hpp"

namespace repulse {

using namespace detail;

Interval Interval::ratio(double p, double q) { return Interval(p) / Interval(q); }

double Interval::mid() const {
    if (lo == -kInf && hi == kInf) return 0.0;
    if (lo == -kInf) return -DBL_MAX;
    if (hi == kInf) return DBL_MAX;
    double m = 0.5 * lo + 0.5 * hi;
    return std::clamp(m, lo, hi);
}

Interval intersect(const Interval& a, const Interval& b) {
    if (!overlaps(a, b)) throw DomainError("disjoint enclosures: " + to_string(a) + " and " + to_string(b));
    return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

namespace {

double pow_dn(double x, unsigned k) {
    double r = 1.0;
    while (k) {
        if (k & 1u) r = mul_dn(r, x);
        k >>= 1;
        if (k) x = mul_dn(x, x);
    }
    return r;
}

double pow_up(double x, unsigned k) {
    double r = 1.0;
    while (k) {
        if (k & 1u) r = mul_up(r, x);
        k >>= 1;
        if (k) x = mul_up(x, x);
    }
    return r;
}

}  // namespace

Interval pow_int(const Interval& a, unsigned k) {
    if (k == 0) return 1.0;
    if (k == 1) return a;
    if (k % 2 == 0) return {pow_dn(a.mig(), k), pow_up(a.mag(), k)};
    double lo = a.lo >= 0.0 ? pow_dn(a.lo, k) : -pow_up(-a.lo, k);
    double hi = a.hi >= 0.0 ? pow_up(a.hi, k) : -pow_dn(-a.hi, k);
    return {lo, hi};
}

Interval decimal(std::string_view s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw DomainError("bad decimal literal");
    return {next_down(v), next_up(v)};
}

std::string fmt_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string to_string(const Interval& a) { return "[" + fmt_double(a.lo) + ", " + fmt_double(a.hi) + "]"; }

}  // namespace repulse
