#include <array>
#include <cmath>

#include "dd.hpp"
#include "repulse/interval.hpp"

namespace repulse {

using detail::add_dn;
using detail::add_up;
using detail::sub_dn;
using dd::DD;

namespace {

// pi/2 and ln 2 split into three doubles, leading part below the true value
constexpr double kPio2[3] = {1.5707963267948966, 6.123233995736766e-17, -1.4973849048591698e-33};
constexpr double kLn2[3] = {0.6931471805599453, 2.3190468138462996e-17, 5.707708438416212e-34};

constexpr double kRel = 0x1p-90;
constexpr double kAbs = 0x1p-95;

Interval from_dd(DD v, double err) {
    return {add_dn(v.hi, sub_dn(v.lo, err)), add_up(v.hi, add_up(v.lo, err))};
}

// 1/n! in double-double, n < 40
const std::array<DD, 40>& inv_factorials() {
    static const std::array<DD, 40> table = [] {
        std::array<DD, 40> t{};
        t[0] = {1.0, 0.0};
        for (int n = 1; n < 40; ++n) t[n] = dd::div(t[n - 1], static_cast<double>(n));
        return t;
    }();
    return table;
}

Interval exp_point(double x) {
    if (x == 0.0) return 1.0;
    if (std::isnan(x)) throw DomainError("exp of NaN");
    if (x >= 709.79) return {DBL_MAX, detail::kInf};
    if (x < -708.0) return {0.0, 0x1p-1020};

    double k = std::nearbyint(x / kLn2[0]);
    DD r = dd::add(DD{x, 0.0}, dd::neg(dd::two_prod(k, kLn2[0])));
    r = dd::sub(r, dd::two_prod(k, kLn2[1]));
    r = dd::sub(r, DD{k * kLn2[2], 0.0});

    const auto& f = inv_factorials();
    DD p = f[27];
    for (int j = 26; j >= 0; --j) p = dd::add(dd::mul(p, r), f[j]);

    int ki = static_cast<int>(k);
    DD v{std::ldexp(p.hi, ki), std::ldexp(p.lo, ki)};
    if (!std::isfinite(v.hi)) return {DBL_MAX, detail::kInf};
    double err = std::fabs(v.hi) * kRel + DBL_TRUE_MIN;
    return from_dd(v, err);
}

Interval log_point(double x) {
    if (x == 1.0) return 0.0;
    if (x == detail::kInf) return {DBL_MAX, detail::kInf};
    int e = 0;
    double m = std::frexp(x, &e);
    if (m < 0.70710678118654752) {
        m *= 2.0;
        e -= 1;
    }
    DD z = dd::div(DD{m - 1.0, 0.0}, dd::two_sum(m, 1.0));
    DD w = dd::mul(z, z);
    // atanh(z)/z = sum w^j/(2j+1)
    DD p = dd::div(DD{1.0, 0.0}, 61.0);
    for (int j = 29; j >= 0; --j) p = dd::add(dd::mul(p, w), dd::div(DD{1.0, 0.0}, 2.0 * j + 1.0));
    DD at = dd::mul(dd::mul(z, p), 2.0);

    double ed = static_cast<double>(e);
    DD lead = dd::add(dd::two_prod(ed, kLn2[0]), dd::two_prod(ed, kLn2[1]));
    lead = dd::add(lead, DD{ed * kLn2[2], 0.0});
    DD v = dd::add(lead, at);
    double err = (std::fabs(ed) + std::fabs(at.hi)) * kRel + 0x1p-1000;
    return from_dd(v, err);
}

struct Reduced {
    long long quadrant;
    DD r;
    double err;
};

Reduced reduce_pio2(double x) {
    double k = std::nearbyint(x * 0.63661977236758134);
    DD r = dd::add(DD{x, 0.0}, dd::neg(dd::two_prod(k, kPio2[0])));
    r = dd::sub(r, dd::two_prod(k, kPio2[1]));
    r = dd::sub(r, DD{k * kPio2[2], 0.0});
    long long q = static_cast<long long>(k) % 4;
    if (q < 0) q += 4;
    return {q, r, 0x1p-100 + std::fabs(k) * 0x1p-148};
}

DD sin_taylor(DD r) {
    const auto& f = inv_factorials();
    DD w = dd::mul(r, r);
    DD p = f[31];
    for (int j = 29; j >= 1; j -= 2) p = dd::add(dd::neg(dd::mul(p, w)), f[j]);
    return dd::mul(p, r);
}

DD cos_taylor(DD r) {
    const auto& f = inv_factorials();
    DD w = dd::mul(r, r);
    DD p = f[30];
    for (int j = 28; j >= 0; j -= 2) p = dd::add(dd::neg(dd::mul(p, w)), f[j]);
    return p;
}

constexpr double kMaxTrigArg = 1e9;

Interval clamp_unit(Interval v) { return {std::max(v.lo, -1.0), std::min(v.hi, 1.0)}; }

Interval sin_point(double x) {
    if (x == 0.0) return 0.0;
    if (!std::isfinite(x) || std::fabs(x) > kMaxTrigArg) return {-1.0, 1.0};
    Reduced rd = reduce_pio2(x);
    DD v;
    switch (rd.quadrant) {
        case 0: v = sin_taylor(rd.r); break;
        case 1: v = cos_taylor(rd.r); break;
        case 2: v = dd::neg(sin_taylor(rd.r)); break;
        default: v = dd::neg(cos_taylor(rd.r)); break;
    }
    return clamp_unit(from_dd(v, rd.err + kAbs));
}

Interval cos_point(double x) {
    if (x == 0.0) return 1.0;
    if (!std::isfinite(x) || std::fabs(x) > kMaxTrigArg) return {-1.0, 1.0};
    Reduced rd = reduce_pio2(x);
    DD v;
    switch (rd.quadrant) {
        case 0: v = cos_taylor(rd.r); break;
        case 1: v = dd::neg(sin_taylor(rd.r)); break;
        case 2: v = dd::neg(cos_taylor(rd.r)); break;
        default: v = sin_taylor(rd.r); break;
    }
    return clamp_unit(from_dd(v, rd.err + kAbs));
}

// does offset + period*k meet [lo, hi] for some integer k?
bool hits_lattice(const Interval& offset, const Interval& period, double lo, double hi) {
    double k0 = std::floor((lo - offset.hi) / period.lo) - 1.0;
    double k1 = std::ceil((hi - offset.lo) / period.lo) + 1.0;
    for (double k = k0; k <= k1; k += 1.0) {
        Interval c = offset + Interval(k) * period;
        if (c.lo <= hi && c.hi >= lo) return true;
    }
    return false;
}

}  // namespace

Interval pi_interval() { return {3.141592653589793, detail::next_up(3.141592653589793)}; }

Interval ln2_interval() { return {kLn2[0], detail::next_up(kLn2[0])}; }

Interval sqrt(const Interval& a) {
    if (a.lo < 0.0) throw DomainError("sqrt of negative range");
    return {detail::sqrt_dn(a.lo), detail::sqrt_up(a.hi)};
}

Interval exp(const Interval& a) {
    double lo = a.lo == -detail::kInf ? 0.0 : exp_point(a.lo).lo;
    double hi = a.hi == detail::kInf ? detail::kInf : exp_point(a.hi).hi;
    return {lo, hi};
}

Interval log(const Interval& a) {
    if (!(a.lo > 0.0)) throw DomainError("log of non-positive range");
    return {log_point(a.lo).lo, log_point(a.hi).hi};
}

Interval sin(const Interval& a) {
    if (a.is_point()) return sin_point(a.lo);
    if (!a.is_finite() || a.hi - a.lo >= 6.0 || a.mag() > kMaxTrigArg) return {-1.0, 1.0};
    Interval r = hull(sin_point(a.lo), sin_point(a.hi));
    Interval pi = pi_interval();
    Interval half = pi / 2.0;
    Interval period = pi * 2.0;
    if (hits_lattice(half, period, a.lo, a.hi)) r.hi = 1.0;
    if (hits_lattice(-half, period, a.lo, a.hi)) r.lo = -1.0;
    return clamp_unit(r);
}

Interval cos(const Interval& a) {
    if (a.is_point()) return cos_point(a.lo);
    if (!a.is_finite() || a.hi - a.lo >= 6.0 || a.mag() > kMaxTrigArg) return {-1.0, 1.0};
    Interval r = hull(cos_point(a.lo), cos_point(a.hi));
    Interval pi = pi_interval();
    Interval period = pi * 2.0;
    if (hits_lattice(Interval(0.0), period, a.lo, a.hi)) r.hi = 1.0;
    if (hits_lattice(pi, period, a.lo, a.hi)) r.lo = -1.0;
    return clamp_unit(r);
}

}  // namespace repulse
