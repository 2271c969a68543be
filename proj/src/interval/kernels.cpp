#include <array>

#include "repulse/interval.hpp"

namespace repulse {

namespace {

constexpr double kSeriesRadius = 0.5;
// sinc decreases on [0, x*] with x* = 4.49340945790906 the first root of tan x = x
constexpr double kSincMonotone = 4.4934;
constexpr double kSincMin = -0.21723363;  // below cos(x*)

const std::array<Interval, 26>& inv_fact() {
    static const std::array<Interval, 26> t = [] {
        std::array<Interval, 26> a{};
        a[0] = 1.0;
        for (int n = 1; n < 26; ++n) a[n] = a[n - 1] / Interval(static_cast<double>(n));
        return a;
    }();
    return t;
}

// sum_{j<8} (-1)^j Y^j / (2j+first)!  plus the first omitted term as a symmetric bound
Interval alt_series(const Interval& Y, int first) {
    const auto& f = inv_fact();
    Interval p = f[14 + first];
    for (int j = 6; j >= 0; --j) p = f[2 * j + first] - Y * p;
    Interval tail = pow_int(Y, 8) * f[16 + first];
    return p + Interval(-tail.hi, tail.hi);
}

Interval sinc_point(double y) {
    if (y == 0.0) return 1.0;
    if (y < kSeriesRadius) return alt_series(sqr(Interval(y)), 1);
    Interval Y(y);
    return sin(Y) / Y;
}

Interval R_point(double y) {
    if (y == 0.0) return 0.0;
    Interval Y(y);
    if (y < kSeriesRadius) {
        Interval w = sqr(Y);
        return w * alt_series(w, 5);
    }
    return (sin(Y) - Y + pow_int(Y, 3) / 6.0) / pow_int(Y, 3);
}

Interval S3_point(double y) {
    if (y == 0.0) return Interval::ratio(1.0, 6.0);
    Interval Y(y);
    if (y < kSeriesRadius) return alt_series(sqr(Y), 3);
    return (Y - sin(Y)) / pow_int(Y, 3);
}

Interval sinc_nonneg(double l, double u) {
    if (u <= kSincMonotone) return {sinc_point(u).lo, sinc_point(l).hi};
    if (l >= kSincMonotone) {
        if (u == detail::kInf) return {kSincMin, 1.0};
        Interval x(l, u);
        Interval v = sin(x) / x;
        return {std::max(v.lo, kSincMin), std::min(v.hi, 1.0)};
    }
    return hull(sinc_nonneg(l, kSincMonotone), sinc_nonneg(kSincMonotone, u));
}

}  // namespace

Interval sinc(const Interval& a) {
    Interval x = abs(a);
    Interval v = sinc_nonneg(x.lo, x.hi);
    return {std::max(v.lo, kSincMin), std::min(v.hi, 1.0)};
}

Interval remainder_R(const Interval& a) {
    Interval x = abs(a);
    const double sixth = Interval::ratio(1.0, 6.0).hi;
    double lo = R_point(x.lo).lo;
    double hi = x.hi == detail::kInf ? sixth : R_point(x.hi).hi;
    return {std::max(lo, 0.0), std::min(hi, sixth)};
}

Interval s3_kernel(const Interval& a) {
    Interval x = abs(a);
    const double sixth = Interval::ratio(1.0, 6.0).hi;
    double lo = x.hi == detail::kInf ? 0.0 : S3_point(x.hi).lo;
    double hi = S3_point(x.lo).hi;
    return {std::max(lo, 0.0), std::min(hi, sixth)};
}

}  // namespace repulse
