#pragma once
// Directed rounding by error-free transformations. Results are bumped one
// step outward only when the nearest-rounded value is not exact.

#include <bit>
#include <cfloat>
#include <cmath>
#include <cstdint>
#include <limits>

namespace repulse::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
// below this the fma residual of a product may be inexact
inline constexpr double kTiny = 0x1p-960;

inline double next_up(double x) noexcept {
    if (std::isnan(x) || x == kInf) return x;
    if (x == 0.0) return DBL_TRUE_MIN;
    auto b = std::bit_cast<std::uint64_t>(x);
    b = x > 0.0 ? b + 1 : b - 1;
    return std::bit_cast<double>(b);
}

inline double next_down(double x) noexcept { return -next_up(-x); }

// rounding error of a+b, sign only matters
inline double sum_err(double a, double b, double s) noexcept {
    double bv = s - a;
    double av = s - bv;
    return (a - av) + (b - bv);
}

inline double add_dn(double a, double b) noexcept {
    double s = a + b;
    if (!std::isfinite(s)) return (s == kInf && std::isfinite(a) && std::isfinite(b)) ? DBL_MAX : s;
    return sum_err(a, b, s) < 0.0 ? next_down(s) : s;
}

inline double add_up(double a, double b) noexcept {
    double s = a + b;
    if (!std::isfinite(s)) return (s == -kInf && std::isfinite(a) && std::isfinite(b)) ? -DBL_MAX : s;
    return sum_err(a, b, s) > 0.0 ? next_up(s) : s;
}

inline double sub_dn(double a, double b) noexcept { return add_dn(a, -b); }
inline double sub_up(double a, double b) noexcept { return add_up(a, -b); }

inline double mul_dn(double a, double b) noexcept {
    if (a == 0.0 || b == 0.0) return 0.0;
    double p = a * b;
    if (!std::isfinite(p)) {
        if (std::isfinite(a) && std::isfinite(b)) return p > 0 ? DBL_MAX : p;
        return p;
    }
    if (std::fabs(p) < kTiny) return next_down(p);
    return std::fma(a, b, -p) < 0.0 ? next_down(p) : p;
}

inline double mul_up(double a, double b) noexcept {
    if (a == 0.0 || b == 0.0) return 0.0;
    double p = a * b;
    if (!std::isfinite(p)) {
        if (std::isfinite(a) && std::isfinite(b)) return p < 0 ? -DBL_MAX : p;
        return p;
    }
    if (std::fabs(p) < kTiny) return next_up(p);
    return std::fma(a, b, -p) > 0.0 ? next_up(p) : p;
}

// sign of (a/b - q) where q = fl(a/b)
inline int div_err_sign(double a, double b, double q) noexcept {
    double r = std::fma(-q, b, a);
    if (r == 0.0) return 0;
    return ((r > 0) == (b > 0)) ? 1 : -1;
}

inline double div_dn(double a, double b) noexcept {
    if (a == 0.0) return 0.0;
    double q = a / b;
    if (!std::isfinite(q)) {
        if (std::isfinite(a) && b != 0.0) return q > 0 ? DBL_MAX : q;
        return q;
    }
    if (std::isinf(b)) return q < 0 ? next_down(q) : q;
    if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return next_down(q);
    return div_err_sign(a, b, q) < 0 ? next_down(q) : q;
}

inline double div_up(double a, double b) noexcept {
    if (a == 0.0) return 0.0;
    double q = a / b;
    if (!std::isfinite(q)) {
        if (std::isfinite(a) && b != 0.0) return q < 0 ? -DBL_MAX : q;
        return q;
    }
    if (std::isinf(b)) return q > 0 ? next_up(q) : q;
    if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return next_up(q);
    return div_err_sign(a, b, q) > 0 ? next_up(q) : q;
}

inline double sqrt_dn(double x) noexcept {
    double r = std::sqrt(x);
    if (x == 0.0 || std::isinf(x)) return r;
    if (x < kTiny) return next_down(r) < 0.0 ? 0.0 : next_down(r);
    return std::fma(-r, r, x) < 0.0 ? next_down(r) : r;
}

inline double sqrt_up(double x) noexcept {
    double r = std::sqrt(x);
    if (x == 0.0 || std::isinf(x)) return r;
    if (x < kTiny) return next_up(r);
    return std::fma(-r, r, x) > 0.0 ? next_up(r) : r;
}

}  // namespace repulse::detail
