#include <cmath>

#include "repulse/certify.hpp"
#include "repulse/tails.hpp"

namespace repulse {

namespace {

Interval I(double v) { return Interval(v); }
Interval I(long v) { return Interval(static_cast<double>(v)); }

Interval second_any(const PotentialContext& ctx, const Interval& h) {
    return h.contains_zero() ? F_alpha_second_sf(ctx, h) : F_alpha_second(ctx, h);
}

// L(x, n) given F(x), F(n), F'(n)
Interval L_term(const PotentialContext& ctx, const Interval& x, const Interval& Fx, long n, const Interval& Fn,
                const Interval& dFn) {
    if (n == 0) return F_minus_one_over_x2(ctx, x);
    const Interval N = I(n);
    const bool diag = x.contains(static_cast<double>(n));
    Interval d = x - N;
    if (!diag && d.mig() >= 0.25) return (Fx - Fn - dFn * d) / sqr(d);
    // mean value theorem: L = F''(s)/2 for s between x and n
    Interval mvt = 0.5 * second_any(ctx, hull(x, N));
    if (diag) return mvt;
    Interval direct = (Fx - Fn - dFn * d) / sqr(d);
    return overlaps(direct, mvt) ? intersect(direct, mvt) : direct;
}

// upper bounds over n > M: 1/(n - x)^2 + 1/(n + x)^2 <= c1/n^2 and n/(n^2 - x^2) <= c2/n
double c1_bound(long M, double xmax) {
    Interval m = I(M + 1);
    return (sqr(m / (m - I(xmax))) + 1.0).hi;
}
double c2_bound(long M, double xmax) {
    Interval m2 = sqr(I(M + 1));
    return (m2 / (m2 - sqr(I(xmax)))).hi;
}

// 2^-k, with an outer enclosure once it underflows
Interval inv_pow2(int k) {
    if (k <= 1000) return Interval(std::ldexp(1.0, -k));
    return Interval(0.0, std::ldexp(1.0, -1000));
}

}  // namespace

Interval mean_value_L_term(const PotentialContext& ctx, const Interval& x, long n) {
    Interval N = I(n);
    Interval dF = n == 0 ? Interval(0.0) : F_alpha_prime(ctx, N);
    return L_term(ctx, x, F_alpha(ctx, x), n, F_alpha(ctx, N), dF);
}

Expressions::Expressions(const PotentialContext& ctx, long M) : aux_(make_aux(ctx, M)), M_(M) {
    const unsigned a = static_cast<unsigned>(ctx.alpha);
    tail_F_over_n2_ = tail_F(ctx.s_pow_alpha, a, -2, M);
    tail_dF_over_n_ = tail_dF(ctx.s_pow_alpha, a, -1, M);
    tail_n4F_ = ctx.alpha >= 6 ? tail_F(ctx.s_pow_alpha, a, 4, M) : Interval::entire();
}

Interval Expressions::T() const {
    Interval sF = 0.0, sd = 0.0;
    for (long n = M_; n >= 1; --n) {
        sF += aux_.Fn[n];
        if (n >= 2) sd += abs(aux_.dFn[n]);
    }
    return 0.5 * (1.0 - 2.0 * (sF + aux_.tail_F)) - (sd + abs(aux_.tail_dF)) / pi_interval();
}

Interval Expressions::L() const {
    const Interval pi = pi_interval();
    const Interval two3 = Interval::ratio(2, 3);
    Interval s = 0.0;
    for (long n = M_; n >= 1; --n) {
        Interval nn = I(n);
        s += pow_int(nn, 3) * aux_.dFn[n] * (4.0 * remainder_R(pi * nn) - two3);
        s -= 2.0 * sqr(nn) * aux_.Fn[n];
    }
    // R is increasing in |x| with limit 1/6
    Interval R(remainder_R(pi * I(M_ + 1)).lo, Interval::ratio(1, 6).hi);
    Interval tail = aux_.tail_n3dF * (4.0 * R - two3) - 2.0 * aux_.tail_n2F;
    return 2.0 * (s + tail);
}

Interval Expressions::L_sum(const Interval& x) const {
    const PotentialContext& ctx = aux_.ctx;
    const double xm = x.mag();
    if (!(xm + 1.0 < static_cast<double>(M_))) throw DomainError("L_sum: |x| too large for the truncation");
    const Interval Fx = F_alpha(ctx, x);
    Interval s = L_term(ctx, x, Fx, 0, 1.0, 0.0);
    for (long n = M_; n >= 1; --n) {
        s += L_term(ctx, x, Fx, n, aux_.Fn[n], aux_.dFn[n]);
        s += L_term(ctx, x, Fx, -n, aux_.Fn[n], -aux_.dFn[n]);
    }
    const double c1 = c1_bound(M_, xm), c2 = c2_bound(M_, xm);
    double pos = (Fx * c1 * zeta_tail(2, M_)).hi;
    double neg = (c1 * tail_F_over_n2_ + 2.0 * c2 * abs(tail_dF_over_n_)).hi;
    return s + Interval(-neg, pos);
}

Interval Expressions::eta0() const {
    const PotentialContext& ctx = aux_.ctx;
    const Interval Fh = F_alpha(ctx, Interval(0.5));
    Interval s1 = 0.0, s2 = 0.0;
    for (long n = M_; n >= 1; --n) {
        Interval nn = I(n);
        s1 += aux_.Fn[n] / sqr(nn);
        s2 += nn * aux_.dFn[n] / (0.25 - sqr(nn));
    }
    s1 += tail_F_over_n2_;
    // n F'(n)/(1/4 - n^2) = |F'(n)|/n * n^2/(n^2 - 1/4)
    Interval m2 = sqr(I(M_ + 1));
    s2 += abs(tail_dF_over_n_) * Interval(1.0, (m2 / (m2 - 0.25)).hi);
    return 4.0 * (Fh - 1.0) + Fh * sqr(pi_interval()) / 3.0 - 2.0 * s1 - 2.0 * s2;
}

Interval Expressions::eta0_side() const {
    return F_alpha(aux_.ctx, Interval(0.5)) - 2.0 / I(static_cast<double>(aux_.ctx.alpha));
}

Interval Expressions::eta1(const Interval& t) const {
    if (t.lo < -0.5 || t.hi > 0.5) throw DomainError("eta1 needs t within [-1/2, 1/2]");
    const PotentialContext& ctx = aux_.ctx;
    const Interval x = 1.0 + t;
    const Interval Fx = F_alpha(ctx, x);
    const Interval& F1 = aux_.Fn[1];
    const Interval& dF1 = aux_.dFn[1];

    // sum_{n != 0} 1/(n - t)^2
    Interval inv = 0.0;
    for (long n = M_; n >= 1; --n) inv += 1.0 / sqr(I(n) - t) + 1.0 / sqr(I(n) + t);
    {
        Interval r = sqr(t) / sqr(I(M_ + 1));
        double rho = ((1.0 + r) / sqr(1.0 - r)).hi;
        Interval z = 2.0 * zeta_tail(2, M_);
        inv += Interval(z.lo, (z * rho).hi);
    }
    Interval lhs = L_term(ctx, x, Fx, 1, F1, dF1) + Fx * inv;

    // B(alpha, t): |n| >= 2
    Interval B = 0.0;
    for (long n = M_; n >= 2; --n) {
        Interval nn = I(n);
        Interval a = 1.0 / (x - nn), b = 1.0 / (x + nn);
        B += aux_.Fn[n] * (sqr(a) + sqr(b)) + aux_.dFn[n] * (a - b);
    }
    const double c1 = c1_bound(M_, 1.5), c2 = c2_bound(M_, 1.5);
    B += Interval(0.0, (c1 * tail_F_over_n2_ + 2.0 * c2 * abs(tail_dF_over_n_)).hi);

    Interval rhs = 1.0 / sqr(x) + F1 / sqr(2.0 + t) - dF1 / (2.0 + t) + B;
    return lhs - rhs;
}

Interval Expressions::eta2(const Interval& x, long k) const {
    const double xm = x.mag();
    if (!(xm + 1.0 < static_cast<double>(M_))) throw DomainError("eta2: |x| too large for the truncation");
    Interval s = 0.0;
    for (long n = M_; n >= -M_; --n) {
        if (n == k) continue;
        long m = n < 0 ? -n : n;
        Interval dF = n < 0 ? -aux_.dFn[m] : aux_.dFn[m];
        Interval inv = 1.0 / (x - I(n));
        s += aux_.Fn[m] * sqr(inv) + dF * inv;
    }
    // both kinds of remainder terms are non-negative
    const double c1 = c1_bound(M_, xm), c2 = c2_bound(M_, xm);
    s += Interval(0.0, (c1 * tail_F_over_n2_ + 2.0 * c2 * abs(tail_dF_over_n_)).hi);
    return -s;
}

Interval Expressions::allthestars() const {
    const PotentialContext& ctx = aux_.ctx;
    if (ctx.alpha < 6) throw DomainError("allthestars needs alpha >= 6");
    const Interval a = I(static_cast<double>(ctx.alpha));
    Interval A = 0.0, C = 0.0;
    for (long n = M_; n >= 1; --n) {
        Interval nn = I(n);
        A += 3.0 * sqr(nn) * aux_.Fn[n] + pow_int(nn, 3) * aux_.dFn[n];
        if (n >= 2) C += abs(10.0 * pow_int(nn, 4) * aux_.Fn[n] + 2.0 * pow_int(nn, 5) * aux_.dFn[n]);
    }
    A = 2.0 * (A + 3.0 * aux_.tail_n2F + aux_.tail_n3dF);
    // 10 n^4 F + 2 n^5 F' = n^4 F (10 - 2 alpha (1 - F)), F in [0, F(M+1)] beyond the head
    {
        Interval Fm = F_alpha(ctx, I(M_ + 1));
        double k = std::max(abs(10.0 - 2.0 * a).hi, abs(10.0 - 2.0 * a * (1.0 - Interval(0.0, Fm.hi))).hi);
        C += Interval(0.0, (tail_n4F_ * k).hi);
    }
    Interval B = 16.0 / (100.0 * ctx.s_pow_alpha) + (10.0 * aux_.Fn[1] + 2.0 * aux_.dFn[1]) / 99.0;
    Interval D = (8.0 * a + 2.0) / pow_int(Interval(10.0), static_cast<unsigned>(ctx.alpha - 2));
    return -(A + B + C / 5.0 + D);
}

Interval Expressions::psi4_far() const {
    Interval A = 0.0;
    for (long n = M_; n >= 1; --n) {
        Interval nn = I(n);
        A += 3.0 * sqr(nn) * aux_.Fn[n] + pow_int(nn, 3) * aux_.dFn[n];
    }
    A = 2.0 * (A + 3.0 * aux_.tail_n2F + aux_.tail_n3dF);
    Interval F9 = F_alpha(aux_.ctx, Interval(9.0));
    return -A - Interval::ratio(11, 81) - 2.5 * F9;
}

Interval w_value(const Interval& c, const Interval& w) {
    return 16.0 * c * s3_kernel(2.0 * w) - 2.0 * sqr(sinc(w));
}

Interval T_large_value(int alpha) {
    const Interval a = I(static_cast<double>(alpha));
    const Interval q = inv_pow2(alpha);
    return 0.5 * (1.0 - 1.0 / (a - 2.0) - 2.0 / a * (a + 1.0) * q / (a - 1.0)) -
           (a + 2.0) * q / (a * 2.0) / pi_interval();
}

Interval L_large_value(int alpha) {
    const Interval a = I(static_cast<double>(alpha));
    const Interval R = remainder_R(pi_interval());
    const Interval q = inv_pow2(alpha - 2);
    return (1.0 - 1.0 / (2.0 * a - 4.0)) * (Interval::ratio(2, 3) - 4.0 * R) -
           4.0 * q / (2.0 * a - 5.0) * ((a - 1.0) / (a - 3.0)) - 2.0 / (a - 2.0);
}

Interval eta0_large_value(int alpha) {
    const Interval a = I(static_cast<double>(alpha));
    return -decimal("0.04") + decimal("0.94") * sqr(pi_interval()) / 3.0 - 4.0 * a / (3.0 * a - 6.0) -
           (a + 1.0) * inv_pow2(alpha) / (a - 1.0);
}

Interval allthestars_large_value(int alpha) {
    const Interval a = I(static_cast<double>(alpha));
    const Interval q4 = inv_pow2(alpha - 4);
    // s_alpha^alpha >= 2 alpha - 5
    Interval lhs = -1.0 + 7.0 / (2.0 * a - 4.0) + q4 + (11.0 / (2.0 * a - 4.0) - 1.0) / decimal("1.25") +
                   16.0 / (decimal("2.25") * (2.0 * a - 5.0)) + 4.0 * q4 / decimal("1.5");
    return -(lhs + (8.0 * a + 2.0) * inv_pow2(alpha - 2));
}

}  // namespace repulse
