#include "repulse/auxfn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "repulse/tails.hpp"

namespace repulse {

namespace {

Interval I(double v) { return Interval(v); }
Interval I(long v) { return Interval(static_cast<double>(v)); }

Interval sym(double m) { return Interval(-m, m); }

// |sinc(pi (x +- n))| for every n > N
double far_sinc_bound(long N, const Interval& x) {
    Interval gap = I(N + 1) - I(x.mag());
    if (!(gap.lo > 0.0)) return 1.0;
    return std::min(1.0, (1.0 / (pi_interval() * gap)).hi);
}

}  // namespace

AuxCoefficients make_aux(const PotentialContext& ctx, long N) {
    if (N < 2) throw DomainError("make_aux needs N >= 2");
    AuxCoefficients c;
    c.ctx = ctx;
    c.N = N;
    c.Fn.resize(N + 1);
    c.dFn.resize(N + 1);
    c.Fn[0] = 1.0;
    c.dFn[0] = 0.0;
    for (long n = 1; n <= N; ++n) {
        c.Fn[n] = F_alpha(ctx, I(n));
        c.dFn[n] = F_alpha_prime(ctx, I(n));
    }
    const unsigned a = static_cast<unsigned>(ctx.alpha);
    const Interval& S = ctx.s_pow_alpha;
    c.tail_F = tail_F(S, a, 0, N);
    c.tail_dF = tail_dF(S, a, 0, N);
    c.tail_nF = tail_F(S, a, 1, N);
    c.tail_n2F = tail_F(S, a, 2, N);
    c.tail_ndF = tail_dF(S, a, 1, N);
    c.tail_n3dF = tail_dF(S, a, 3, N);
    return c;
}

Interval lattice_sum_F(const AuxCoefficients& c) {
    Interval s = 0.0;
    for (long n = c.N; n >= 1; --n) s += c.Fn[n];
    return 1.0 + 2.0 * (s + c.tail_F);
}

Interval psi(const AuxCoefficients& c, const Interval& x) {
    const Interval pi = pi_interval();
    const Interval sx = sin(pi * x);
    // sinc(pi(x - k)); far from the peak sin(pi(x-k)) = (-1)^k sin(pi x)
    auto shifted = [&](long k) {
        Interval d = x - I(k);
        if (d.mig() < 4.0) return sinc(pi * d);
        Interval v = sx / (pi * d);
        return k % 2 == 0 ? v : -v;
    };

    Interval first = 0.0, second = 0.0;
    for (long n = c.N; n >= 1; --n) {
        Interval sm = shifted(n), sp = shifted(-n);
        first += c.Fn[n] * (sqr(sm) + sqr(sp));
        second += I(n) * c.dFn[n] * (sm * sp);
    }
    first += sqr(shifted(0));

    const double b = far_sinc_bound(c.N, x);
    const double b2 = (I(b) * I(b)).hi;
    first += Interval(0.0, (2.0 * c.tail_F * b2).hi);
    second += sym((abs(c.tail_ndF) * b2).hi);
    return first + 2.0 * second;
}

Interval psi_hat(const AuxCoefficients& c, const Interval& xi) {
    const Interval a = abs(xi);
    if (a.lo >= 1.0) return 0.0;
    const Interval u(a.lo, std::min(a.hi, 1.0));
    const Interval two_pi = 2.0 * pi_interval();

    Interval cs = 0.0, sn = 0.0;
    for (long n = c.N; n >= 1; --n) {
        Interval arg = two_pi * I(n) * u;
        cs += c.Fn[n] * cos(arg);
        sn += c.dFn[n] * sin(arg);
    }
    cs = 1.0 + 2.0 * (cs + sym(c.tail_F.hi));
    sn += sym(abs(c.tail_dF).hi);
    Interval r = (1.0 - u) * cs - sn / pi_interval();
    return a.hi > 1.0 ? hull(r, Interval(0.0)) : r;
}

Interval psi_hat_near_one(const AuxCoefficients& c, const Interval& t) {
    if (t.lo < 0.0 || t.hi > 0.5) throw DomainError("psi_hat_near_one needs t within [0, 1/2]");
    const Interval pi = pi_interval();
    const Interval two3 = Interval::ratio(2, 3);

    Interval s = 0.0;
    for (long n = c.N; n >= 1; --n) {
        Interval nn = I(n);
        Interval y = pi * nn * t;
        s += pow_int(nn, 3) * c.dFn[n] * (4.0 * remainder_R(2.0 * y) - two3);
        s -= 2.0 * sqr(nn) * c.Fn[n] * sqr(sinc(y));
    }

    // n > N: -2/3 + 4R(y) lies in [-k, 0] with k = min(2/3, 4(y+1)/y^3)
    double k = two3.hi;
    double sinc_sq = 1.0;
    if (t.lo > 0.0) {
        Interval y = 2.0 * pi * I(c.N + 1) * I(t.lo);
        k = std::min(k, (4.0 * (y + 1.0) / pow_int(y, 3)).hi);
        sinc_sq = (1.0 / sqr(pi * I(t.lo))).hi;
    }
    Interval tail1(0.0, (abs(c.tail_n3dF) * k).hi);
    double t2 = c.tail_n2F.hi;
    if (sinc_sq < 1.0) t2 = std::min(t2, (c.tail_F * sinc_sq).hi);
    Interval tail2(0.0, (2.0 * Interval(t2)).hi);
    return 2.0 * (s + tail1 - tail2);
}

Interval poisson_check(const AuxCoefficients& c, long points) {
    if (points < 2) throw DomainError("poisson_check needs at least 2 points");
    const long N = c.N;
    std::vector<double> F(N + 1), nd(N + 1);
    for (long n = 0; n <= N; ++n) {
        F[n] = c.Fn[n].mid();
        nd[n] = static_cast<double>(n) * c.dFn[n].mid();
    }
    constexpr double pi = std::numbers::pi;
    auto sinc_at = [&](double x, long k, double sx) {
        double d = x - static_cast<double>(k);
        if (std::abs(d) < 1.0) return d == 0.0 ? 1.0 : std::sin(pi * d) / (pi * d);
        double v = sx / (pi * d);
        return k % 2 == 0 ? v : -v;
    };
    auto value = [&](double x) {
        double sx = std::sin(pi * x);
        double acc = F[0] * std::pow(sinc_at(x, 0, sx), 2);
        for (long n = 1; n <= N; ++n) {
            double sm = sinc_at(x, n, sx), sp = sinc_at(x, -n, sx);
            acc += F[n] * (sm * sm + sp * sp) + 2.0 * nd[n] * sm * sp;
        }
        return acc;
    };

    // even integrand: twice the integral over [0, N+1]
    const double L = static_cast<double>(N + 1);
    const long m = std::max(1L, points / 2);
    const double h = L / static_cast<double>(m);
    double acc = 0.5 * (value(0.0) + value(L));
    for (long i = 1; i < m; ++i) acc += value(h * static_cast<double>(i));
    return Interval(2.0 * h * acc) - lattice_sum_F(c);
}

Interval decay_constant(const AuxCoefficients& c) {
    const Interval pi = pi_interval();
    const Interval ipi = 1.0 / pi;
    const Interval ipi2 = sqr(ipi);

    // |psi| <= sum F(n) + sum |n F'(n)|
    Interval c0 = 0.0;
    // x^2 |psi| <= sum (1/pi + |n|)^2 F(n) + (1/pi^2 + n^2) |n F'(n)|
    Interval c2 = 0.0;
    for (long n = c.N; n >= 1; --n) {
        Interval nn = I(n);
        Interval w = abs(nn * c.dFn[n]);
        c0 += c.Fn[n] + w;
        c2 += sqr(ipi + nn) * c.Fn[n] + (ipi2 + sqr(nn)) * w;
    }
    c0 = 1.0 + 2.0 * (c0 + c.tail_F + abs(c.tail_ndF));
    Interval t2 = ipi2 * c.tail_F + 2.0 * ipi * c.tail_nF + c.tail_n2F + ipi2 * abs(c.tail_ndF) + abs(c.tail_n3dF);
    c2 = ipi2 + 2.0 * (c2 + t2);
    Interval r = c0 + c2;
    return Interval(0.0, r.hi);
}

}  // namespace repulse
