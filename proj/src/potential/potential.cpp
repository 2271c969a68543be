#include "repulse/potential.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "repulse/tails.hpp"

namespace repulse {

namespace {

Interval I(double v) { return Interval(v); }

unsigned ua(int alpha) { return static_cast<unsigned>(alpha); }

// y^-alpha for y > 1, where y^alpha may overflow
Interval inv_pow(const Interval& y, int alpha) { return pow_int(1.0 / y, ua(alpha)); }

// f(y) + y f'(y), with v = y^alpha or w = 1/v
Interval g_of_y(int alpha, const Interval& y) {
    if (y.lo > 1.0) {
        Interval w = inv_pow(y, alpha);
        return w * (w - I(alpha - 1)) / sqr(1.0 + w);
    }
    Interval v = pow_int(y, ua(alpha));
    return (1.0 - I(alpha - 1) * v) / sqr(1.0 + v);
}

// d/dy (y f'(y)) * y
Interval h_of_y(int alpha, const Interval& y) {
    const Interval a = I(alpha);
    if (y.lo > 1.0) {
        Interval w = inv_pow(y, alpha);
        return a * w * ((a - 1.0) - (a + 1.0) * w) / pow_int(1.0 + w, 3);
    }
    Interval v = pow_int(y, ua(alpha));
    return a * v * ((a - 1.0) * v - (a + 1.0)) / pow_int(1.0 + v, 3);
}

// w/(1+w) for w >= 0, which lies in [0, 1)
Interval w_over_1pw(const Interval& w) {
    Interval r = w / (1.0 + w);
    return Interval(std::max(0.0, r.lo), r.hi);
}

// S x^alpha, or its reciprocal when x > 1
Interval u_recip(const PotentialContext& ctx, const Interval& x) { return inv_pow(x, ctx.alpha) / ctx.s_pow_alpha; }

}  // namespace

void require_even_alpha(int alpha) {
    if (alpha < 4 || alpha % 2 != 0)
        throw DomainError("alpha must be an even integer >= 4, got " + std::to_string(alpha));
}

PotentialContext make_context(int alpha, const Interval& s_alpha) {
    require_even_alpha(alpha);
    PotentialContext c;
    c.alpha = alpha;
    c.s_alpha = s_alpha;
    c.s_pow_alpha = pow_int(s_alpha, ua(alpha));
    c.F1 = 1.0 / (1.0 + c.s_pow_alpha);
    c.dF1 = -I(alpha) * c.s_pow_alpha * sqr(c.F1);
    return c;
}

PotentialContext alpha4_context() {
    PotentialContext c;
    c.alpha = 4;
    c.s_alpha = sqrt(Interval(2.0));
    c.s_pow_alpha = 4.0;
    c.F1 = Interval::ratio(1, 5);
    c.dF1 = Interval::ratio(-16, 25);
    return c;
}

Interval f_alpha(int alpha, const Interval& x) {
    if (x.mig() > 1.0) {
        return w_over_1pw(inv_pow(abs(x), alpha));
    }
    return 1.0 / (1.0 + pow_int(x, ua(alpha)));
}

Interval f_alpha_prime(int alpha, const Interval& x) {
    if (x.lo > 1.0) {
        Interval w = inv_pow(x, alpha);
        return -I(alpha) / x * w / sqr(1.0 + w);
    }
    return -I(alpha) * pow_int(x, ua(alpha - 1)) / sqr(1.0 + pow_int(x, ua(alpha)));
}

Interval F_alpha(const PotentialContext& ctx, const Interval& x) {
    if (x.mig() > 1.0) {
        return w_over_1pw(u_recip(ctx, abs(x)));
    }
    return 1.0 / (1.0 + ctx.s_pow_alpha * pow_int(x, ua(ctx.alpha)));
}

Interval F_alpha_prime_sf(const PotentialContext& ctx, const Interval& x) {
    if (x.lo > 1.0) {
        Interval w = u_recip(ctx, x);
        return -I(ctx.alpha) / x * w / sqr(1.0 + w);
    }
    Interval F = F_alpha(ctx, x);
    return -I(ctx.alpha) * ctx.s_pow_alpha * pow_int(x, ua(ctx.alpha - 1)) * sqr(F);
}

Interval F_alpha_second_sf(const PotentialContext& ctx, const Interval& x) {
    const Interval a = I(ctx.alpha);
    Interval F = F_alpha(ctx, x);
    if (x.mig() > 1.0) {
        Interval w = u_recip(ctx, abs(x));
        return a / sqr(x) * w / sqr(1.0 + w) * (a + 1.0 - 2.0 * a * F);
    }
    return a * ctx.s_pow_alpha * pow_int(x, ua(ctx.alpha - 2)) * sqr(F) * (a + 1.0 - 2.0 * a * F);
}

Interval F_minus_one_over_x2(const PotentialContext& ctx, const Interval& x) {
    if (x.mig() > 1.0) return -1.0 / (sqr(x) * (1.0 + u_recip(ctx, abs(x))));
    return -ctx.s_pow_alpha * pow_int(x, ua(ctx.alpha - 2)) * F_alpha(ctx, x);
}

Interval F_alpha_prime(const PotentialContext& ctx, const Interval& x) {
    if (x.contains_zero()) throw DomainError("F_alpha_prime: range contains 0");
    Interval F = F_alpha(ctx, x);
    Interval emu = -I(ctx.alpha) * F * (1.0 - F) / x;
    return intersect(emu, F_alpha_prime_sf(ctx, x));
}

Interval F_alpha_second(const PotentialContext& ctx, const Interval& x) {
    if (x.contains_zero()) throw DomainError("F_alpha_second: range contains 0");
    const Interval a = I(ctx.alpha);
    Interval F = F_alpha(ctx, x);
    Interval direct = a * F * ((1.0 - F) / sqr(x)) * (a * (1.0 - 2.0 * F) + 1.0);
    return intersect(direct, F_alpha_second_sf(ctx, x));
}

LatticeEnergyTerms lattice_energy(int alpha, const Interval& t, long N) {
    require_even_alpha(alpha);
    if (!(t.lo > 0.0)) throw DomainError("lattice_energy needs t > 0");
    if (N < 2) throw DomainError("lattice_energy needs N >= 2");
    Interval s = 0.0;
    for (long n = N; n >= 1; --n) s += f_alpha(alpha, t * I(static_cast<double>(n)));

    Interval q = 1.0 / pow_int(t, ua(alpha));
    Interval crude(0.0, (q * power_sum_bound(ua(alpha), N + 1)).hi);
    auto fine = alternating_power_tail(q, ua(alpha), 0, N, 0.0, 1.0);
    Interval rem = fine ? intersect(*fine, crude) : crude;

    LatticeEnergyTerms out;
    out.truncation_N = N;
    out.head = t * (1.0 + 2.0 * s);
    out.tail = 2.0 * t * rem;
    return out;
}

Interval closed_form_energy_alpha4(const Interval& t) {
    if (!(t.lo > 0.0)) throw DomainError("closed form needs t > 0");
    Interval pi = pi_interval();
    Interval r2 = sqrt(Interval(2.0));
    Interval z = pi * r2 / t;
    // (sinh z + sin z)/(cosh z - cos z), numerator and denominator scaled by e^{-z}
    Interval e1 = exp(-z);
    Interval e2 = sqr(e1);
    Interval num = (1.0 - e2) / 2.0 + sin(z) * e1;
    Interval den = (1.0 + e2) / 2.0 - cos(z) * e1;
    return pi / r2 * num / den;
}

Interval energy_derivative(int alpha, const Interval& t, long N) {
    require_even_alpha(alpha);
    if (!(t.lo > 0.5)) throw DomainError("energy_derivative needs t > 1/2");
    if (N < 2) throw DomainError("energy_derivative needs N >= 2");
    Interval s = 0.0;
    for (long n = N; n >= 1; --n) s += g_of_y(alpha, t * I(static_cast<double>(n)));

    // |f + y f'| <= (alpha+1) f <= (alpha+1) y^{-alpha}
    Interval q = 1.0 / pow_int(t, ua(alpha));
    double c = (I(alpha + 1) * q * power_sum_bound(ua(alpha), N + 1)).hi;
    Interval rem(-c, c);
    if (auto fine = alternating_power_tail(q, ua(alpha), 0, N, alpha, -1.0)) rem = intersect(-*fine, rem);
    return 1.0 + 2.0 * (s + rem);
}

Interval energy_second_derivative(int alpha, const Interval& t, long N) {
    require_even_alpha(alpha);
    if (!(t.lo > 0.5)) throw DomainError("energy_second_derivative needs t > 1/2");
    const Interval a = I(alpha);
    Interval s = 0.0;
    for (long n = N; n >= 1; --n) s += h_of_y(alpha, t * I(static_cast<double>(n)));
    // |h(v)| <= 2 alpha^2 / v once v >= 1
    Interval q = 1.0 / pow_int(t, ua(alpha));
    double c = (2.0 * sqr(a) * q * zeta_tail(ua(alpha), N)).hi;
    return 2.0 / t * (s + Interval(-c, c));
}

PotentialContext solve_s_alpha(int alpha, const SolveOptions& opt) {
    require_even_alpha(alpha);
    const long N = opt.N;
    auto sign_of = [&](double t) {
        Interval d = energy_derivative(alpha, Interval(t), N);
        return d.hi < 0.0 ? -1 : (d.lo > 0.0 ? 1 : 0);
    };
    if (sign_of(1.0) != -1 || sign_of(2.0) != 1) throw SolverError("ambiguous sign-change count");

    double lo = 1.0, hi = 2.0;
    while (hi - lo > opt.tol) {
        double m = lo + (hi - lo) / 2;
        if (m <= lo || m >= hi) break;
        int sg = sign_of(m);
        if (sg < 0) {
            lo = m;
        } else if (sg > 0) {
            hi = m;
        } else {
            bool moved = false;
            double l2 = lo + (m - lo) / 2, h2 = m + (hi - m) / 2;
            if (sign_of(l2) < 0) lo = l2, moved = true;
            if (sign_of(h2) > 0) hi = h2, moved = true;
            if (!moved) break;
        }
    }
    if (hi - lo > opt.tol)
        throw SolverError("enclosure width " + fmt_double(hi - lo) + " above tolerance; derivative too coarse");

    // exactly one sign change on [1,2]: certified negative cells, a contiguous
    // block of undecided cells on which E'' > 0, then certified positive cells
    const int cells = opt.scan_cells;
    std::vector<int> sg(cells);
    for (int i = 0; i < cells; ++i) {
        Interval c(1.0 + static_cast<double>(i) / cells, 1.0 + static_cast<double>(i + 1) / cells);
        Interval d = energy_derivative(alpha, c, N);
        sg[i] = d.hi < 0.0 ? -1 : (d.lo > 0.0 ? 1 : 0);
    }
    int i = 0;
    while (i < cells && sg[i] == -1) ++i;
    int block_start = i;
    while (i < cells && sg[i] == 0) ++i;
    int block_end = i;
    while (i < cells && sg[i] == 1) ++i;
    if (i != cells || block_end == block_start) throw SolverError("ambiguous sign-change count");

    std::function<bool(double, double, int)> convex = [&](double a, double b, int depth) {
        if (energy_second_derivative(alpha, Interval(a, b), N).lo > 0.0) return true;
        if (depth == 0) return false;
        double m = a + (b - a) / 2;
        return convex(a, m, depth - 1) && convex(m, b, depth - 1);
    };
    for (int k = block_start; k < block_end; ++k) {
        double a = 1.0 + static_cast<double>(k) / cells, b = 1.0 + static_cast<double>(k + 1) / cells;
        if (!convex(a, b, 8)) throw SolverError("ambiguous sign-change count");
    }
    return make_context(alpha, Interval(lo, hi));
}

std::pair<Interval, Interval> asymptotic_s_pow_alpha(int alpha) {
    require_even_alpha(alpha);
    if (alpha < 12) throw DomainError("asymptotic expansion needs alpha >= 12");
    const Interval a = I(alpha);
    Interval H = (a - 2.0) + sqrt(sqr(a - 2.0) - 3.0);
    Interval G = 2.0 * a / sqr(decimal("0.99")) * sqr(a + 1.0) /
                 (pow_int(Interval(2.0), ua(alpha - 1)) * (a - 1.0));
    return {H, G};
}

Interval first_order_residual(const PotentialContext& ctx, long N) {
    if (N < 2) throw DomainError("first_order_residual needs N >= 2");
    const unsigned a = ua(ctx.alpha);
    Interval s = 0.0;
    for (long n = N; n >= 1; --n) {
        Interval w = u_recip(ctx, I(static_cast<double>(n)));
        s += w * (w - I(ctx.alpha - 1)) / sqr(1.0 + w);
    }
    Interval rem = tail_F(ctx.s_pow_alpha, a, 0, N) + tail_dF(ctx.s_pow_alpha, a, 1, N);
    return 1.0 + 2.0 * (s + rem);
}

}  // namespace repulse
