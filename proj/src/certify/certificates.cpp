#include <cmath>
#include <optional>

#include "repulse/certify.hpp"

namespace repulse {

namespace {

Certificate tag(Certificate c, InequalityId id, int alpha, std::string domain, std::string anchor) {
    c.inequality_id = id;
    c.alpha = alpha;
    c.domain = std::move(domain);
    c.anchor = std::move(anchor);
    return c;
}

// 2^-k, with an outer enclosure once it underflows
Interval inv_pow2(int k) {
    if (k <= 1000) return Interval(std::ldexp(1.0, -k));
    return Interval(0.0, std::ldexp(1.0, -1000));
}

void require_alpha(int alpha, int least, const char* what) {
    require_even_alpha(alpha);
    if (alpha < least) throw DomainError(std::string(what) + ": alpha below the supported regime");
}

Interval A(int alpha) { return Interval(static_cast<double>(alpha)); }

const char* kTAnchor = "(1/2)(1 - 2 sum_{n>=1} F(n)) - (1/pi) sum_{n>=2} |F'(n)| >= 0";
const char* kLAnchor = "sum_n n^3 F'(n)(-2/3 + 4R(pi n)) - sum_n 2 n^2 F(n) >= 0";
const char* kEta0Anchor =
    "4(F(1/2) - 1) + sum_{n!=0} (F(1/2) - F(n))/n^2 >= sum_{n!=0} n F'(n)/(1/4 - n^2), with F(1/2) >= 2/alpha";
const char* kEta1Anchor =
    "L(1+t, 1) + sum_{n!=0} F(1+t)/(n-t)^2 >= 1/(1+t)^2 + F(1)/(2+t)^2 - F'(1)/(2+t) + B(alpha, t)";
const char* kEta2Anchor = "sum_{n != eta(x)} (F(n)/(x-n)^2 + F'(n)/(x-n)) <= 0";
const char* kStarsAnchor =
    "-sum_n (3n^2 F(n) + n^3 F'(n)) >= 16/(100 S) + (10 F(1) + 2 F'(1))/99 + sum_{n>=2} |10 n^4 F(n) + 2 n^5 F'(n)|/5 "
    "+ (8 alpha + 2)/10^(alpha-2)";

}  // namespace

Certificate certify_T(const PotentialContext& ctx, const BnbPolicy& p) {
    require_alpha(ctx.alpha, 4, "certify_T");
    if (ctx.alpha >= 12) return certify_T_large(ctx.alpha, p);
    Expressions e(ctx, p.truncation);
    return tag(prove_constant([&] { return e.T(); }, p), InequalityId::T_alpha, ctx.alpha, "constant", kTAnchor);
}

Certificate certify_T_large(int alpha, const BnbPolicy& p) {
    require_alpha(alpha, 12, "certify_T_large");
    return tag(prove_constant([&] { return T_large_value(alpha); }, p), InequalityId::T_alpha, alpha,
               "constant, closed bound for alpha >= 12",
               "(1/2)(1 - 1/(alpha-2) - (2/alpha)(alpha+1)/(2^alpha (alpha-1))) - (1/pi)(alpha+2)/(alpha 2^(1+alpha)) >= 0");
}

Certificate certify_L(const PotentialContext& ctx, const BnbPolicy& p) {
    require_alpha(ctx.alpha, 6, "certify_L");
    if (ctx.alpha >= 12) return certify_L_large(ctx.alpha, p);
    Expressions e(ctx, p.truncation);
    return tag(prove_constant([&] { return e.L(); }, p), InequalityId::L_alpha, ctx.alpha, "constant", kLAnchor);
}

Certificate certify_L_large(int alpha, const BnbPolicy& p) {
    require_alpha(alpha, 12, "certify_L_large");
    return tag(prove_constant([&] { return L_large_value(alpha); }, p), InequalityId::L_alpha, alpha,
               "constant, closed bound for alpha >= 12",
               "(1 - 1/(2 alpha - 4))(2/3 - 4R(pi)) - 4(alpha-1)/(2^(alpha-2)(2 alpha - 5)(alpha-3)) - 2/(alpha-2) >= 0");
}

Certificate certify_w_inequality(const Interval& c, const BnbPolicy& p) {
    const Interval half_pi = pi_interval() / 2.0;
    Certificate box = prove_nonneg([&](const Interval& w) { return w_value(c, w); }, Interval(0.0, half_pi.hi), p);
    // beyond pi/2: c(2w - sin 2w) - w sin^2 w >= (2c - 1) w - c
    Certificate tail = prove_constant([&] { return (2.0 * c - 1.0) * half_pi.lo - c; }, p);
    return tag(merge({box, tail}), InequalityId::w_inequality, 4, "w in [0, pi/2]; constant for w >= pi/2",
               "c (2w - sin 2w)/w^3 >= sin^2(w)/w^2, i.e. 16 c S3(2w) - 2 sinc(w)^2 >= 0");
}

std::vector<Certificate> certify_psihat_nonneg(const PotentialContext& ctx, const BnbPolicy& p) {
    require_alpha(ctx.alpha, 4, "certify_psihat_nonneg");
    std::vector<Certificate> out{certify_T(ctx, p)};
    if (ctx.alpha == 4)
        out.push_back(certify_w_inequality(Interval((1.0 - ctx.F1).lo), p));
    else
        out.push_back(certify_L(ctx, p));
    return out;
}

Certificate certify_psi4_le_F4(const BnbPolicy& p) {
    Expressions e(alpha4_context(), p.truncation);
    Certificate near = prove_nonneg([&](const Interval& x) { return e.L_sum(x); }, Interval(0.0, 9.0), p);
    Certificate far = prove_constant([&] { return e.psi4_far(); }, p);
    return tag(merge({near, far}), InequalityId::psi4_le_F4, 4, "x in [0, 9]; constant for x >= 9",
               "sum_{n in Z} (F(x) - F(n) - F'(n)(x-n))/(x-n)^2 >= 0, and -sum_n (3n^2 F(n) + n^3 F'(n)) >= "
               "10/81 + 1/81 + 5 F(9)/2");
}

Certificate certify_eta0(const PotentialContext& ctx, const BnbPolicy& p) {
    require_alpha(ctx.alpha, 6, "certify_eta0");
    if (ctx.alpha >= 12) return certify_eta0_large(ctx.alpha, p);
    Expressions e(ctx, p.truncation);
    Certificate main = prove_constant([&] { return e.eta0(); }, p);
    Certificate side = prove_constant([&] { return e.eta0_side(); }, p);
    return tag(merge({main, side}), InequalityId::eta0, ctx.alpha, "constant", kEta0Anchor);
}

Certificate certify_eta0_large(int alpha, const BnbPolicy& p) {
    require_alpha(alpha, 12, "certify_eta0_large");
    return tag(prove_constant([&] { return eta0_large_value(alpha); }, p), InequalityId::eta0, alpha,
               "constant, closed bound for alpha >= 12",
               "-0.04 + 0.94 pi^2/3 - 4 alpha/(3 alpha - 6) - (alpha+1)/(2^alpha (alpha-1)) >= 0");
}

Certificate certify_eta1(const PotentialContext& ctx, const BnbPolicy& p) {
    require_alpha(ctx.alpha, 6, "certify_eta1");
    if (ctx.alpha > 1000) return certify_eta1_large(ctx.alpha, p);
    Expressions e(ctx, p.truncation);
    return tag(prove_nonneg([&](const Interval& t) { return e.eta1(t); }, Interval(-0.5, 0.5), p),
               InequalityId::eta1, ctx.alpha, "t in [-1/2, 1/2]", kEta1Anchor);
}

Certificate certify_eta1_large(int alpha, const BnbPolicy& p) {
    require_alpha(alpha, 1000, "certify_eta1_large");
    const Interval a = A(alpha);
    const Interval eps = 10.0 * inv_pow2(alpha);
    const Interval d = decimal("1996");
    std::vector<std::function<Interval()>> consts = {
        // t in [0, 1/2], F(1+t) large: sum of 1/(n-t)^2 against the right side
        [=] {
            return 4.0 * a / 900.0 * (1.0 - 1.0 / (2.0 * a - 4.0)) * (1.0 - 1.0 / (a - 2.0)) -
                   (1.0 + 1.0 / (4.0 * d) + 500.0 / d + eps);
        },
        [=] { return 10.0 * ((1.0 - 1.0 / d) / decimal("2.1") - 1.0 / log(Interval(50.0))) - 1.0 - Interval::ratio(1, 4000) - eps; },
        [=] {
            return (1.0 - 1.0 / d) / decimal("1.25") - 1.0 / decimal("2.25") - 1.0 / (1000.0 * sqr(decimal("0.15"))) -
                   1.0 / (1000.0 * sqr(decimal("2.15"))) - eps;
        },
        // t in [-1/2, 0)
        [=] { return decimal("0.0052") * a - (4.0 + Interval::ratio(4, 9) / d + Interval::ratio(2, 3) * (1000.0 / d) + eps); },
        [=] {
            return decimal("0.48") * sqr(pi_interval()) / 3.0 -
                   (1.0 / decimal("0.81") + 4.0 / (9.0 * a) + (a / (2.0 * a - 4.0)) / decimal("1.9") + eps);
        },
    };
    std::vector<Certificate> parts;
    for (const auto& v : consts) parts.push_back(prove_constant(v, p));
    const Interval q = decimal("0.999");
    parts.push_back(prove_nonneg(
        [=](const Interval& t) {
            return q / sqr(1.0 + t) + q / sqr(1.0 - t) - 1.0 / sqr(1.0 + t) - 4.0 / (9.0 * a) -
                   (a / (2.0 * a - 4.0)) / (2.0 + t) - eps;
        },
        Interval(-0.5, decimal("-0.1").hi), p));
    return tag(merge(std::move(parts)), InequalityId::eta1, alpha,
               "constants for alpha >= 1000; t in [-1/2, -0.1] for the last case",
               "0.999/(1+t)^2 + 0.999/(1-t)^2 >= 1/(1+t)^2 + 4/(9 alpha) + (alpha/(2 alpha - 4))/(2+t) + 10/2^alpha, "
               "with the constant cases of the same argument");
}

Certificate certify_eta_ge2(const PotentialContext& ctx, const BnbPolicy& p) {
    require_alpha(ctx.alpha, 6, "certify_eta_ge2");
    if (ctx.alpha >= 16) {
        Certificate c = certify_allthestars_large(ctx.alpha, p);
        c.inequality_id = InequalityId::eta_ge2;
        c.domain = "x >= 1.5, closed bound for alpha >= 16";
        return c;
    }
    Expressions e(ctx, p.truncation);
    std::vector<Certificate> parts;
    for (long k = 2; k <= 10; ++k) {
        Interval cell(k - 0.5, k == 10 ? 10.0 : k + 0.5);
        parts.push_back(prove_nonneg([&e, k](const Interval& x) { return e.eta2(x, k); }, cell, p));
    }
    parts.push_back(prove_constant([&] { return e.allthestars(); }, p));
    return tag(merge(std::move(parts)), InequalityId::eta_ge2, ctx.alpha, "x in [1.5, 10]; constant for x >= 10",
               std::string(kEta2Anchor) + ", and for x >= 10: " + kStarsAnchor);
}

Certificate certify_allthestars(const PotentialContext& ctx, const BnbPolicy& p) {
    require_alpha(ctx.alpha, 6, "certify_allthestars");
    if (ctx.alpha >= 16) return certify_allthestars_large(ctx.alpha, p);
    Expressions e(ctx, p.truncation);
    return tag(prove_constant([&] { return e.allthestars(); }, p), InequalityId::allthestars_const, ctx.alpha,
               "x >= 10", kStarsAnchor);
}

Certificate certify_allthestars_large(int alpha, const BnbPolicy& p) {
    require_alpha(alpha, 16, "certify_allthestars_large");
    return tag(prove_constant([&] { return allthestars_large_value(alpha); }, p), InequalityId::allthestars_const,
               alpha, "x >= 1.5, closed bound for alpha >= 16",
               "the constant inequality for eta(x) >= 2 with the sums replaced by their bounds in alpha");
}

std::vector<Certificate> certify_all(int alpha, const BnbPolicy& p) {
    require_alpha(alpha, 4, "certify_all");
    if (alpha == 4) {
        PotentialContext ctx = alpha4_context();
        std::vector<Certificate> out = certify_psihat_nonneg(ctx, p);
        out.push_back(certify_psi4_le_F4(p));
        return out;
    }
    // the closed bounds need no enclosure of s_alpha
    std::optional<PotentialContext> ctx;
    if (alpha <= 1000) ctx = solve_s_alpha(alpha);
    std::vector<Certificate> out;
    if (alpha >= 12) {
        out.push_back(certify_T_large(alpha, p));
        out.push_back(certify_L_large(alpha, p));
        out.push_back(certify_eta0_large(alpha, p));
    } else {
        out.push_back(certify_T(*ctx, p));
        out.push_back(certify_L(*ctx, p));
        out.push_back(certify_eta0(*ctx, p));
    }
    out.push_back(ctx ? certify_eta1(*ctx, p) : certify_eta1_large(alpha, p));
    if (alpha >= 16) {
        Certificate c = certify_allthestars_large(alpha, p);
        c.inequality_id = InequalityId::eta_ge2;
        out.push_back(c);
    } else {
        out.push_back(certify_eta_ge2(*ctx, p));
    }
    return out;
}

}  // namespace repulse
