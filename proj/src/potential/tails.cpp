#include "repulse/tails.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace repulse {

namespace {

// (s)_m = s (s+1) ... (s+m-1)
Interval rising(unsigned s, unsigned m) {
    Interval r = 1.0;
    for (unsigned i = 0; i < m; ++i) r *= Interval(static_cast<double>(s + i));
    return r;
}

Interval inv_pow(long n, unsigned s) { return 1.0 / pow_int(Interval(static_cast<double>(n)), s); }

// sum_{n >= a} n^{-s}
Interval em_tail(unsigned s, long a);

}  // namespace

Interval zeta_tail(unsigned s, long N) {
    if (s < 2) throw DomainError("zeta_tail needs s >= 2");
    if (N < 0) throw DomainError("zeta_tail needs N >= 0");
    thread_local std::map<std::pair<unsigned, long>, Interval> cache;
    auto key = std::make_pair(s, N);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    // explicit terms until Euler-Maclaurin is accurate
    const long a = std::max<long>(N + 1, std::min<long>(3L * s + 20, N + 401));
    Interval head = 0.0;
    for (long n = a - 1; n > N; --n) head += inv_pow(n, s);
    Interval r = head + em_tail(s, a);
    r = Interval(std::max(r.lo, 0.0), r.hi);
    cache.emplace(key, r);
    return r;
}

namespace {

Interval em_tail(unsigned s, long a) {
    const Interval A(static_cast<double>(a));
    const Interval base = inv_pow(a, s);  // a^{-s}

    // Euler-Maclaurin at a with Bernoulli terms B2..B8; remainder bounded by
    // 2|B10|/10! |f^(9)(a)|, valid because every derivative of x^{-s} has one sign.
    static const Interval B[5] = {Interval::ratio(1, 6), Interval::ratio(-1, 30), Interval::ratio(1, 42),
                                  Interval::ratio(-1, 30), Interval::ratio(5, 66)};
    Interval sum = base * A / Interval(static_cast<double>(s - 1)) + base / 2.0;
    Interval fact = 1.0;  // (2k)!
    Interval apow = 1.0;  // a^{-(2k-1)}
    for (int k = 1; k <= 5; ++k) {
        fact *= Interval(static_cast<double>((2 * k - 1) * (2 * k)));
        apow = k == 1 ? 1.0 / A : apow / sqr(A);
        Interval term = B[k - 1] / fact * rising(s, 2 * k - 1) * base * apow;
        if (k < 5) {
            sum += term;
        } else {
            double m = 2.0 * abs(term).hi;
            sum += Interval(-m, m);
        }
    }
    return sum;
}

}  // namespace

Interval power_sum_bound(unsigned beta, long k) {
    if (beta < 2 || k < 1) throw DomainError("power_sum_bound needs beta >= 2, k >= 1");
    Interval r = inv_pow(k, beta) * Interval(static_cast<double>(beta + k - 1)) / Interval(static_cast<double>(beta - 1));
    return {0.0, r.hi};
}

std::optional<Interval> alternating_power_tail(const Interval& q, unsigned alpha, int e, long N, double a, double b) {
    if (static_cast<int>(alpha) + e < 2) throw DomainError("tail exponent must exceed 1");
    if (q.lo < 0.0 || a < 0.0 || a + b <= 0.0) throw DomainError("bad alternating tail coefficients");
    // the per-n ratio of consecutive terms is largest at r = 1 and n = N + 1
    Interval ratio = Interval(2 * a + b) / Interval(a + b) * q * inv_pow(N + 1, alpha);
    if (!(ratio.hi < 1.0)) return std::nullopt;

    Interval sum = 0.0;
    Interval qr = 1.0;
    Interval first;
    for (int r = 1; r <= 200; ++r) {
        qr *= q;
        const unsigned s = static_cast<unsigned>(static_cast<int>(r * alpha) + e);
        Interval term = Interval(a * r + b) * qr * zeta_tail(s, N);
        if (r == 1) first = term;
        bool last = term.hi <= 1e-34 * first.lo || term.hi == 0.0 || r == 200;
        if (last) {
            // alternating remainder: sign of this (omitted) term, magnitude at most its own
            Interval rem = r % 2 == 1 ? Interval(0.0, term.hi) : Interval(-term.hi, 0.0);
            return sum + rem;
        }
        sum += r % 2 == 1 ? term : -term;
    }
    return sum;
}


Interval tail_F(const Interval& S, unsigned alpha, int k, long N) {
    Interval q = 1.0 / S;
    auto t = alternating_power_tail(q, alpha, -k, N, 0.0, 1.0);
    // crude: F(n) <= n^{-alpha}/S
    Interval crude = Interval(0.0, (q * power_sum_bound(alpha - k, N + 1)).hi);
    return t ? intersect(*t, crude) : crude;
}

Interval tail_dF(const Interval& S, unsigned alpha, int k, long N) {
    Interval q = 1.0 / S;
    const Interval A(static_cast<double>(alpha));
    auto t = alternating_power_tail(q, alpha, 1 - k, N, 1.0, 0.0);
    // crude: |F'(n)| <= alpha n^{-alpha-1}/S
    Interval crude = Interval(-(A * q * power_sum_bound(alpha + 1 - k, N + 1)).hi, 0.0);
    return t ? intersect(-A * *t, crude) : crude;
}

}  // namespace repulse
