#pragma once
// Containment fuzzing and inclusion-monotonicity checks for the interval kernel.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "oracle/oracle.hpp"
#include "repulse/interval.hpp"

namespace fuzz {

using repulse::Interval;
using oracle::q128;

struct Report {
    std::uint64_t cases = 0;
    std::map<std::string, std::uint64_t> violations;
    std::uint64_t total_violations() const {
        std::uint64_t s = 0;
        for (auto& [k, v] : violations) s += v;
        return s;
    }
};

inline bool holds(const Interval& r, q128 v) { return (q128)r.lo <= v && v <= (q128)r.hi; }

// random double with random sign and binary exponent in [emin, emax]
inline double draw(std::mt19937_64& g, int emin, int emax, bool allow_neg = true) {
    std::uniform_real_distribution<double> m(1.0, 2.0);
    std::uniform_int_distribution<int> e(emin, emax);
    double x = std::ldexp(m(g), e(g));
    if (allow_neg && (g() & 1u)) x = -x;
    return x;
}

inline double uniform(std::mt19937_64& g, double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(g);
}

struct UnaryCase {
    const char* name;
    std::function<double(std::mt19937_64&)> gen;
    std::function<Interval(const Interval&)> op;
    std::function<q128(q128)> ref;
};

inline std::vector<UnaryCase> unary_cases() {
    using namespace repulse;
    return {
        {"sqrt", [](auto& g) { return std::fabs(draw(g, -40, 40)); }, [](auto& a) { return sqrt(a); },
         [](q128 x) { return sqrtq(x); }},
        {"exp", [](auto& g) { return (g() & 1u) ? uniform(g, -700, 700) : uniform(g, -2, 2); },
         [](auto& a) { return exp(a); }, [](q128 x) { return expq(x); }},
        {"log", [](auto& g) { return std::fabs(draw(g, -60, 60)); }, [](auto& a) { return log(a); },
         [](q128 x) { return logq(x); }},
        {"sin", [](auto& g) { return (g() & 1u) ? uniform(g, -2000, 2000) : uniform(g, -4, 4); },
         [](auto& a) { return sin(a); }, [](q128 x) { return sinq(x); }},
        {"cos", [](auto& g) { return (g() & 1u) ? uniform(g, -2000, 2000) : uniform(g, -4, 4); },
         [](auto& a) { return cos(a); }, [](q128 x) { return cosq(x); }},
        {"sinc", [](auto& g) { return (g() & 1u) ? uniform(g, -60, 60) : uniform(g, -1, 1); },
         [](auto& a) { return sinc(a); }, [](q128 x) { return oracle::sinc(x); }},
        {"remainder_R", [](auto& g) { return (g() & 1u) ? uniform(g, -60, 60) : uniform(g, -1, 1); },
         [](auto& a) { return remainder_R(a); }, [](q128 x) { return oracle::rem_R(x); }},
        {"s3_kernel", [](auto& g) { return (g() & 1u) ? uniform(g, -60, 60) : uniform(g, -1, 1); },
         [](auto& a) { return s3_kernel(a); }, [](q128 x) { return oracle::s3(x); }},
    };
}

struct BinaryCase {
    const char* name;
    std::function<Interval(const Interval&, const Interval&)> op;
    std::function<q128(q128, q128)> ref;
};

inline std::vector<BinaryCase> binary_cases() {
    return {
        {"add", [](auto& a, auto& b) { return a + b; }, [](q128 x, q128 y) { return x + y; }},
        {"sub", [](auto& a, auto& b) { return a - b; }, [](q128 x, q128 y) { return x - y; }},
        {"mul", [](auto& a, auto& b) { return a * b; }, [](q128 x, q128 y) { return x * y; }},
        {"div", [](auto& a, auto& b) { return a / b; }, [](q128 x, q128 y) { return x / y; }},
    };
}

// `cases` draws, spread round-robin over every operation
inline Report containment(std::uint64_t cases, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    Report rep;
    auto un = unary_cases();
    auto bin = binary_cases();
    const std::uint64_t nops = un.size() + bin.size() + 1;
    for (std::uint64_t i = 0; i < cases; ++i) {
        std::uint64_t k = i % nops;
        bool ok = true;
        const char* name = nullptr;
        if (k < bin.size()) {
            auto& c = bin[k];
            name = c.name;
            double x = draw(g, -30, 30), y = draw(g, -30, 30);
            ok = holds(c.op(Interval(x), Interval(y)), c.ref(x, y));
        } else if (k < bin.size() + un.size()) {
            auto& c = un[k - bin.size()];
            name = c.name;
            double x = c.gen(g);
            ok = holds(c.op(Interval(x)), c.ref(x));
        } else {
            name = "pow_int";
            double x = uniform(g, -3, 3);
            unsigned p = static_cast<unsigned>(g() % 13);
            ok = holds(repulse::pow_int(Interval(x), p), powq((q128)x, (int)p));
        }
        ++rep.cases;
        if (!ok) ++rep.violations[name];
    }
    return rep;
}

// a random interval around x and a random sub-interval of it
inline std::pair<Interval, Interval> nested(std::mt19937_64& g, double lo, double hi) {
    double a = uniform(g, lo, hi), b = uniform(g, lo, hi);
    if (a > b) std::swap(a, b);
    double c = uniform(g, a, b), d = uniform(g, a, b);
    if (c > d) std::swap(c, d);
    return {Interval(a, b), Interval(c, d)};
}

// number of failures of op(inner) ⊆ op(outer)
inline std::uint64_t inclusion_monotonicity(std::uint64_t cases, std::uint64_t seed) {
    using namespace repulse;
    std::mt19937_64 g(seed);
    std::uint64_t bad = 0;
    auto un = unary_cases();
    auto bin = binary_cases();
    for (std::uint64_t i = 0; i < cases; ++i) {
        for (auto& c : bin) {
            auto [A, a] = nested(g, -8, 8);
            auto [B, b] = nested(g, 0.5, 8);
            if (!subset(c.op(a, b), c.op(A, B))) ++bad;
        }
        for (auto& c : un) {
            std::string n = c.name;
            double lo = (n == "sqrt" || n == "log") ? 0.01 : -30, hi = 30;
            auto [A, a] = nested(g, lo, hi);
            if (!subset(c.op(a), c.op(A))) ++bad;
        }
        auto [A, a] = nested(g, -3, 3);
        unsigned p = static_cast<unsigned>(g() % 9);
        if (!subset(pow_int(a, p), pow_int(A, p))) ++bad;
    }
    return bad;
}

}  // namespace fuzz
