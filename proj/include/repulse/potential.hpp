#pragma once

#include <stdexcept>
#include <utility>

#include "repulse/interval.hpp"

namespace repulse {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// alpha with a certified enclosure of s_alpha and quantities derived from it
struct PotentialContext {
    int alpha = 0;
    Interval s_alpha;
    Interval s_pow_alpha;  // S = s_alpha^alpha
    Interval F1;           // F(1)
    Interval dF1;          // F'(1)
};

PotentialContext make_context(int alpha, const Interval& s_alpha);
// alpha = 4 with s = sqrt 2 and S = 4 exactly
PotentialContext alpha4_context();

struct LatticeEnergyTerms {
    long truncation_N = 0;
    Interval head;  // sum over |n| <= N
    Interval tail;  // encloses the remainder over |n| > N
    Interval total() const { return head + tail; }
};

void require_even_alpha(int alpha);

// 1/(1+x^alpha)
Interval f_alpha(int alpha, const Interval& x);
// f'(x) = -alpha x^{alpha-1}/(1+x^alpha)^2
Interval f_alpha_prime(int alpha, const Interval& x);

// F(x) = 1/(1 + S x^alpha)
Interval F_alpha(const PotentialContext& ctx, const Interval& x);
// -alpha F (1-F)/x; refuses ranges containing 0
Interval F_alpha_prime(const PotentialContext& ctx, const Interval& x);
// alpha F (1-F)/x^2 (alpha(1-2F)+1); refuses ranges containing 0
Interval F_alpha_second(const PotentialContext& ctx, const Interval& x);

// singularity-free equivalents, valid everywhere
Interval F_alpha_prime_sf(const PotentialContext& ctx, const Interval& x);   // -alpha S x^{alpha-1} F^2
Interval F_alpha_second_sf(const PotentialContext& ctx, const Interval& x);  // alpha S x^{alpha-2} F^2 (alpha+1-2 alpha F)
Interval F_minus_one_over_x2(const PotentialContext& ctx, const Interval& x);  // -S x^{alpha-2} F

// sum_{n in Z} t f(tn)
LatticeEnergyTerms lattice_energy(int alpha, const Interval& t, long N = 64);
// alpha = 4 closed form of the same sum
Interval closed_form_energy_alpha4(const Interval& t);
// d/dt of the lattice energy
Interval energy_derivative(int alpha, const Interval& t, long N = 64);
// second derivative, used to rule out a second sign change
Interval energy_second_derivative(int alpha, const Interval& t, long N = 64);

struct SolveOptions {
    double tol = 1e-12;
    long N = 64;
    int scan_cells = 1024;
};

PotentialContext solve_s_alpha(int alpha, const SolveOptions& opt = {});
inline PotentialContext solve_s_alpha(int alpha, double tol) {
    SolveOptions o;
    o.tol = tol;
    return solve_s_alpha(alpha, o);
}

// (alpha - 2 + sqrt((alpha-2)^2 - 3), rigorous bound on the correction term)
std::pair<Interval, Interval> asymptotic_s_pow_alpha(int alpha);

// sum_{n in Z} (F(n) + n F'(n))
Interval first_order_residual(const PotentialContext& ctx, long N = 128);

}  // namespace repulse
