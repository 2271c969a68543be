#pragma once
// The band-limited interpolant psi of F and its Fourier transform.

#include <vector>

#include "repulse/potential.hpp"

namespace repulse {

struct AuxCoefficients {
    PotentialContext ctx;
    long N = 0;
    std::vector<Interval> Fn;   // F(n), n = 0..N
    std::vector<Interval> dFn;  // F'(n), n = 0..N (entry 0 is exactly 0)
    Interval tail_F;            // sum_{n>N} F(n)
    Interval tail_dF;           // sum_{n>N} F'(n)

    // sum_{n>N} n^k F(n) and n^k F'(n) for the weighted sums below
    Interval tail_nF;
    Interval tail_n2F;
    Interval tail_ndF;
    Interval tail_n3dF;
};

AuxCoefficients make_aux(const PotentialContext& ctx, long N = 256);

// sum_n F(n) sinc(pi(x-n))^2 + sum_n n F'(n) sinc(pi(x-n)) sinc(pi(x+n))
Interval psi(const AuxCoefficients& c, const Interval& x);

// (1-|xi|) sum_n F(n) cos(2 pi n xi) - (1/2pi) sum_n F'(n) sin(2 pi n |xi|) on |xi| < 1, zero outside
Interval psi_hat(const AuxCoefficients& c, const Interval& xi);

// psi_hat(1-t)/(pi^2 t^3) for t in [0, 1/2], finite at t = 0
Interval psi_hat_near_one(const AuxCoefficients& c, const Interval& t);

// Trapezoid quadrature of psi over [-N-1, N+1] minus sum_n F(n).
// Floating point only: the quadrature error is not enclosed.
Interval poisson_check(const AuxCoefficients& c, long points = 100000);

// C with |psi(x)| (1 + x^2) <= C.hi for all real x
Interval decay_constant(const AuxCoefficients& c);

// sum_{n in Z} F(n)
Interval lattice_sum_F(const AuxCoefficients& c);

}  // namespace repulse
