#pragma once
// Rigorous enclosures of tails of power-law series.

#include <optional>

#include "repulse/interval.hpp"

namespace repulse {

// sum_{n > N} n^{-s}, s >= 2
Interval zeta_tail(unsigned s, long N);

// sum_{n >= k} n^{-beta} <= k^{-beta} (beta + k - 1)/(beta - 1)
Interval power_sum_bound(unsigned beta, long k);

// sum_{n > N} sum_{r >= 1} (-1)^{r+1} (a r + b) q^r n^{-(r alpha + e)}
// Empty when the inner series is not alternating with decreasing terms for every n > N.
std::optional<Interval> alternating_power_tail(const Interval& q, unsigned alpha, int e, long N, double a,
                                               double b);

// With F(n) = 1/(1 + S n^alpha):
// sum_{n > N} n^k F(n)
Interval tail_F(const Interval& S, unsigned alpha, int k, long N);
// sum_{n > N} n^k F'(n)   (non-positive)
Interval tail_dF(const Interval& S, unsigned alpha, int k, long N);

}  // namespace repulse
