#pragma once

#include <cstdint>
#include <span>

#include "splab/rational.hpp"
#include "splab/sieve.hpp"

namespace splab {

// One point of a density series: how many primes p <= x clear a largest-
// prime-factor threshold on p - 1, next to the x/log x reference line.
struct DensityPoint {
    std::uint64_t x = 0;
    std::uint64_t count = 0;
    std::uint64_t pi_x = 0;
    double reference = 0; // bound-line main term, see the producing operation
    double ratio = 0;     // count * log x / x
    double ratio_to_pi = 0;
};

enum class SumKind { m_sum, l_sum, lk_sum };

struct SumRecord {
    SumKind kind = SumKind::m_sum;
    std::uint64_t x = 0;
    double value = 0;
    std::uint64_t terms = 0; // number of nonzero summands
    // parameters of the particular sum; only the relevant ones are set
    Rational c{};
    double u = 0, v = 0;
    unsigned k = 0;
};

// log q when m = q^e for a prime q, else 0. Throws on m = 0.
double von_mangoldt(std::uint64_t m);

// Count of primes p <= x with P(p-1) >= p^(1/2 - alpha), alpha in [0, 1/4].
// The comparison is exact: with 1/2 - alpha = u/v in lowest terms it tests
// P(p-1)^v >= p^u in integer arithmetic. reference = (1/2 + alpha) x / log x.
DensityPoint count_large_shift_primes(std::uint64_t x, const Rational& alpha,
                                      const Tuning& t = {});

// Same count with the threshold taken in x: P(p-1) >= x^c, c in [1/4, 1/2].
// reference = (1 - c) x / log x, the main term of the associated log sum
// divided by log x.
DensityPoint count_large_shift_primes_fixed(std::uint64_t x, const Rational& c,
                                            const Tuning& t = {});

// Sum of log l over primes p <= x and prime divisors l of p - 1 with
// l >= x^c (exact comparison), c in (0, 1/2].
SumRecord large_factor_log_sum(std::uint64_t x, const Rational& c, const Tuning& t = {});

// Sum of Lambda(m) * pi(x; m, 1) over u < m <= v, computed by the swapped
// order: every prime-power divisor m of p - 1 in (u, v] contributes log q
// for each prime p <= x. Requires 1 <= u < v <= x.
SumRecord mangoldt_progression_sum(std::uint64_t x, double u, double v,
                                   const Tuning& t = {});

// Split of the full sum over (1, x] at the cut points x^c/(log x)^B and x^c.
// The three parts are computed from the same summands in one pass, so their
// total reproduces the full sum up to the accumulator's epsilon.
struct SumDecomposition {
    SumRecord low, mid, high;
    double total = 0;
    double cut_low = 0;  // x^c / (log x)^B
    double cut_high = 0; // x^c
};

SumDecomposition progression_sum_decomposition(std::uint64_t x, const Rational& c,
                                               double B, const Tuning& t = {});

// Finite-sample floor of count/pi(x) over a density series. A proxy only:
// the underlying quantity is a liminf and no finite grid determines it.
double min_density_ratio(std::span<const DensityPoint> points);

} // namespace splab
