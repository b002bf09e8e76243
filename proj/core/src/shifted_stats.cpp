#include "splab/shifted_stats.hpp"

#include <cmath>
#include <stdexcept>

#include "splab/kahan.hpp"
#include "splab/powcmp.hpp"

namespace splab {

namespace {

// one pass over the factored stream, records visited in ascending p
template <class Fn>
void fold_records(std::uint64_t x, const Tuning& t, Fn&& fn) {
    for_each_shifted_block(SieveConfig(x, t), [&](const SieveBlock& b) {
        for (const auto& r : b.records) fn(r);
        return true;
    });
}

void require_alpha_range(const Rational& alpha) {
    if (rational_cmp(alpha, 1, 4) > 0)
        throw std::domain_error("alpha must lie in [0, 1/4]");
}

void require_c_range(const Rational& c) {
    if (rational_cmp(c, 1, 4) < 0 || rational_cmp(c, 1, 2) > 0)
        throw std::domain_error("c must lie in [1/4, 1/2]");
}

} // namespace

double von_mangoldt(std::uint64_t m) {
    if (m == 0)
        throw std::invalid_argument("von_mangoldt: argument must be >= 1");
    if (m == 1) return 0.0;
    std::uint64_t q = 0;
    if (m % 2 == 0) {
        q = 2;
    } else {
        for (std::uint64_t d = 3; d <= m / d; d += 2) {
            if (m % d == 0) {
                q = d;
                break;
            }
        }
        if (q == 0) return std::log(static_cast<double>(m)); // m itself is prime
    }
    while (m % q == 0) m /= q;
    return m == 1 ? std::log(static_cast<double>(q)) : 0.0;
}

DensityPoint count_large_shift_primes(std::uint64_t x, const Rational& alpha,
                                      const Tuning& t) {
    require_alpha_range(alpha);
    if (x < 2)
        throw std::domain_error("x must be >= 2");
    const Rational c = half_minus(alpha);
    DensityPoint d;
    d.x = x;
    fold_records(x, t, [&](const ShiftedFactorization& r) {
        ++d.pi_x;
        // P(p-1) >= p^(1/2-alpha), decided as P^den >= p^num exactly
        if (compare_pow(r.largest, static_cast<std::uint32_t>(c.den), r.p,
                        static_cast<std::uint32_t>(c.num)) >= 0)
            ++d.count;
    });
    const double lx = std::log(static_cast<double>(x));
    d.reference = (0.5 + alpha.value()) * static_cast<double>(x) / lx;
    d.ratio = static_cast<double>(d.count) * lx / static_cast<double>(x);
    d.ratio_to_pi = static_cast<double>(d.count) / static_cast<double>(d.pi_x);
    return d;
}

DensityPoint count_large_shift_primes_fixed(std::uint64_t x, const Rational& c,
                                            const Tuning& t) {
    require_c_range(c);
    if (x < 2)
        throw std::domain_error("x must be >= 2");
    DensityPoint d;
    d.x = x;
    fold_records(x, t, [&](const ShiftedFactorization& r) {
        ++d.pi_x;
        if (compare_pow(r.largest, static_cast<std::uint32_t>(c.den), x,
                        static_cast<std::uint32_t>(c.num)) >= 0)
            ++d.count;
    });
    const double lx = std::log(static_cast<double>(x));
    d.reference = (1.0 - c.value()) * static_cast<double>(x) / lx;
    d.ratio = static_cast<double>(d.count) * lx / static_cast<double>(x);
    d.ratio_to_pi = static_cast<double>(d.count) / static_cast<double>(d.pi_x);
    return d;
}

SumRecord large_factor_log_sum(std::uint64_t x, const Rational& c, const Tuning& t) {
    if (c.num == 0 || rational_cmp(c, 1, 2) > 0)
        throw std::domain_error("c must lie in (0, 1/2]");
    if (x < 2)
        throw std::domain_error("x must be >= 2");
    SumRecord rec;
    rec.kind = SumKind::m_sum;
    rec.x = x;
    rec.c = c;
    KahanSum sum;
    fold_records(x, t, [&](const ShiftedFactorization& r) {
        for (const auto& f : r.shifted_factors) {
            // prime divisor l of p-1 with l >= x^c, exact comparison
            if (compare_pow(f.prime, static_cast<std::uint32_t>(c.den), x,
                            static_cast<std::uint32_t>(c.num)) >= 0) {
                sum.add(std::log(static_cast<double>(f.prime)));
                ++rec.terms;
            }
        }
    });
    rec.value = sum.value();
    return rec;
}

SumRecord mangoldt_progression_sum(std::uint64_t x, double u, double v,
                                   const Tuning& t) {
    if (!(u >= 1.0))
        throw std::domain_error("u must be >= 1");
    if (!(u < v))
        throw std::domain_error("empty range: u must be < v");
    if (!(v <= static_cast<double>(x)))
        throw std::domain_error("v must be <= x");
    SumRecord rec;
    rec.kind = SumKind::l_sum;
    rec.x = x;
    rec.u = u;
    rec.v = v;
    KahanSum sum;
    fold_records(x, t, [&](const ShiftedFactorization& r) {
        for (const auto& f : r.shifted_factors) {
            const double logq = std::log(static_cast<double>(f.prime));
            std::uint64_t m = f.prime;
            for (std::uint32_t j = 1; j <= f.exponent; ++j, m *= f.prime) {
                const double md = static_cast<double>(m);
                if (md > u && md <= v) {
                    sum.add(logq);
                    ++rec.terms;
                }
            }
        }
    });
    rec.value = sum.value();
    return rec;
}

SumDecomposition progression_sum_decomposition(std::uint64_t x, const Rational& c,
                                               double B, const Tuning& t) {
    if (x < 3)
        throw std::domain_error("x must be >= 3");
    if (c.num == 0 || c.num >= c.den)
        throw std::domain_error("c must lie in (0, 1)");
    if (!(B >= 0))
        throw std::domain_error("B must be >= 0");
    const double xd = static_cast<double>(x);
    const double cut_high = std::pow(xd, c.value());
    const double cut_low = cut_high / std::pow(std::log(xd), B);
    if (!(1.0 < cut_low && cut_low <= cut_high && cut_high < xd))
        throw std::domain_error("degenerate cut ordering: need 1 < x^c/(log x)^B <= x^c < x");

    SumDecomposition d;
    d.cut_low = cut_low;
    d.cut_high = cut_high;
    KahanSum lo, mid, hi;
    fold_records(x, t, [&](const ShiftedFactorization& r) {
        for (const auto& f : r.shifted_factors) {
            const double logq = std::log(static_cast<double>(f.prime));
            std::uint64_t m = f.prime;
            for (std::uint32_t j = 1; j <= f.exponent; ++j, m *= f.prime) {
                const double md = static_cast<double>(m);
                if (md <= cut_low) {
                    lo.add(logq);
                    ++d.low.terms;
                } else if (md <= cut_high) {
                    mid.add(logq);
                    ++d.mid.terms;
                } else {
                    hi.add(logq);
                    ++d.high.terms;
                }
            }
        }
    });
    auto fill = [&](SumRecord& rec, const KahanSum& s, double lo_cut, double hi_cut) {
        rec.kind = SumKind::l_sum;
        rec.x = x;
        rec.u = lo_cut;
        rec.v = hi_cut;
        rec.value = s.value();
    };
    fill(d.low, lo, 1.0, cut_low);
    fill(d.mid, mid, cut_low, cut_high);
    fill(d.high, hi, cut_high, xd);
    d.total = d.low.value + d.mid.value + d.high.value;
    return d;
}

double min_density_ratio(std::span<const DensityPoint> points) {
    if (points.empty())
        throw std::invalid_argument("min_density_ratio: empty series");
    double best = points.front().ratio_to_pi;
    for (const auto& p : points)
        if (p.ratio_to_pi < best) best = p.ratio_to_pi;
    return best;
}

} // namespace splab
