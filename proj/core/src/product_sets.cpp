#include "splab/product_sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "parallel.hpp"
#include "splab/errors.hpp"
#include "splab/kahan.hpp"
#include "splab/powcmp.hpp"

namespace splab {

namespace {

std::uint64_t default_ceiling(unsigned k) {
    return k <= 2 ? 10'000'000ull : 1'000'000ull;
}

// x / 2^(k-1) without shift overflow for absurd k
std::uint64_t shifted_pool_max(std::uint64_t x, unsigned k) {
    return k - 1 >= 64 ? 0 : x >> (k - 1);
}

void check_guard(std::uint64_t x, unsigned k, const std::optional<std::uint64_t>& ceiling) {
    std::uint64_t cap = ceiling.value_or(default_ceiling(k));
    if (x > cap)
        throw CostGuardError("x=" + std::to_string(x) + " exceeds the enumeration ceiling " +
                             std::to_string(cap) + " for k=" + std::to_string(k) +
                             "; override with --max-x <N> --i-accept-long-run");
}

void check_exponent_window(const Rational& a, unsigned k, bool allow_any) {
    if (allow_any) return;
    if (rational_cmp(a, 1, 2ull * k) < 0 || rational_cmp(a, 17, 32ull * k) >= 0)
        throw std::domain_error("a=" + a.str() + " is outside [1/(2k), 17/(32k)) for k=" +
                                std::to_string(k) + "; pass --unsafe-exponent to explore anyway");
}

// Ascending tuple walk over a pool of primes with a product cutoff.
// leaf(primes, n, g) is called for every complete tuple; returning false
// stops the whole walk. g is gcd(p - 1) over the chosen primes.
template <class Leaf>
bool walk_tuples(const std::vector<std::uint64_t>& pool, std::size_t start,
                 unsigned remaining, std::uint64_t prod, std::uint64_t g,
                 std::uint64_t bound, bool distinct,
                 std::vector<std::uint64_t>& scratch, Leaf&& leaf) {
    if (remaining == 0) return leaf(scratch, prod, g);
    for (std::size_t j = start; j < pool.size(); ++j) {
        const std::uint64_t p = pool[j];
        if (p > bound / prod) break;
        scratch.push_back(p);
        bool go = walk_tuples(pool, distinct ? j + 1 : j, remaining - 1, prod * p,
                              std::gcd(g, p - 1), bound, distinct, scratch, leaf);
        scratch.pop_back();
        if (!go) return false;
    }
    return true;
}

struct PartitionResult {
    std::uint64_t count = 0;
    std::vector<TupleRecord> records;
};

TupleRecord make_record(const std::vector<std::uint64_t>& primes, std::uint64_t n,
                        std::uint64_t g, std::uint64_t largest, bool member) {
    TupleRecord r;
    r.primes = primes;
    r.n = n;
    r.g = g;
    r.largest_of_g = largest;
    r.member = member;
    return r;
}

} // namespace

TupleRecord classify_tuple(std::span<const std::uint64_t> primes, const Rational& a) {
    if (primes.empty())
        throw std::invalid_argument("classify_tuple: empty tuple");
    unsigned __int128 prod = 1;
    for (std::uint64_t p : primes) {
        if (!is_prime_u64(p))
            throw std::invalid_argument("classify_tuple: " + std::to_string(p) +
                                        " is not prime");
        prod *= p;
        if (prod > std::numeric_limits<std::uint64_t>::max())
            throw std::domain_error("classify_tuple: product exceeds 64 bits");
    }
    TupleRecord r;
    r.primes.assign(primes.begin(), primes.end());
    std::sort(r.primes.begin(), r.primes.end());
    r.n = static_cast<std::uint64_t>(prod);
    r.g = 0;
    for (std::uint64_t p : r.primes) r.g = std::gcd(r.g, p - 1);
    r.largest_of_g = largest_prime_factor(r.g);
    r.member = compare_pow(r.largest_of_g, static_cast<std::uint32_t>(a.den), r.n,
                           static_cast<std::uint32_t>(a.num)) > 0;
    return r;
}

EnumResult brute_enumerate(std::uint64_t x, unsigned k, const Rational& a,
                           const EnumOptions& opt) {
    if (k < 1)
        throw std::domain_error("k must be >= 1");
    check_exponent_window(a, k, opt.allow_any_exponent);
    check_guard(x, k, opt.guard_ceiling);
    EnumResult result;
    if (x < 2) return result;

    if (k == 1) {
        // single primes: member iff P(p-1) > p^a, read off the factor scan
        for_each_shifted_block(SieveConfig(x, opt.tuning), [&](const SieveBlock& blk) {
            for (const auto& rec : blk.records) {
                if (compare_pow(rec.largest, static_cast<std::uint32_t>(a.den), rec.p,
                                static_cast<std::uint32_t>(a.num)) > 0) {
                    ++result.count;
                    if (opt.keep_records)
                        result.records.push_back(make_record({rec.p}, rec.p, rec.p - 1,
                                                             rec.largest, true));
                }
            }
            return true;
        });
        return result;
    }

    const std::uint64_t first_max = iroot(x, k);           // p1^k <= n <= x
    const std::uint64_t pool_max = shifted_pool_max(x, k); // every other factor is >= 2
    if (first_max < 2 || pool_max < 2) return result;
    const std::vector<std::uint64_t> pool =
        enumerate_primes(SieveConfig(pool_max, opt.tuning));
    const std::vector<std::uint32_t> lpf =
        largest_factor_table(static_cast<std::uint32_t>(first_max));
    const bool distinct = opt.mode == EnumMode::distinct;

    std::size_t first_end = static_cast<std::size_t>(
        std::upper_bound(pool.begin(), pool.end(), first_max) - pool.begin());

    // partitioned by the smallest prime; partitions are independent and
    // merged in index order
    auto task = [&](std::size_t i) {
        PartitionResult part;
        const std::uint64_t p1 = pool[i];
        // membership needs P(g)^den > n^num with P(g) <= p1 - 1, so the
        // product can be capped at the largest n with n^num < (p1-1)^den
        std::uint64_t bound = x;
        if (a.num >= 1)
            bound = std::min(bound, max_base_below_pow(p1 - 1,
                                                       static_cast<std::uint32_t>(a.den),
                                                       static_cast<std::uint32_t>(a.num), x));
        if (p1 > bound) return part;
        std::vector<std::uint64_t> scratch{p1};
        walk_tuples(pool, distinct ? i + 1 : i, k - 1, p1, p1 - 1, bound, distinct,
                    scratch,
                    [&](const std::vector<std::uint64_t>& primes, std::uint64_t n,
                        std::uint64_t g) {
                        const std::uint64_t pg = lpf[g];
                        if (compare_pow(pg, static_cast<std::uint32_t>(a.den), n,
                                        static_cast<std::uint32_t>(a.num)) > 0) {
                            ++part.count;
                            if (opt.keep_records)
                                part.records.push_back(make_record(primes, n, g, pg, true));
                        }
                        return true;
                    });
        return part;
    };

    auto parts = detail::ordered_parallel_map<PartitionResult>(first_end,
                                                               opt.tuning.workers, task);
    for (auto& part : parts) {
        result.count += part.count;
        if (opt.keep_records)
            result.records.insert(result.records.end(),
                                  std::make_move_iterator(part.records.begin()),
                                  std::make_move_iterator(part.records.end()));
    }
    return result;
}

EnumResult progression_enumerate(std::uint64_t x, unsigned k, const Rational& a,
                                 const EnumOptions& opt) {
    if (k < 2)
        throw std::domain_error("progression enumeration needs k >= 2");
    if (a.num == 0)
        throw std::domain_error("progression enumeration needs a > 0");
    check_exponent_window(a, k, opt.allow_any_exponent);
    check_guard(x, k, opt.guard_ceiling);
    EnumResult result;
    const std::uint64_t r_max = iroot(x, k); // r = P(g) <= p1 - 1 < x^(1/k)
    if (r_max < 2) return result;

    const std::vector<std::uint64_t> candidates =
        enumerate_primes(SieveConfig(r_max, opt.tuning));

    // For each candidate r the accepted products satisfy n^num < r^den, so
    // the enumeration bound is min(x, that cap); pool elements never exceed
    // bound / (r+1)^(k-1) because every tuple element is >= r + 1.
    struct Candidate {
        std::uint64_t r = 0;
        std::uint64_t bound = 0;
        std::uint64_t pool_max = 0;
    };
    std::vector<Candidate> cands;
    cands.reserve(candidates.size());
    std::uint64_t global_pool_max = 0;
    for (std::uint64_t r : candidates) {
        Candidate c;
        c.r = r;
        c.bound = std::min(x, max_base_below_pow(r, static_cast<std::uint32_t>(a.den),
                                                 static_cast<std::uint32_t>(a.num), x));
        std::uint64_t denom = ipow_saturating(r + 1, k - 1);
        c.pool_max = denom > c.bound ? 0 : c.bound / denom;
        if (c.pool_max <= r) continue; // pool would be empty
        global_pool_max = std::max(global_pool_max, c.pool_max);
        cands.push_back(c);
    }
    if (cands.empty() || global_pool_max < 2) return result;

    const std::vector<std::uint64_t> primes =
        enumerate_primes(SieveConfig(global_pool_max, opt.tuning));
    const std::vector<std::uint32_t> lpf =
        largest_factor_table(static_cast<std::uint32_t>(r_max));
    const bool distinct = opt.mode == EnumMode::distinct;

    auto task = [&](std::size_t ci) {
        PartitionResult part;
        const Candidate& c = cands[ci];
        std::vector<std::uint64_t> pool;
        auto end = std::upper_bound(primes.begin(), primes.end(), c.pool_max);
        for (auto it = primes.begin(); it != end; ++it)
            if (*it % c.r == 1) pool.push_back(*it);
        if (pool.empty() || (distinct && pool.size() < k)) return part;

        // first element is capped so that g | p1 - 1 stays inside the lpf table
        const std::uint64_t first_max = iroot(c.bound, k);
        std::vector<std::uint64_t> scratch;
        for (std::size_t i = 0; i < pool.size() && pool[i] <= first_max; ++i) {
            const std::uint64_t p1 = pool[i];
            scratch.assign(1, p1);
            walk_tuples(pool, distinct ? i + 1 : i, k - 1, p1, p1 - 1, c.bound,
                        distinct, scratch,
                        [&](const std::vector<std::uint64_t>& primes_sel,
                            std::uint64_t n, std::uint64_t g) {
                            // counted under exactly one r: the tuple belongs to
                            // this candidate only when r = P(g)
                            if (lpf[g] == c.r) {
                                ++part.count;
                                if (opt.keep_records)
                                    part.records.push_back(
                                        make_record(primes_sel, n, g, c.r, true));
                            }
                            return true;
                        });
        }
        return part;
    };

    auto parts = detail::ordered_parallel_map<PartitionResult>(cands.size(),
                                                               opt.tuning.workers, task);
    for (auto& part : parts) {
        result.count += part.count;
        if (opt.keep_records)
            result.records.insert(result.records.end(),
                                  std::make_move_iterator(part.records.begin()),
                                  std::make_move_iterator(part.records.end()));
    }
    return result;
}

std::vector<TupleRecord> construct_member_family(const ConstructionSpec& spec,
                                                 std::size_t max_tuples,
                                                 const Tuning& t) {
    if (spec.k < 2)
        throw std::domain_error("construction needs k >= 2");
    if (spec.r < 3 || !is_prime_u64(spec.r))
        throw std::domain_error("construction needs a prime r >= 3");
    if (spec.x < 2)
        throw std::domain_error("construction needs x >= 2");
    if (max_tuples == 0)
        throw std::domain_error("max_tuples must be >= 1");

    std::vector<TupleRecord> out;
    const std::uint64_t denom = ipow_saturating(spec.r + 1, spec.k - 1);
    if (denom > spec.x) return out;
    const std::uint64_t pool_max = spec.x / denom;
    if (pool_max < 2) return out;
    const std::vector<std::uint64_t> pool =
        primes_in_progression({pool_max, spec.r, 1}, std::nullopt, t);
    if (pool.size() < spec.k) return out;

    std::vector<std::uint64_t> scratch;
    walk_tuples(pool, 0, spec.k, 1, 0, spec.x, /*distinct=*/true, scratch,
                [&](const std::vector<std::uint64_t>& primes, std::uint64_t, std::uint64_t) {
                    // membership is re-checked exactly, never assumed from the
                    // construction
                    TupleRecord rec = classify_tuple(primes, spec.a);
                    if (rec.member) out.push_back(std::move(rec));
                    return out.size() < max_tuples;
                });
    return out;
}

std::pair<double, double> construction_window(std::uint64_t x, unsigned k,
                                              const Rational& a) {
    if (k < 1)
        throw std::domain_error("k must be >= 1");
    if (x < 2)
        throw std::domain_error("x must be >= 2");
    const double y = std::pow(static_cast<double>(x), 1.0 / k);
    const double lo = std::pow(y, a.value() * k);
    return {lo, 2.0 * lo};
}

SumRecord gcd_log_sum(std::uint64_t x, unsigned k,
                      std::optional<std::uint64_t> guard_ceiling, const Tuning& t) {
    if (k < 2)
        throw std::domain_error("k must be >= 2");
    check_guard(x, k, guard_ceiling);
    SumRecord rec;
    rec.kind = SumKind::lk_sum;
    rec.x = x;
    rec.k = k;
    const std::uint64_t pool_max = shifted_pool_max(x, k);
    if (pool_max < 2) return rec;
    const std::vector<std::uint64_t> pool = enumerate_primes(SieveConfig(pool_max, t));

    struct Partial {
        double value = 0;
        std::uint64_t terms = 0;
    };
    auto task = [&](std::size_t i) {
        Partial part;
        KahanSum sum;
        const std::uint64_t p1 = pool[i];
        if (p1 > x / p1) return part; // p1 too large to start a k-tuple
        std::vector<std::uint64_t> scratch{p1};
        walk_tuples(pool, i + 1, k - 1, p1, p1 - 1, x, /*distinct=*/true, scratch,
                    [&](const std::vector<std::uint64_t>&, std::uint64_t, std::uint64_t g) {
                        if (g > 1) {
                            sum.add(std::log(static_cast<double>(g)));
                            ++part.terms;
                        }
                        return true;
                    });
        part.value = sum.value();
        return part;
    };
    auto parts = detail::ordered_parallel_map<Partial>(pool.size(), t.workers, task);
    KahanSum total;
    for (const auto& part : parts) {
        total.add(part.value);
        rec.terms += part.terms;
    }
    rec.value = total.value();
    return rec;
}

std::uint64_t count_products_in_progression(std::uint64_t x, unsigned k,
                                            std::uint64_t m, const Tuning& t) {
    if (k < 2)
        throw std::domain_error("k must be >= 2");
    if (m < 2)
        throw std::domain_error("invalid modulus, must be >= 2");
    const std::uint64_t denom = ipow_saturating(m + 1, k - 1);
    if (denom > x) return 0;
    const std::uint64_t pool_max = x / denom;
    if (pool_max < 2) return 0;
    std::vector<std::uint64_t> pool;
    for_each_prime_block(SieveConfig(pool_max, t), [&](const SieveBlock& b) {
        for (std::uint64_t p : b.primes)
            if (p % m == 1) pool.push_back(p);
        return true;
    });
    if (pool.size() < k) return 0;

    std::uint64_t count = 0;
    std::vector<std::uint64_t> scratch;
    walk_tuples(pool, 0, k, 1, 0, x, /*distinct=*/true, scratch,
                [&](const std::vector<std::uint64_t>&, std::uint64_t, std::uint64_t) {
                    ++count;
                    return true;
                });
    return count;
}

} // namespace splab
