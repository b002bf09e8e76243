#include "splab/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "splab/powcmp.hpp"

namespace splab {

void SieveConfig::validate() const {
    if (limit < 2)
        throw std::domain_error("sieve: empty range, limit must be >= 2");
    if (limit > kLimitCeiling)
        throw std::domain_error("sieve: limit exceeds the 2^40 design ceiling");
    if (block_size < kMinBlockSize)
        throw std::domain_error("sieve: block_size must be >= 1024");
    if (workers == 0)
        throw std::domain_error("sieve: workers must be >= 1");
}

void ProgressionQuery::validate() const {
    if (x == 0)
        throw std::domain_error("progression: x must be >= 1");
    if (modulus < 2)
        throw std::domain_error("progression: invalid modulus, must be >= 2");
    if (residue >= modulus)
        throw std::domain_error("progression: residue must lie in [0, modulus)");
}

namespace {

// plain sieve for the base primes <= sqrt(limit); built once, single-threaded
std::vector<std::uint32_t> simple_sieve(std::uint64_t n) {
    std::vector<std::uint32_t> primes;
    if (n < 2) return primes;
    std::vector<std::uint8_t> composite(n + 1, 0);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= n; j += i)
            composite[j] = 1;
    }
    return primes;
}

SieveBlock make_block(std::uint64_t lo, std::uint64_t hi,
                      const std::vector<std::uint32_t>& base, bool factors) {
    SieveBlock blk;
    blk.low = lo;
    blk.high = hi;
    const std::size_t span = static_cast<std::size_t>(hi - lo + 1);

    std::vector<std::uint8_t> composite(span, 0);
    for (std::uint32_t q : base) {
        std::uint64_t q2 = std::uint64_t{q} * q;
        if (q2 > hi) break;
        std::uint64_t start = std::max(q2, (lo + q - 1) / q * q);
        for (std::uint64_t m = start; m <= hi; m += q)
            composite[static_cast<std::size_t>(m - lo)] = 1;
    }

    blk.primes.reserve(span / 8 + 16);
    for (std::size_t i = 0; i < span; ++i)
        if (!composite[i]) blk.primes.push_back(lo + i);

    if (!factors) return blk;

    // Factor sieve over the shifted values v = p - 1. Position i holds
    // p = lo + i, i.e. v = lo + i - 1; multiples of q land at the same index.
    constexpr std::uint32_t kNone = UINT32_MAX;
    std::vector<std::uint32_t> rec(span, kNone);
    std::vector<std::uint64_t> rem(span, 0);
    blk.records.resize(blk.primes.size());
    for (std::size_t r = 0; r < blk.primes.size(); ++r) {
        std::uint64_t p = blk.primes[r];
        std::size_t i = static_cast<std::size_t>(p - lo);
        rec[i] = static_cast<std::uint32_t>(r);
        rem[i] = p - 1;
        blk.records[r].p = p;
    }

    const std::uint64_t lo_v = lo - 1, hi_v = hi - 1;
    for (std::uint32_t q : base) {
        std::uint64_t start = (lo_v + q - 1) / q * q;
        for (std::uint64_t v = start; v <= hi_v; v += q) {
            std::size_t i = static_cast<std::size_t>(v - lo_v);
            std::uint32_t r = rec[i];
            if (r == kNone) continue;
            std::uint32_t e = 0;
            while (rem[i] % q == 0) {
                rem[i] /= q;
                ++e;
            }
            blk.records[r].shifted_factors.push_back({q, e});
        }
    }

    for (std::size_t r = 0; r < blk.records.size(); ++r) {
        auto& record = blk.records[r];
        std::size_t i = static_cast<std::size_t>(record.p - lo);
        // any cofactor left after removing primes <= sqrt(limit) is itself
        // prime: a composite leftover would exceed the limit
        if (rem[i] > 1)
            record.shifted_factors.push_back({rem[i], 1});
        record.largest =
            record.shifted_factors.empty() ? 1 : record.shifted_factors.back().prime;
    }
    return blk;
}

// Blocks are independent work units; results are handed to the visitor
// strictly in block order, so output never depends on scheduling.
void scan_blocks(const SieveConfig& cfg, bool factors, const BlockVisitor& visit) {
    cfg.validate();
    const std::vector<std::uint32_t> base = simple_sieve(isqrt(cfg.limit));
    const std::uint64_t first = 2;
    const std::uint64_t total = cfg.limit - first + 1;
    const std::uint64_t nblocks = (total + cfg.block_size - 1) / cfg.block_size;

    auto block_bounds = [&](std::uint64_t b) {
        std::uint64_t lo = first + b * cfg.block_size;
        std::uint64_t hi = std::min(cfg.limit, lo + cfg.block_size - 1);
        return std::pair{lo, hi};
    };

    if (cfg.workers <= 1 || nblocks <= 1) {
        for (std::uint64_t b = 0; b < nblocks; ++b) {
            auto [lo, hi] = block_bounds(b);
            if (!visit(make_block(lo, hi, base, factors)))
                return;
        }
        return;
    }

    struct Shared {
        std::mutex mu;
        std::condition_variable cv;
        std::map<std::uint64_t, SieveBlock> ready;
        std::uint64_t want = 0;
        bool stop = false;
        std::exception_ptr error;
    } sh;
    std::atomic<std::uint64_t> next{0};
    const std::size_t window = cfg.workers + 2;

    auto worker = [&] {
        for (;;) {
            std::uint64_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            SieveBlock blk;
            try {
                auto [lo, hi] = block_bounds(b);
                blk = make_block(lo, hi, base, factors);
            } catch (...) {
                std::lock_guard lk(sh.mu);
                if (!sh.error) sh.error = std::current_exception();
                sh.stop = true;
                sh.cv.notify_all();
                return;
            }
            std::unique_lock lk(sh.mu);
            sh.cv.wait(lk, [&] { return sh.stop || b < sh.want + window; });
            if (sh.stop) return;
            sh.ready.emplace(b, std::move(blk));
            sh.cv.notify_all();
        }
    };

    unsigned nthreads = static_cast<unsigned>(
        std::min<std::uint64_t>(cfg.workers, nblocks));
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned i = 0; i < nthreads; ++i)
        pool.emplace_back(worker);

    auto shutdown = [&] {
        {
            std::lock_guard lk(sh.mu);
            sh.stop = true;
            sh.cv.notify_all();
        }
        for (auto& th : pool) th.join();
    };

    try {
        for (std::uint64_t b = 0; b < nblocks; ++b) {
            SieveBlock blk;
            {
                std::unique_lock lk(sh.mu);
                sh.cv.wait(lk, [&] { return sh.stop || sh.ready.count(b) != 0; });
                if (sh.stop && sh.ready.count(b) == 0) break;
                auto it = sh.ready.find(b);
                blk = std::move(it->second);
                sh.ready.erase(it);
                sh.want = b + 1;
                sh.cv.notify_all();
            }
            if (!visit(blk)) break;
        }
    } catch (...) {
        shutdown();
        throw;
    }
    shutdown();
    if (sh.error) std::rethrow_exception(sh.error);
}

} // namespace

void for_each_prime_block(const SieveConfig& cfg, const BlockVisitor& visit) {
    scan_blocks(cfg, false, visit);
}

void for_each_shifted_block(const SieveConfig& cfg, const BlockVisitor& visit) {
    scan_blocks(cfg, true, visit);
}

std::vector<std::uint64_t> enumerate_primes(const SieveConfig& cfg) {
    std::vector<std::uint64_t> out;
    for_each_prime_block(cfg, [&](const SieveBlock& b) {
        out.insert(out.end(), b.primes.begin(), b.primes.end());
        return true;
    });
    return out;
}

std::uint64_t count_primes(const SieveConfig& cfg) {
    std::uint64_t n = 0;
    for_each_prime_block(cfg, [&](const SieveBlock& b) {
        n += b.primes.size();
        return true;
    });
    return n;
}

std::vector<ShiftedFactorization> shifted_factor_scan(const SieveConfig& cfg) {
    std::vector<ShiftedFactorization> out;
    for_each_shifted_block(cfg, [&](const SieveBlock& b) {
        out.insert(out.end(), b.records.begin(), b.records.end());
        return true;
    });
    return out;
}

std::uint64_t count_primes_in_progression(const ProgressionQuery& q, const Tuning& t) {
    q.validate();
    if (q.x < 2) return 0;
    std::uint64_t n = 0;
    for_each_prime_block(SieveConfig(q.x, t), [&](const SieveBlock& b) {
        for (std::uint64_t p : b.primes)
            if (p % q.modulus == q.residue) ++n;
        return true;
    });
    return n;
}

std::vector<std::uint64_t> primes_in_progression(const ProgressionQuery& q,
                                                 std::optional<std::size_t> limit_count,
                                                 const Tuning& t) {
    q.validate();
    std::vector<std::uint64_t> out;
    if (q.x < 2 || (limit_count && *limit_count == 0)) return out;
    for_each_prime_block(SieveConfig(q.x, t), [&](const SieveBlock& b) {
        for (std::uint64_t p : b.primes) {
            if (p % q.modulus != q.residue) continue;
            out.push_back(p);
            if (limit_count && out.size() >= *limit_count) return false;
        }
        return true;
    });
    return out;
}

std::vector<std::uint32_t> largest_factor_table(std::uint32_t bound) {
    std::vector<std::uint32_t> table(static_cast<std::size_t>(bound) + 1, 0);
    if (bound >= 1) table[1] = 1;
    table[0] = 1;
    // ascending primes overwrite, so the final entry is the largest factor
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (table[i] != 0) continue;
        for (std::uint64_t m = i; m <= bound; m += i)
            table[m] = static_cast<std::uint32_t>(i);
    }
    return table;
}

std::uint64_t largest_prime_factor(std::uint64_t n) {
    if (n <= 1) return 1;
    std::uint64_t best = 1;
    auto strip = [&](std::uint64_t d) {
        if (n % d) return;
        best = d;
        do n /= d; while (n % d == 0);
    };
    strip(2);
    strip(3);
    for (std::uint64_t d = 5; d <= n / d; d += 6) {
        strip(d);
        strip(d + 2);
    }
    if (n > 1) best = n;
    return best;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (std::uint64_t d = 5; d <= n / d; d += 6)
        if (n % d == 0 || n % (d + 2) == 0) return false;
    return true;
}

} // namespace splab
