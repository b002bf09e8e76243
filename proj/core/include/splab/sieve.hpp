#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace splab {

inline constexpr std::uint64_t kDefaultBlockSize = std::uint64_t{1} << 22;
inline constexpr std::uint64_t kMinBlockSize = std::uint64_t{1} << 10;
inline constexpr std::uint64_t kLimitCeiling = std::uint64_t{1} << 40;

// Segment size and worker count for operations that derive their own range.
struct Tuning {
    std::uint64_t block_size = kDefaultBlockSize;
    unsigned workers = 1;
};

struct SieveConfig {
    std::uint64_t limit = 0; // inclusive upper bound
    std::uint64_t block_size = kDefaultBlockSize;
    unsigned workers = 1;

    SieveConfig() = default;
    SieveConfig(std::uint64_t limit_, std::uint64_t block_size_ = kDefaultBlockSize,
                unsigned workers_ = 1)
        : limit(limit_), block_size(block_size_), workers(workers_) {}
    SieveConfig(std::uint64_t limit_, const Tuning& t)
        : limit(limit_), block_size(t.block_size), workers(t.workers) {}

    // Throws std::domain_error on an empty range (limit < 2), a segment below
    // the 2^10 floor, a limit beyond the 2^40 design ceiling, or workers == 0.
    void validate() const;
};

struct FactorPower {
    std::uint64_t prime = 0;
    std::uint32_t exponent = 0;

    friend bool operator==(const FactorPower&, const FactorPower&) = default;
};

// A prime p with the complete factorization of p - 1. Factors are ascending
// by prime and multiply back to p - 1 exactly; largest is P(p-1), which is 1
// for p = 2 (the P(1) = 1 convention).
struct ShiftedFactorization {
    std::uint64_t p = 0;
    std::vector<FactorPower> shifted_factors;
    std::uint64_t largest = 1;
};

// One segment of the scan. Blocks are delivered strictly in ascending order
// regardless of worker count, so consumers see primes in ascending order.
struct SieveBlock {
    std::uint64_t low = 0;
    std::uint64_t high = 0; // inclusive
    std::vector<std::uint64_t> primes;
    std::vector<ShiftedFactorization> records; // factor scans only
};

// Visitors return false to stop the scan early.
using BlockVisitor = std::function<bool(const SieveBlock&)>;

void for_each_prime_block(const SieveConfig& cfg, const BlockVisitor& visit);
void for_each_shifted_block(const SieveConfig& cfg, const BlockVisitor& visit);

std::vector<std::uint64_t> enumerate_primes(const SieveConfig& cfg);
std::uint64_t count_primes(const SieveConfig& cfg); // pi(limit)
std::vector<ShiftedFactorization> shifted_factor_scan(const SieveConfig& cfg);

struct ProgressionQuery {
    std::uint64_t x = 0;       // inclusive upper bound, >= 1
    std::uint64_t modulus = 0; // >= 2
    std::uint64_t residue = 1; // in [0, modulus)

    void validate() const;
};

// Exact count of primes p <= x with p = residue (mod modulus).
std::uint64_t count_primes_in_progression(const ProgressionQuery& q, const Tuning& t = {});

// Ascending list of the same primes, optionally truncated to the first
// limit_count entries.
std::vector<std::uint64_t> primes_in_progression(
    const ProgressionQuery& q,
    std::optional<std::size_t> limit_count = std::nullopt,
    const Tuning& t = {});

// Table of largest prime factors: table[n] = P(n) for n <= bound, with the
// P(0) = P(1) = 1 convention.
std::vector<std::uint32_t> largest_factor_table(std::uint32_t bound);

// Trial-division P(n) for a single value; P(0) = P(1) = 1.
std::uint64_t largest_prime_factor(std::uint64_t n);

// Trial-division primality test for a single value.
bool is_prime_u64(std::uint64_t n);

} // namespace splab
